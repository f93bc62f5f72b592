//! Square matrices over a small finite field, row-major.

use crate::error::{Error, Result};
use crate::gf::FieldRef;
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

#[derive(Clone)]
pub struct Mat {
    field: FieldRef,
    n: usize,
    e: Box<[u64]>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.field.p() == other.field.p()
            && self.field.k() == other.field.k()
            && self.n == other.n
            && self.e == other.e
    }
}
impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.e.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (dimension, row-major entry codes); the canonical
/// tie-breaking order for matrix elements.
impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.e.cmp(&other.e))
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat{}x{}/GF({}^{}){:?}", self.n, self.n, self.field.p(), self.field.k(), self.e)
    }
}

impl Mat {
    pub fn identity(field: FieldRef, n: usize) -> Mat {
        let mut e = vec![0u64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Mat { field, n, e: e.into_boxed_slice() }
    }

    pub fn zero(field: FieldRef, n: usize) -> Mat {
        Mat { field, n, e: vec![0u64; n * n].into_boxed_slice() }
    }

    pub fn from_entries(field: FieldRef, n: usize, entries: Vec<u64>) -> Result<Mat> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput {
                path: "entries".into(),
                message: format!("expected {} entries for a {n}x{n} matrix, got {}", n * n, entries.len()),
            });
        }
        for (i, &c) in entries.iter().enumerate() {
            if c >= field.order() {
                return Err(Error::InvalidInput {
                    path: format!("entries[{i}]"),
                    message: format!("code {c} out of range for GF({})", field.order()),
                });
            }
        }
        Ok(Mat { field, n, e: entries.into_boxed_slice() })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u64] {
        &self.e
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.e[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.e.iter().enumerate().all(|(idx, &v)| {
            let (i, j) = (idx / self.n, idx % self.n);
            v == if i == j { 1 } else { 0 }
        })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.e[i * n + l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.e[l * n + j];
                    if b != 0 {
                        out[i * n + j] = f.add(out[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        Mat { field: self.field.clone(), n, e: out.into_boxed_slice() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.n, other.n);
        let e: Vec<u64> =
            self.e.iter().zip(other.e.iter()).map(|(&a, &b)| self.field.add(a, b)).collect();
        Mat { field: self.field.clone(), n: self.n, e: e.into_boxed_slice() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.n, other.n);
        let e: Vec<u64> =
            self.e.iter().zip(other.e.iter()).map(|(&a, &b)| self.field.sub(a, b)).collect();
        Mat { field: self.field.clone(), n: self.n, e: e.into_boxed_slice() }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&v| v == 0)
    }

    pub fn pow(&self, e: u64) -> Mat {
        let mut acc = Mat::identity(self.field.clone(), self.n);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Gaussian elimination; returns (rank, det, inverse-if-square-invertible).
    fn gauss(&self) -> (usize, u64, Option<Mat>) {
        let n = self.n;
        let f = &self.field;
        let mut a = self.e.to_vec();
        let mut inv = Mat::identity(self.field.clone(), n).e.to_vec();
        let mut det = 1u64;
        let mut rank = 0usize;
        for col in 0..n {
            // Find a pivot row at or below `rank`.
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                    inv.swap(piv * n + j, rank * n + j);
                }
                det = f.neg(det);
            }
            let pval = a[rank * n + col];
            det = f.mul(det, pval);
            let pinv = f.inv(pval).expect("pivot is nonzero");
            for j in 0..n {
                a[rank * n + j] = f.mul(a[rank * n + j], pinv);
                inv[rank * n + j] = f.mul(inv[rank * n + j], pinv);
            }
            for r in 0..n {
                if r != rank && a[r * n + col] != 0 {
                    let factor = a[r * n + col];
                    for j in 0..n {
                        let t = f.mul(factor, a[rank * n + j]);
                        a[r * n + j] = f.sub(a[r * n + j], t);
                        let t = f.mul(factor, inv[rank * n + j]);
                        inv[r * n + j] = f.sub(inv[r * n + j], t);
                    }
                }
            }
            rank += 1;
        }
        let inverse = if rank == n {
            Some(Mat { field: self.field.clone(), n, e: inv.into_boxed_slice() })
        } else {
            None
        };
        (rank, det, inverse)
    }

    pub fn rank(&self) -> usize {
        self.gauss().0
    }

    pub fn det(&self) -> u64 {
        self.gauss().1
    }

    pub fn inverse(&self) -> Result<Mat> {
        self.gauss()
            .2
            .ok_or_else(|| Error::SingularMatrix(format!("{self:?} is not invertible")))
    }

    pub fn is_invertible(&self) -> bool {
        self.gauss().2.is_some()
    }

    /// Multiplicative order (the matrix must be invertible).
    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut ord = 1u64;
        while !acc.is_identity() {
            acc = acc.mul(self);
            ord += 1;
        }
        ord
    }

    /// Apply to a coded column vector in F_q^n (base-q digits, little-endian).
    pub fn apply_vector_code(&self, code: u64) -> u64 {
        let q = self.field.order();
        let n = self.n;
        let mut v = vec![0u64; n];
        let mut rest = code;
        for slot in v.iter_mut() {
            *slot = rest % q;
            rest /= q;
        }
        let mut out = 0u64;
        let mut place = 1u64;
        for i in 0..n {
            let mut acc = 0u64;
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 {
                    acc = self.field.add(acc, self.field.mul(self.e[i * n + j], vj));
                }
            }
            out += acc * place;
            place *= q;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn m(field: &FieldRef, n: usize, e: &[u64]) -> Mat {
        Mat::from_entries(field.clone(), n, e.to_vec()).unwrap()
    }

    #[test]
    fn multiply_and_invert_over_gf3() {
        let f = Field::new(3, 1).unwrap();
        let a = m(&f, 2, &[1, 1, 0, 1]);
        let b = m(&f, 2, &[1, 0, 1, 1]);
        let ab = a.mul(&b);
        assert_eq!(ab.entries(), &[2, 1, 1, 1]);
        let ainv = a.inverse().unwrap();
        assert!(a.mul(&ainv).is_identity());
        assert_eq!(ainv.entries(), &[1, 2, 0, 1]);
    }

    #[test]
    fn singular_matrix_detected() {
        let f = Field::new(3, 1).unwrap();
        let s = m(&f, 2, &[1, 2, 2, 1]); // det = 1 - 4 = -3 = 0 mod 3
        assert_eq!(s.det(), 0);
        assert!(s.inverse().is_err());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn order_of_a_transvection_is_p() {
        let f = Field::new(5, 1).unwrap();
        let t = m(&f, 2, &[1, 1, 0, 1]);
        assert_eq!(t.order(), 5);
    }

    #[test]
    fn det_multiplicative_over_gf4() {
        let f = Field::new(2, 2).unwrap();
        let a = m(&f, 2, &[2, 0, 0, 3]); // diag(x, x+1) over GF(4)
        let b = m(&f, 2, &[0, 1, 1, 0]);
        assert_eq!(f.mul(a.det(), b.det()), a.mul(&b).det());
        assert_eq!(a.order(), 3);
    }

    #[test]
    fn vector_action_is_linear() {
        let f = Field::new(3, 1).unwrap();
        let a = m(&f, 2, &[1, 1, 0, 1]);
        // v = (1, 2) coded as 1 + 2*3 = 7; A v = (1+2, 2) = (0, 2) coded 6.
        assert_eq!(a.apply_vector_code(7), 6);
        assert_eq!(a.apply_vector_code(0), 0);
    }

    #[test]
    fn pow_matches_order() {
        let f = Field::new(19, 1).unwrap();
        let c = m(&f, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]); // 3-cycle permutation matrix
        assert_eq!(c.order(), 3);
        assert!(c.pow(3).is_identity());
        assert_eq!(c.pow(2), c.mul(&c));
        assert_eq!(c.det(), 1); // even permutation
    }
}
