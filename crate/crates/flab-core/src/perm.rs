//! Permutations on `{0, 1, ..., degree-1}`, stored as image arrays.
//!
//! Composition convention: `a.compose(&b)` is "apply `b` first, then `a`",
//! i.e. `(a*b)(x) = a(b(x))`. Lexicographic order on the image array is the
//! canonical tie-breaking order used throughout the crate; for that order the
//! identity is the minimum element of every permutation group.

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Box<[u16]>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.cycles())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        debug_assert!(degree <= MAX_DEGREE);
        Perm { img: (0..degree as u16).collect() }
    }

    /// Build from an image array, checking it is a bijection.
    pub fn from_images(img: Vec<u16>) -> Result<Self> {
        let n = img.len();
        if n > MAX_DEGREE {
            return Err(Error::IncompatibleGenerators(format!(
                "degree {n} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        for (i, &x) in img.iter().enumerate() {
            if (x as usize) >= n {
                return Err(Error::InvalidInput {
                    path: format!("images[{i}]"),
                    message: format!("point {x} out of range for degree {n}"),
                });
            }
            if seen[x as usize] {
                return Err(Error::InvalidInput {
                    path: format!("images[{i}]"),
                    message: format!("point {x} hit twice; not a bijection"),
                });
            }
            seen[x as usize] = true;
        }
        Ok(Perm { img: img.into_boxed_slice() })
    }

    /// Build from disjoint cycles; points absent from every cycle are fixed.
    /// `path` prefixes error locations so callers can report field paths.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>], path: &str) -> Result<Self> {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for (ci, cyc) in cycles.iter().enumerate() {
            for (pi, &pt) in cyc.iter().enumerate() {
                if pt as usize >= degree {
                    return Err(Error::InvalidInput {
                        path: format!("{path}[{ci}][{pi}]"),
                        message: format!("point {pt} out of range for degree {degree}"),
                    });
                }
                if moved[pt as usize] {
                    return Err(Error::InvalidInput {
                        path: format!("{path}[{ci}][{pi}]"),
                        message: format!("point {pt} appears in two cycles"),
                    });
                }
                moved[pt as usize] = true;
            }
            if cyc.len() > 1 {
                for w in 0..cyc.len() {
                    img[cyc[w] as usize] = cyc[(w + 1) % cyc.len()];
                }
            }
        }
        Ok(Perm { img: img.into_boxed_slice() })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        let img: Vec<u16> = other.img.iter().map(|&x| self.img[x as usize]).collect();
        Perm { img: img.into_boxed_slice() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u16;
        }
        Perm { img: img.into_boxed_slice() }
    }

    /// Conjugate: `g * self * g^{-1}`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        // (g s g^-1)(x) = g(s(g^-1(x))); computed without building g^-1.
        let mut img = vec![0u16; self.degree()];
        for x in 0..self.degree() {
            img[g.img[x] as usize] = g.img[self.img[x] as usize];
        }
        Perm { img: img.into_boxed_slice() }
    }

    /// Cycle decomposition, nontrivial cycles only, each cycle starting at its
    /// smallest point, cycles sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start as u16];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x as u16);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Multiplicative order = lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 1;
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
