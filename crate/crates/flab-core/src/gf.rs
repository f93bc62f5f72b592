//! Small finite fields GF(p^k).
//!
//! Elements are coded as integers in `[0, p^k)`: the base-p digits of a code,
//! little-endian, are the coefficients of a polynomial in the canonical
//! generator. Reduction is modulo the lexicographically smallest monic
//! irreducible of degree k (deterministic, so codes mean the same thing in
//! every run). For k = 1 this is plain arithmetic mod p.

use crate::error::{Error, Result};
use std::sync::Arc;

pub const MAX_FIELD_SIZE: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Coefficients of x^k in the quotient ring, little-endian, length k.
    /// Empty for k = 1.
    reduction: Vec<u64>,
}

pub type FieldRef = Arc<Field>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Factor n into (prime, multiplicity) pairs by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut m = 0;
            while n % d == 0 {
                n /= d;
                m += 1;
            }
            out.push((d, m));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Write q as p^k for prime p, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

// --- dense little-endian polynomial helpers over F_p ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo monic m.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p * p - (lead * c) % p) % p;
            }
        }
        a.pop();
        poly_trim(&mut a);
        if a.len() <= dm && a.last() == Some(&0) {
            poly_trim(&mut a);
        }
    }
    a
}

fn code_to_poly(mut code: u64, p: u64) -> Vec<u64> {
    let mut v = Vec::new();
    while code > 0 {
        v.push(code % p);
        code /= p;
    }
    v
}

fn poly_to_code(v: &[u64], p: u64) -> u64 {
    let mut code = 0u64;
    for &c in v.iter().rev() {
        code = code * p + c;
    }
    code
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code`.
fn monic_from_code(code: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut v = code_to_poly(code, p);
    v.resize(deg as usize, 0);
    v.push(1);
    v
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=(deg / 2) as u32 {
        let count = p.pow(d);
        for code in 0..count {
            let m = monic_from_code(code, d, p);
            if poly_rem(f.to_vec(), &m, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: u64, k: u32) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::InvalidInput {
                path: "p".into(),
                message: format!("{p} is not prime"),
            });
        }
        if k == 0 {
            return Err(Error::InvalidInput { path: "k".into(), message: "k must be >= 1".into() });
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE).ok_or(Error::CapExceeded {
            cap: MAX_FIELD_SIZE,
            context: format!("field GF({p}^{k})"),
        })?;
        let reduction = if k == 1 {
            Vec::new()
        } else {
            let mut found = None;
            for code in 0..q {
                let f = monic_from_code(code, k, p);
                if is_irreducible(&f, p) {
                    // x^k = -(lower part of f)
                    let mut red = vec![0u64; k as usize];
                    for i in 0..k as usize {
                        red[i] = (p - f[i] % p) % p;
                    }
                    found = Some(red);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };
        Ok(Arc::new(Field { p, k, q, reduction }))
    }

    /// GF(q) for a prime power q.
    pub fn with_order(q: u64) -> Result<FieldRef> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidInput {
            path: "q".into(),
            message: format!("{q} is not a prime power"),
        })?;
        Field::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut a, mut b, mut place) = (0u64, a, b, 1u64);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut out, mut a, mut place) = (0u64, a, 1u64);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a * b) % self.p;
        }
        let pa = code_to_poly(a, self.p);
        let pb = code_to_poly(b, self.p);
        let mut prod = poly_mul(&pa, &pb, self.p);
        // Reduce x^j for j >= k via the reduction vector.
        while prod.len() > self.k as usize {
            let lead = prod.pop().unwrap();
            let shift = prod.len() - self.k as usize;
            if lead != 0 {
                for (i, &r) in self.reduction.iter().enumerate() {
                    let idx = shift + i;
                    prod[idx] = (prod[idx] + lead * r) % self.p;
                }
            }
            poly_trim(&mut prod);
        }
        poly_to_code(&prod, self.p)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::SingularMatrix("division by zero in the field".into()));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        let mut ord = self.q - 1;
        for (f, _) in factorize(self.q - 1) {
            while ord % f == 0 && self.pow(a, ord / f) == 1 {
                ord /= f;
            }
        }
        ord
    }

    /// Smallest (by code) generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> u64 {
        for a in 1..self.q {
            if self.element_order(a) == self.q - 1 {
                return a;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Linear map table for the Frobenius power x -> x^(p^d): images of the
    /// polynomial basis 1, x, ..., x^{k-1}.
    pub fn frobenius_table(&self, d: u32) -> FrobeniusMap {
        let exp = self.p.pow(d % self.k); // x^(p^k) = x
        let basis_img: Vec<u64> =
            (0..self.k as u64).map(|i| self.pow(self.pow_gen(i), exp)).collect();
        FrobeniusMap { basis_img }
    }

    /// x^i as a field element (i < k), i.e. the code p^i.
    fn pow_gen(&self, i: u64) -> u64 {
        self.p.pow(i as u32)
    }

    /// Apply a precomputed Frobenius map by F_p-linearity.
    pub fn apply_frobenius(&self, t: &FrobeniusMap, a: u64) -> u64 {
        if self.k == 1 {
            return a;
        }
        let mut out = 0u64;
        let mut rest = a;
        for img in &t.basis_img {
            let digit = rest % self.p;
            rest /= self.p;
            if digit != 0 {
                out = self.add(out, self.scalar_mul(digit, *img));
            }
            if rest == 0 {
                break;
            }
        }
        out
    }

    /// Multiply by a prime-field scalar (digit < p).
    fn scalar_mul(&self, c: u64, a: u64) -> u64 {
        let (mut out, mut a, mut place) = (0u64, a, 1u64);
        while a > 0 {
            out += ((a % self.p) * c % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// Does a lie in the subfield GF(p^d)? (Requires d | k.)
    pub fn in_subfield(&self, d: u32, a: u64) -> bool {
        self.pow(a, self.p.pow(d)) == a
    }
}

#[derive(Debug, Clone)]
pub struct FrobeniusMap {
    basis_img: Vec<u64>,
}
