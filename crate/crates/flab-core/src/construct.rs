//! Constructors for the standard test-bed groups: cyclic and elementary
//! abelian groups, direct products, wreath products by a cyclic top group,
//! Sylow p-subgroups of symmetric groups, the extraspecial group of order p^3
//! and exponent p, vector-space semidirect products, and the monomial Sylow
//! p-subgroup of SL_p(q).
//!
//! Permutation constructions are bounded by `MAX_PERM_POINTS`: beyond that
//! the stabilizer-chain transversals stop being desk-scale, so we fail loudly
//! rather than degrade.

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::gf::{is_prime, Field};
use crate::group::{close_under_products_bounded, make_group, FiniteGroup};
use crate::matrix::Mat;
use crate::perm::Perm;

/// Largest permutation degree the constructors will emit.
pub const MAX_PERM_POINTS: usize = 8192;

fn check_degree(d: usize, what: &str) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidInput {
            path: what.into(),
            message: "degree must be positive".into(),
        });
    }
    if d > MAX_PERM_POINTS {
        return Err(Error::cap(MAX_PERM_POINTS as u64, format!("permutation degree for {what}")));
    }
    Ok(())
}

fn require_prime(p: u64, context: &str) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime { p, context: context.into() });
    }
    Ok(())
}

/// Re-plant a permutation on `degree` points with its support starting at
/// `offset`; everything outside the block is fixed.
fn embed(p: &Perm, degree: usize, offset: usize) -> Perm {
    let mut img: Vec<u16> = (0..degree as u16).collect();
    for x in 0..p.degree() {
        img[offset + x] = (offset + p.apply(x)) as u16;
    }
    Perm::from_images(img).expect("embedding preserves bijectivity")
}

/// The trivial group acting on n fixed points.
pub fn trivial(n: usize, cap: u64) -> Result<FiniteGroup> {
    check_degree(n, "trivial group")?;
    let id = Perm::from_images((0..n as u16).collect()).expect("identity");
    make_group(vec![GroupElement::Perm(id)], cap)
}

/// C_n in its regular action on n points.
pub fn cyclic(n: usize, cap: u64) -> Result<FiniteGroup> {
    check_degree(n, "cyclic group")?;
    let img: Vec<u16> = (0..n).map(|i| ((i + 1) % n) as u16).collect();
    let g = Perm::from_images(img).expect("cyclic shift");
    make_group(vec![GroupElement::Perm(g)], cap)
}

/// S_n in its natural action, generated by a transposition and an n-cycle.
pub fn symmetric(n: usize, cap: u64) -> Result<FiniteGroup> {
    check_degree(n, "symmetric group")?;
    if n <= 1 {
        return trivial(n.max(1), cap);
    }
    let mut swap: Vec<u16> = (0..n as u16).collect();
    swap.swap(0, 1);
    let mut gens = vec![GroupElement::Perm(Perm::from_images(swap).expect("transposition"))];
    if n > 2 {
        let cycle: Vec<u16> = (0..n).map(|i| ((i + 1) % n) as u16).collect();
        gens.push(GroupElement::Perm(Perm::from_images(cycle).expect("long cycle")));
    }
    make_group(gens, cap)
}

/// (C_p)^k acting coordinate-wise on k blocks of p points.
pub fn elementary_abelian(p: u64, k: usize, cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "elementary abelian group")?;
    if k == 0 {
        return trivial(1, cap);
    }
    check_degree(k * p as usize, "elementary abelian group")?;
    let degree = k * p as usize;
    let mut gens = Vec::with_capacity(k);
    for block in 0..k {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let base = block * p as usize;
        for x in 0..p as usize {
            img[base + x] = (base + (x + 1) % p as usize) as u16;
        }
        gens.push(GroupElement::Perm(Perm::from_images(img).expect("block cycle")));
    }
    make_group(gens, cap)
}

/// Direct product of permutation groups, acting on the disjoint union of
/// their point sets (supports shifted left to right in argument order).
pub fn direct_product(parts: &[FiniteGroup], cap: u64) -> Result<FiniteGroup> {
    if parts.is_empty() {
        return Err(Error::IncompatibleGenerators("direct product of no factors".into()));
    }
    let mut degree = 0usize;
    for (i, part) in parts.iter().enumerate() {
        match part.identity() {
            GroupElement::Perm(p) => degree += p.degree(),
            GroupElement::Matrix(_) => {
                return Err(Error::KindMismatch(format!(
                    "direct product factor {i} is a matrix group; only permutation factors embed"
                )))
            }
        }
    }
    check_degree(degree, "direct product")?;
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for part in parts {
        let d = part.shape();
        for g in part.generators() {
            let p = g.as_perm().expect("kind checked above");
            if !p.is_identity() {
                gens.push(GroupElement::Perm(embed(p, degree, offset)));
            }
        }
        offset += d;
    }
    if gens.is_empty() {
        return trivial(degree, cap);
    }
    make_group(gens, cap)
}

/// base wr C_p in the imprimitive action on (base degree) * p points:
/// the base group acts on block 0 and the top C_p rotates the blocks.
pub fn wreath_cyclic(base: &FiniteGroup, p: u64, cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "wreath product top group")?;
    let d = match base.identity() {
        GroupElement::Perm(q) => q.degree(),
        GroupElement::Matrix(_) => {
            return Err(Error::KindMismatch(
                "wreath product base must be a permutation group".into(),
            ))
        }
    };
    let degree = d * p as usize;
    check_degree(degree, "wreath product")?;
    let mut gens = Vec::new();
    for g in base.generators() {
        let q = g.as_perm().expect("kind checked above");
        if !q.is_identity() {
            gens.push(GroupElement::Perm(embed(q, degree, 0)));
        }
    }
    let shift: Vec<u16> = (0..degree)
        .map(|i| {
            let block = i / d;
            let x = i % d;
            (((block + 1) % p as usize) * d + x) as u16
        })
        .collect();
    gens.push(GroupElement::Perm(Perm::from_images(shift).expect("block rotation")));
    make_group(gens, cap)
}

/// Iterated wreath product W(p, depth) = C_p wr ... wr C_p (depth factors),
/// the Sylow p-subgroup of the symmetric group on p^depth points.
pub fn iterated_wreath(p: u64, depth: u32, cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "iterated wreath product")?;
    if depth == 0 {
        return trivial(1, cap);
    }
    let mut w = cyclic(p as usize, cap)?;
    for _ in 1..depth {
        w = wreath_cyclic(&w, p, cap)?;
    }
    Ok(w)
}

/// v_p(n!) by Legendre's formula: sum of floor(n / p^i).
pub fn vp_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= n {
        total += n / q;
        if q > n / p {
            break; // next power would overflow past n anyway
        }
        q *= p;
    }
    total
}

/// A Sylow p-subgroup of the symmetric group on n points: one iterated
/// wreath block W(p, i) for each base-p digit a_i of n (a_i copies, largest
/// blocks first), with the a_0 leftover points fixed at the end.
pub fn sylow_symmetric(n: usize, p: u64, cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "symmetric group Sylow subgroup")?;
    check_degree(n, "symmetric group Sylow subgroup")?;
    let mut digits: Vec<usize> = Vec::new(); // digits[i] = a_i, base p
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p as usize);
        rest /= p as usize;
    }
    let mut parts: Vec<FiniteGroup> = Vec::new();
    for i in (1..digits.len()).rev() {
        for _ in 0..digits[i] {
            parts.push(iterated_wreath(p, i as u32, cap)?);
        }
    }
    if parts.is_empty() {
        return trivial(n, cap);
    }
    let product = direct_product(&parts, cap)?;
    // Pad with the fixed points for the units digit.
    if product.shape() == n {
        return Ok(product);
    }
    let gens: Vec<GroupElement> = product
        .generators()
        .iter()
        .map(|g| GroupElement::Perm(embed(g.as_perm().expect("perm parts"), n, 0)))
        .collect();
    make_group(gens, cap)
}

/// The extraspecial group of order p^3 and exponent p (p odd), acting on p^2
/// points coded x*p + y via a: (x,y) -> (x+1,y) and b: (x,y) -> (x,y+x).
pub fn extraspecial_p3(p: u64, cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "extraspecial group")?;
    if p == 2 {
        return Err(Error::EvenPrime(
            "extraspecial group of exponent p requires p odd".into(),
        ));
    }
    let pu = p as usize;
    check_degree(pu * pu, "extraspecial group")?;
    let a: Vec<u16> = (0..pu * pu)
        .map(|i| {
            let (x, y) = (i / pu, i % pu);
            (((x + 1) % pu) * pu + y) as u16
        })
        .collect();
    let b: Vec<u16> = (0..pu * pu)
        .map(|i| {
            let (x, y) = (i / pu, i % pu);
            (x * pu + (y + x) % pu) as u16
        })
        .collect();
    make_group(
        vec![
            GroupElement::Perm(Perm::from_images(a).expect("translation")),
            GroupElement::Perm(Perm::from_images(b).expect("shear")),
        ],
        cap,
    )
}

/// Semidirect product F_p^n ⋊ ⟨mats⟩ as a permutation group on the p^n coded
/// vectors: generators are the n coordinate translations plus the linear
/// action of each matrix.
pub fn semidirect_vector(p: u64, n: usize, mats: &[Mat], cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "vector semidirect product")?;
    if n == 0 {
        return Err(Error::InvalidInput {
            path: "semidirect".into(),
            message: "vector space dimension must be positive".into(),
        });
    }
    let points = (p as u128).pow(n as u32);
    if points > MAX_PERM_POINTS as u128 {
        return Err(Error::cap(
            MAX_PERM_POINTS as u64,
            "permutation degree for vector semidirect product",
        ));
    }
    let points = points as usize;
    for (i, m) in mats.iter().enumerate() {
        if m.field().p() != p || m.field().k() != 1 {
            return Err(Error::KindMismatch(format!(
                "matrix {i} is not over the prime field of characteristic {p}"
            )));
        }
        if m.dim() != n {
            return Err(Error::KindMismatch(format!(
                "matrix {i} has dimension {} but the vector space has dimension {n}",
                m.dim()
            )));
        }
        if !m.is_invertible() {
            return Err(Error::SingularMatrix(format!("matrix {i} in vector action")));
        }
    }
    let mut gens = Vec::with_capacity(n + mats.len());
    let mut place = 1usize;
    for _ in 0..n {
        let img: Vec<u16> = (0..points)
            .map(|v| {
                let digit = (v / place) % p as usize;
                (v - digit * place + ((digit + 1) % p as usize) * place) as u16
            })
            .collect();
        gens.push(GroupElement::Perm(Perm::from_images(img).expect("translation")));
        place *= p as usize;
    }
    for m in mats {
        let img: Vec<u16> = (0..points).map(|v| m.apply_vector_code(v as u64) as u16).collect();
        gens.push(GroupElement::Perm(Perm::from_images(img).map_err(|_| {
            Error::SingularMatrix("matrix action is not a bijection on vectors".into())
        })?));
    }
    make_group(gens, cap)
}

/// The monomial Sylow p-subgroup of SL_p(q) for odd p dividing q - 1:
/// diagonal matrices with entries in the Sylow p-subgroup of GF(q)^* and
/// determinant 1, extended by the p-cycle permutation matrix. Its order is
/// p^(e(p-1)+1) where p^e exactly divides q - 1.
pub fn monomial_sylow_slp(p: u64, q: u64, cap: u64) -> Result<FiniteGroup> {
    require_prime(p, "monomial Sylow subgroup")?;
    if p == 2 {
        return Err(Error::EvenPrime(
            "monomial Sylow construction requires p odd (the p-cycle must have determinant 1)"
                .into(),
        ));
    }
    let field = Field::with_order(q)?;
    if (q - 1) % p != 0 {
        return Err(Error::PrimeDoesNotDivide {
            p,
            value: q - 1,
            context: "monomial Sylow subgroup of SL_p(q) needs p | q - 1".into(),
        });
    }
    let mut e = 0u32;
    let mut rest = q - 1;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    // zeta generates the Sylow p-subgroup of the multiplicative group.
    let g = field.multiplicative_generator();
    let zeta = field.pow(g, (q - 1) / p.pow(e));
    let dim = p as usize;
    let mut gens: Vec<GroupElement> = Vec::with_capacity(dim);
    for i in 0..dim - 1 {
        let mut m = Mat::identity(field.clone(), dim);
        m.set(i, i, zeta);
        m.set(i + 1, i + 1, field.inv(zeta)?);
        gens.push(GroupElement::Matrix(m));
    }
    let mut sigma = Mat::zero(field.clone(), dim);
    for i in 0..dim {
        sigma.set((i + 1) % dim, i, 1);
    }
    gens.push(GroupElement::Matrix(sigma));
    make_group(gens, cap)
}

/// The lexicographically first pair of order-4 matrices x, y in SL_2(3) with
/// x^2 = y^2 and y x y^-1 = x^-1; they generate a quaternion group of order 8.
pub fn q8_generators_sl2_3() -> Result<(Mat, Mat)> {
    let f = Field::new(3, 1)?;
    let a = Mat::from_entries(f.clone(), 2, vec![1, 1, 0, 1])?;
    let b = Mat::from_entries(f.clone(), 2, vec![1, 0, 1, 1])?;
    let sl23 = make_group(
        vec![GroupElement::Matrix(a), GroupElement::Matrix(b)],
        1_000,
    )?;
    let store = sl23.elements()?;
    let mats: Vec<&Mat> = store
        .elements()
        .iter()
        .map(|e| e.as_matrix().expect("matrix group"))
        .collect();
    let identity = Mat::identity(f, 2);
    for x in &mats {
        if x.order() != 4 {
            continue;
        }
        let x_inv = x.inverse()?;
        let x_sq = x.mul(x);
        for y in &mats {
            if y.order() != 4 || y.mul(y) != x_sq {
                continue;
            }
            if y.mul(x).mul(&y.inverse()?) != x_inv {
                continue;
            }
            let closure = close_under_products_bounded(
                &[
                    GroupElement::Matrix((*x).clone()),
                    GroupElement::Matrix((*y).clone()),
                ],
                &GroupElement::Matrix(identity.clone()),
                8,
            );
            if closure.map(|c| c.len()) == Some(8) {
                return Ok(((*x).clone(), (*y).clone()));
            }
        }
    }
    Err(Error::InternalCheckFailed(
        "no quaternion generator pair found in SL_2(3)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::structure::{center, exponent, ExponentMode};

    #[test]
    fn cyclic_orders() {
        for n in [1usize, 2, 3, 9, 27] {
            let g = cyclic(n, DEFAULT_CAP).unwrap();
            assert_eq!(g.order().unwrap(), n as u64);
            assert!(g.is_abelian());
        }
    }

    #[test]
    fn elementary_abelian_structure() {
        let g = elementary_abelian(3, 4, DEFAULT_CAP).unwrap();
        assert_eq!(g.order().unwrap(), 81);
        assert!(g.is_abelian());
        assert_eq!(exponent(&g, ExponentMode::Full).unwrap().value, 3);
    }

    #[test]
    fn direct_product_order_multiplies() {
        let a = cyclic(9, DEFAULT_CAP).unwrap();
        let b = extraspecial_p3(3, DEFAULT_CAP).unwrap();
        let g = direct_product(&[a, b], DEFAULT_CAP).unwrap();
        assert_eq!(g.order().unwrap(), 9 * 27);
        assert_eq!(g.shape(), 9 + 9);
    }

    #[test]
    fn wreath_order_invariant() {
        // |G wr C_p| = |G|^p * p.
        let c3 = cyclic(3, DEFAULT_CAP).unwrap();
        let w = wreath_cyclic(&c3, 3, DEFAULT_CAP).unwrap();
        assert_eq!(w.order().unwrap(), 81);
        let w2 = wreath_cyclic(&cyclic(2, DEFAULT_CAP).unwrap(), 2, DEFAULT_CAP).unwrap();
        assert_eq!(w2.order().unwrap(), 8); // dihedral of order 8
    }

    #[test]
    fn iterated_wreath_is_sylow_of_symmetric_prime_power() {
        // |W(3,2)| = 3^4 = v_3(9!) power; degree 9.
        let w = iterated_wreath(3, 2, DEFAULT_CAP).unwrap();
        assert_eq!(w.shape(), 9);
        assert_eq!(w.order().unwrap(), 81);
        assert_eq!(vp_factorial(9, 3), 4);
        let w3 = iterated_wreath(2, 3, DEFAULT_CAP).unwrap();
        assert_eq!(w3.shape(), 8);
        assert_eq!(w3.order().unwrap(), 2u64.pow(vp_factorial(8, 2) as u32));
    }

    #[test]
    fn sylow_symmetric_matches_legendre() {
        for (n, p) in [(3usize, 3u64), (4, 3), (9, 3), (12, 3), (10, 5), (7, 7), (2, 3)] {
            let g = sylow_symmetric(n, p, DEFAULT_CAP).unwrap();
            assert_eq!(g.shape(), n, "degree for n={n}");
            assert_eq!(
                g.order().unwrap(),
                p.pow(vp_factorial(n as u64, p) as u32),
                "order for n={n}, p={p}"
            );
        }
    }

    #[test]
    fn extraspecial_is_extraspecial() {
        let g = extraspecial_p3(3, DEFAULT_CAP).unwrap();
        assert_eq!(g.order().unwrap(), 27);
        assert!(!g.is_abelian());
        assert_eq!(center(&g).unwrap().order().unwrap(), 3);
        assert_eq!(exponent(&g, ExponentMode::Full).unwrap().value, 3);
        assert!(extraspecial_p3(2, DEFAULT_CAP).is_err());
    }

    #[test]
    fn semidirect_with_q8_has_order_72() {
        let (x, y) = q8_generators_sl2_3().unwrap();
        let g = semidirect_vector(3, 2, &[x, y], DEFAULT_CAP).unwrap();
        assert_eq!(g.order().unwrap(), 9 * 8);
        // The point stabilizer of 0 is Q8, acting freely on the 8 nonzero vectors.
    }

    #[test]
    fn q8_pair_is_quaternion() {
        let (x, y) = q8_generators_sl2_3().unwrap();
        assert_eq!(x.order(), 4);
        assert_eq!(y.order(), 4);
        assert_eq!(x.mul(&x), y.mul(&y));
        assert_eq!(y.mul(&x).mul(&y.inverse().unwrap()), x.inverse().unwrap());
    }

    #[test]
    fn monomial_sylow_orders() {
        // p = 3, q = 4: e = 1, order 3^3 = 27.
        let s = monomial_sylow_slp(3, 4, DEFAULT_CAP).unwrap();
        assert_eq!(s.order().unwrap(), 27);
        // p = 3, q = 19: 18 = 2 * 3^2, e = 2, order 3^5 = 243.
        let s = monomial_sylow_slp(3, 19, DEFAULT_CAP).unwrap();
        assert_eq!(s.order().unwrap(), 243);
        // p = 3, q = 7: e = 1, order 27.
        let s = monomial_sylow_slp(3, 7, DEFAULT_CAP).unwrap();
        assert_eq!(s.order().unwrap(), 27);
        // p = 5, q = 11: e = 1, order 5^5 = 3125.
        let s = monomial_sylow_slp(5, 11, DEFAULT_CAP).unwrap();
        assert_eq!(s.order().unwrap(), 3125);
    }

    #[test]
    fn monomial_sylow_rejects_bad_parameters() {
        assert!(matches!(
            monomial_sylow_slp(3, 5, DEFAULT_CAP),
            Err(Error::PrimeDoesNotDivide { .. })
        ));
        assert!(matches!(monomial_sylow_slp(2, 5, DEFAULT_CAP), Err(Error::EvenPrime(_))));
        assert!(matches!(
            monomial_sylow_slp(4, 5, DEFAULT_CAP),
            Err(Error::UnsupportedPrime { .. })
        ));
    }

    #[test]
    fn vp_factorial_small_values() {
        assert_eq!(vp_factorial(9, 3), 4);
        assert_eq!(vp_factorial(12, 3), 5);
        assert_eq!(vp_factorial(100, 3), 48);
        assert_eq!(vp_factorial(10, 2), 8);
        assert_eq!(vp_factorial(2, 3), 0);
    }

    #[test]
    fn degree_guard_fires() {
        assert!(cyclic(MAX_PERM_POINTS + 1, DEFAULT_CAP).unwrap_err().is_cap());
        assert!(semidirect_vector(3, 16, &[], DEFAULT_CAP).unwrap_err().is_cap());
    }
}
