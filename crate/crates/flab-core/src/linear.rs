//! Linear actions on finite vector spaces: orbits on nonzero vectors, a
//! signature-based gate for transitive linear groups, field norm maps, and
//! the unipotent-extension exponent criterion.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::element::{GroupElement, Kind};
use crate::error::{Error, Result};
use crate::gf::{is_prime, Field};
use crate::group::{make_group, FiniteGroup};
use crate::matrix::Mat;

/// Hard bound on the nonzero-vector point set for orbit scans.
const ORBIT_POINT_CAP: u64 = 10_000_000;

fn matrix_generators(g: &FiniteGroup) -> Result<Vec<&Mat>> {
    if g.kind() != Kind::Matrix {
        return Err(Error::KindMismatch("expected a matrix group".into()));
    }
    Ok(g.generators().iter().map(|e| e.as_matrix().expect("kind checked")).collect())
}

/// Orbits of the generated group on the q^n - 1 nonzero vectors, listed in
/// order of their least vector code.
#[derive(Clone, Debug)]
pub struct VectorOrbits {
    pub reps: Vec<u64>,
    pub sizes: Vec<u64>,
}

pub fn vector_orbits(g: &FiniteGroup) -> Result<VectorOrbits> {
    let gens = matrix_generators(g)?;
    let first = gens.first().ok_or_else(|| {
        Error::IncompatibleGenerators("matrix group without generators".into())
    })?;
    let field = first.field().clone();
    let n = first.dim() as u32;
    let total = (field.order() as u128).pow(n);
    if total - 1 > ORBIT_POINT_CAP as u128 {
        return Err(Error::cap(ORBIT_POINT_CAP, "nonzero vector orbit scan"));
    }
    let total = total as u64;

    let mut orbit_of: Vec<u32> = vec![u32::MAX; total as usize];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut stack: Vec<u64> = Vec::new();
    for start in 1..total {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        let mut size = 0u64;
        orbit_of[start as usize] = id;
        stack.push(start);
        while let Some(v) = stack.pop() {
            size += 1;
            for m in &gens {
                let w = m.apply_vector_code(v);
                if orbit_of[w as usize] == u32::MAX {
                    orbit_of[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    Ok(VectorOrbits { reps, sizes })
}

/// Transitivity on nonzero vectors, with the orbit sizes as evidence.
pub fn is_transitive_nonzero(g: &FiniteGroup) -> Result<(bool, Vec<u64>)> {
    let orbits = vector_orbits(g)?;
    Ok((orbits.sizes.len() == 1, orbits.sizes))
}

/// The group extended by the scalar matrices of its field.
pub fn add_scalars(g: &FiniteGroup) -> Result<FiniteGroup> {
    let gens = matrix_generators(g)?;
    let first = gens.first().ok_or_else(|| {
        Error::IncompatibleGenerators("matrix group without generators".into())
    })?;
    let field = first.field().clone();
    let n = first.dim();
    let w = field.multiplicative_generator();
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        entries[i * n + i] = w;
    }
    let scalar = Mat::from_entries(field, n, entries)?;
    let mut new_gens: Vec<GroupElement> = g.generators().to_vec();
    new_gens.push(GroupElement::Matrix(scalar));
    make_group(new_gens, g.cap())
}

/// |SL_k(q)| = q^(k(k-1)/2) * prod_{i=2..k} (q^i - 1).
pub fn sl_order(k: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut out = q.pow(k * (k - 1) / 2);
    for i in 2..=k {
        out *= q.pow(i) - 1;
    }
    out
}

/// |Sp_k(q)| for even k: q^((k/2)^2) * prod_{i=1..k/2} (q^(2i) - 1).
pub fn sp_order(k: u32, q: u64) -> u128 {
    assert!(k % 2 == 0, "symplectic groups have even degree");
    let m = k / 2;
    let q = q as u128;
    let mut out = q.pow(m * m);
    for i in 1..=m {
        out *= q.pow(2 * i) - 1;
    }
    out
}

pub fn vp_u128(mut x: u128, p: u64) -> u32 {
    let p = p as u128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

pub const HERING_VERDICT_SCHEMA: &str = "flab/hering-verdict/v1";

/// Case labels for transitive linear groups on a prime-field space. The g2
/// and a7-n4 labels occur only in even characteristic and are never produced
/// here; they are kept so verdicts cover the full case list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeringLabel {
    #[serde(rename = "not-transitive")]
    NotTransitive,
    #[serde(rename = "gamma-l1")]
    GammaL1,
    #[serde(rename = "sl-k")]
    SlK,
    #[serde(rename = "sp-k")]
    SpK,
    #[serde(rename = "g2")]
    G2,
    #[serde(rename = "sporadic-n2")]
    SporadicN2,
    #[serde(rename = "a7-n4")]
    A7N4,
    #[serde(rename = "n4-p3-table")]
    N4P3Table,
    #[serde(rename = "sl2-13-n6")]
    Sl213N6,
    #[serde(rename = "unclassified")]
    Unclassified,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchedLinear {
    pub family: String,
    pub k: u32,
    pub m: u32,
    /// Decimal order of the matched classical group.
    pub order: String,
    /// p-adic valuation of that order (Sylow p-order exponent).
    pub sylow_vp: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeringEvidence {
    pub p: u64,
    pub n: u32,
    pub orbit_sizes: Vec<u64>,
    pub group_order: u64,
    pub order_with_scalars: u64,
    /// n * (p^n - 1), the order of the one-dimensional semilinear group.
    pub gamma_l1_bound: u64,
    /// p-part of the group order.
    pub sylow_p_order: u64,
    pub normal_cyclic_fpf_order: Option<u64>,
    pub matched: Option<MatchedLinear>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeringVerdict {
    pub schema: String,
    pub label: HeringLabel,
    pub evidence: HeringEvidence,
}

fn verdict(label: HeringLabel, evidence: HeringEvidence) -> HeringVerdict {
    HeringVerdict { schema: HERING_VERDICT_SCHEMA.into(), label, evidence }
}

/// Is the matrix fixed-point-free on nonzero vectors (no eigenvalue 1)?
fn fixed_point_free(m: &Mat) -> bool {
    let n = m.dim();
    let id = Mat::identity(m.field().clone(), n);
    m.sub(&id).rank() == n
}

/// Search the conjugacy class representatives for a generator of a normal
/// cyclic subgroup acting freely on nonzero vectors, of order dividing
/// p^n - 1 (the signature of the multiplicative group of the big field).
/// Returns the largest such order.
fn normal_cyclic_fpf(g: &FiniteGroup, point_count: u64) -> Result<Option<u64>> {
    let classes = g.conjugacy_classes()?;
    let store = g.elements()?;
    let mut best: Option<u64> = None;
    'reps: for rep in classes.reps() {
        let o = rep.order();
        if o == 1 || point_count % o != 0 || best.is_some_and(|b| b >= o) {
            continue;
        }
        let mut powers: Vec<GroupElement> = Vec::with_capacity(o as usize);
        let mut x = rep.clone();
        for _ in 0..o {
            powers.push(x.clone());
            x = x.mul(rep);
        }
        for pw in &powers {
            let m = pw.as_matrix().expect("matrix group");
            if !m.is_identity() && !fixed_point_free(m) {
                continue 'reps;
            }
        }
        powers.sort();
        for s in store.elements() {
            for pw in &powers {
                if powers.binary_search(&pw.conjugate_by(s)).is_err() {
                    continue 'reps;
                }
            }
        }
        best = Some(o);
    }
    Ok(best)
}

/// Signature gate for transitive subgroups of GL_n(p), p in {3, 5, 7} and
/// n <= 6. This matches coarse consequences (order divisibility, the
/// one-dimensional semilinear bound, dimension and prime) rather than
/// recognizing groups exactly; Unclassified with evidence is a valid outcome.
pub fn hering_classify(g: &FiniteGroup) -> Result<HeringVerdict> {
    let gens = matrix_generators(g)?;
    let first = gens.first().ok_or_else(|| {
        Error::IncompatibleGenerators("matrix group without generators".into())
    })?;
    if first.field().k() != 1 {
        return Err(Error::InvalidInput {
            path: "group.field".into(),
            message: "classification requires a prime field".into(),
        });
    }
    let p = first.field().p();
    let n = first.dim() as u32;
    drop(gens);

    let orbits = vector_orbits(g)?;
    let point_count = (p as u128).pow(n) as u64 - 1;
    let group_order = g.order()?;
    let order_with_scalars = add_scalars(g)?.order()?;
    let gamma_l1_bound = n as u64 * point_count;
    let mut sylow_p_order = 1u64;
    {
        let mut rest = group_order;
        while rest % p == 0 {
            rest /= p;
            sylow_p_order *= p;
        }
    }
    let mut evidence = HeringEvidence {
        p,
        n,
        orbit_sizes: orbits.sizes.clone(),
        group_order,
        order_with_scalars,
        gamma_l1_bound,
        sylow_p_order,
        normal_cyclic_fpf_order: None,
        matched: None,
    };

    if orbits.sizes.len() != 1 {
        return Ok(verdict(HeringLabel::NotTransitive, evidence));
    }
    if n > 6 || !matches!(p, 3 | 5 | 7) {
        return Ok(verdict(HeringLabel::Unclassified, evidence));
    }

    if gamma_l1_bound % order_with_scalars == 0 {
        if let Some(o) = normal_cyclic_fpf(g, point_count)? {
            evidence.normal_cyclic_fpf_order = Some(o);
            return Ok(verdict(HeringLabel::GammaL1, evidence));
        }
    }

    // Best (largest) classical group whose order divides |G|, over the
    // factorizations n = k * m.
    let mut best: Option<MatchedLinear> = None;
    for k in 2..=n {
        if n % k != 0 {
            continue;
        }
        let m = n / k;
        let q = p.pow(m);
        let mut candidates = vec![("SL", sl_order(k, q))];
        if k >= 4 && k % 2 == 0 {
            candidates.push(("Sp", sp_order(k, q)));
        }
        for (family, ord) in candidates {
            if group_order as u128 % ord == 0
                && best.as_ref().is_none_or(|b| ord > b.order.parse::<u128>().unwrap())
            {
                best = Some(MatchedLinear {
                    family: family.into(),
                    k,
                    m,
                    order: ord.to_string(),
                    sylow_vp: vp_u128(ord, p),
                });
            }
        }
    }
    if let Some(matched) = best {
        let label =
            if matched.family == "SL" { HeringLabel::SlK } else { HeringLabel::SpK };
        evidence.matched = Some(matched);
        return Ok(verdict(label, evidence));
    }

    if n == 2 && matches!(p, 5 | 7 | 11 | 19 | 23 | 29 | 59) {
        return Ok(verdict(HeringLabel::SporadicN2, evidence));
    }
    if n == 4 && p == 3 {
        return Ok(verdict(HeringLabel::N4P3Table, evidence));
    }
    if n == 6 && p == 3 && matches!(order_with_scalars, 2184 | 4368) {
        return Ok(verdict(HeringLabel::Sl213N6, evidence));
    }
    Ok(verdict(HeringLabel::Unclassified, evidence))
}

/// Image of the norm map x -> x * phi(x) * ... * phi^(n/d - 1)(x) from
/// GF(p^n) with phi: x -> x^(p^d), together with surjectivity onto GF(p^d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormMapImage {
    pub image: Vec<u64>,
    pub surjective: bool,
}

pub fn norm_map_image(p: u64, n: u32, d: u32) -> Result<NormMapImage> {
    if !is_prime(p) {
        return Err(Error::InvalidInput {
            path: "p".into(),
            message: format!("{p} is not prime"),
        });
    }
    if d == 0 || n == 0 || n % d != 0 {
        return Err(Error::DivisibilityViolated(format!(
            "norm map needs d | n, got n = {n}, d = {d}"
        )));
    }
    let total = (p as u128).pow(n);
    if total > ORBIT_POINT_CAP as u128 {
        return Err(Error::cap(ORBIT_POINT_CAP, "norm map scan"));
    }
    let field = Field::new(p, n)?;
    let phi = field.frobenius_table(d);
    let steps = n / d;
    let mut image = BTreeSet::new();
    for x in 0..total as u64 {
        let mut acc = x;
        let mut y = x;
        for _ in 1..steps {
            y = field.apply_frobenius(&phi, y);
            acc = field.mul(acc, y);
        }
        if !field.in_subfield(d, acc) {
            return Err(Error::InternalCheckFailed(
                "norm image left the fixed subfield".into(),
            ));
        }
        image.insert(acc);
    }
    let subfield_size = p.pow(d);
    let surjective = image.len() as u64 == subfield_size;
    Ok(NormMapImage { image: image.into_iter().collect(), surjective })
}

/// In the extension of (GF(p^n), +) by the order-p field automorphism
/// beta: x -> x^(p^d) (requires n = d*p), is there an element outside the
/// translation part of order p^2? Scans every coset element directly: the
/// p-th power of (x, beta^j) is the twisted trace sum_{i<p} beta^(ij)(x),
/// so the order is p^2 exactly when that sum is nonzero.
pub fn gamma_l1_exponent_check(p: u64, n: u32, d: u32) -> Result<bool> {
    if d == 0 || n != d * p as u32 {
        return Err(Error::DivisibilityViolated(format!(
            "the automorphism must have order p on the field: need n = d*p, got n = {n}, d = {d}, p = {p}"
        )));
    }
    let total = (p as u128).pow(n);
    if total > ORBIT_POINT_CAP as u128 {
        return Err(Error::cap(ORBIT_POINT_CAP, "semilinear coset scan"));
    }
    let field = Field::new(p, n)?;
    for j in 1..p as u32 {
        let beta_j = field.frobenius_table(d * j);
        for x in 0..total as u64 {
            let mut acc = 0u64;
            let mut y = x;
            for _ in 0..p {
                acc = field.add(acc, y);
                y = field.apply_frobenius(&beta_j, y);
            }
            if acc != 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The one-dimensional semilinear group of GF(p^n) as n x n matrices over
/// GF(p): multiplication by a generator of the multiplicative group plus the
/// Frobenius map, both written in the polynomial basis.
pub fn gamma_l1_full_group(p: u64, n: u32, cap: u64) -> Result<FiniteGroup> {
    let big = Field::new(p, n)?;
    let prime_field = Field::new(p, 1)?;
    let dim = n as usize;
    let digits = |code: u64| -> Vec<u64> {
        let mut out = Vec::with_capacity(dim);
        let mut rest = code;
        for _ in 0..dim {
            out.push(rest % p);
            rest /= p;
        }
        out
    };
    let column_matrix = |images: Vec<u64>| -> Result<Mat> {
        let mut entries = vec![0u64; dim * dim];
        for (j, img) in images.iter().enumerate() {
            for (i, digit) in digits(*img).into_iter().enumerate() {
                entries[i * dim + j] = digit;
            }
        }
        Mat::from_entries(prime_field.clone(), dim, entries)
    };
    let w = big.multiplicative_generator();
    let basis = |i: u32| -> u64 { p.pow(i) };
    let mult = column_matrix((0..n).map(|i| big.mul(w, basis(i))).collect())?;
    let frob_table = big.frobenius_table(1);
    let frob =
        column_matrix((0..n).map(|i| big.apply_frobenius(&frob_table, basis(i))).collect())?;
    make_group(vec![GroupElement::Matrix(mult), GroupElement::Matrix(frob)], cap)
}

/// Jordan block sizes of a unipotent matrix with x^p = 1 over a prime field,
/// from the rank sequence of (x - 1)^j. Sorted descending.
pub fn jordan_type(x: &Mat) -> Result<Vec<usize>> {
    if x.field().k() != 1 {
        return Err(Error::InvalidInput {
            path: "matrix.field".into(),
            message: "jordan type requires a prime field".into(),
        });
    }
    let p = x.field().p();
    let n = x.dim();
    if !x.pow(p).is_identity() {
        return Err(Error::NotUnipotentOrderP(format!(
            "matrix order {} does not divide p = {p}",
            x.order()
        )));
    }
    let id = Mat::identity(x.field().clone(), n);
    let nilpotent = x.sub(&id);
    let mut ranks = vec![n];
    let mut power = nilpotent.clone();
    while ranks[ranks.len() - 1] > 0 {
        ranks.push(power.rank());
        power = power.mul(&nilpotent);
    }
    let blocks_ge = |j: usize| -> usize {
        if j >= ranks.len() {
            0
        } else {
            ranks[j - 1] - ranks[j]
        }
    };
    let mut partition = Vec::new();
    for size in (1..ranks.len()).rev() {
        for _ in 0..blocks_ge(size).saturating_sub(blocks_ge(size + 1)) {
            partition.push(size);
        }
    }
    if partition.iter().sum::<usize>() != n {
        return Err(Error::InternalCheckFailed("jordan block sizes do not sum to n".into()));
    }
    Ok(partition)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectExponent {
    pub exponent: u64,
    pub jordan: Vec<usize>,
    /// True when the permutation-group brute force re-derived the exponent.
    pub brute_forced: bool,
}

/// Exponent of GF(p)^n extended by the unipotent x (order dividing p): p^2
/// exactly when 1 + x + ... + x^(p-1) != 0, equivalently when some Jordan
/// block has size p. Cross-checked by brute force whenever the permutation
/// realization fits under the cap.
pub fn semidirect_exponent_test(x: &Mat, cap: u64) -> Result<SemidirectExponent> {
    let jordan = jordan_type(x)?;
    let p = x.field().p();
    let n = x.dim();

    let mut power_sum = Mat::identity(x.field().clone(), n);
    let mut acc = Mat::identity(x.field().clone(), n);
    for _ in 1..p {
        acc = acc.mul(x);
        power_sum = power_sum.add(&acc);
    }
    let by_blocks = jordan.iter().any(|b| *b >= p as usize);
    if by_blocks == power_sum.is_zero() {
        return Err(Error::InternalCheckFailed(
            "jordan block criterion disagrees with the power-sum matrix".into(),
        ));
    }
    let exponent = if by_blocks { p * p } else { p };

    let points = (p as u128).pow(n as u32);
    let group_size = points * if x.is_identity() { 1 } else { p as u128 };
    let mut brute_forced = false;
    if points <= crate::construct::MAX_PERM_POINTS as u128 && group_size <= cap as u128 {
        let group = crate::construct::semidirect_vector(p, n, &[x.clone()], cap)?;
        let brute = crate::structure::exponent(&group, crate::structure::ExponentMode::Full)?;
        if brute.value != exponent {
            return Err(Error::InternalCheckFailed(format!(
                "criterion exponent {exponent} but enumeration found {}",
                brute.value
            )));
        }
        brute_forced = true;
    }
    Ok(SemidirectExponent { exponent, jordan, brute_forced })
}

/// All unipotent types in dimension n over GF(p) with x^p = 1: partitions of
/// n into parts of size at most p, each with its block-diagonal Jordan
/// matrix. Ordered lexicographically descending ([3,1] before [2,2], ...).
pub fn unipotent_types(p: u64, n: usize) -> Result<Vec<(Vec<usize>, Mat)>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput {
            path: "p".into(),
            message: format!("{p} is not prime"),
        });
    }
    let field = Field::new(p, 1)?;
    let max_part = (p as usize).min(n);
    let mut partitions: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    fn descend(
        remaining: usize,
        max_part: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            descend(remaining - part, part, current, out);
            current.pop();
        }
    }
    descend(n, max_part, &mut current, &mut partitions);

    let mut out = Vec::with_capacity(partitions.len());
    for partition in partitions {
        let mut entries = vec![0u64; n * n];
        let mut offset = 0;
        for block in &partition {
            for i in 0..*block {
                entries[(offset + i) * n + offset + i] = 1;
                if i + 1 < *block {
                    entries[(offset + i) * n + offset + i + 1] = 1;
                }
            }
            offset += block;
        }
        out.push((partition, Mat::from_entries(field.clone(), n, entries)?));
    }
    Ok(out)
}
