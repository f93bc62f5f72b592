//! Structural subgroups and invariants: center, derived subgroup, the
//! subgroups generated by p-th powers (agemo) and by elements of order
//! dividing p (omega), Frattini subgroup and maximal subgroups of p-groups,
//! and exponent computation with an explicit exact/lower-bound distinction.

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::{close_under_products, FiniteGroup, SubgroupHandle};
use crate::perm::lcm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Z(G): elements commuting with every generator.
pub fn center(g: &FiniteGroup) -> Result<SubgroupHandle> {
    let store = g.elements()?;
    let members: Vec<GroupElement> = store
        .elements()
        .iter()
        .filter(|e| g.generators().iter().all(|s| e.commutes_with(s)))
        .cloned()
        .collect();
    SubgroupHandle::from_elements(g, &members)
}

/// G' = [G, G]: normal closure of the pairwise commutators of the generators.
pub fn derived_subgroup(g: &FiniteGroup) -> Result<SubgroupHandle> {
    let gens = g.generators();
    let identity = g.identity();
    let mut seeds: Vec<GroupElement> = Vec::new();
    for a in gens {
        for b in gens {
            let c = a.commutator(b);
            if c != *identity && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    // Grow to the normal closure: adjoin conjugates until closed.
    loop {
        let set = close_under_products(&seeds, &identity, g.cap())?;
        let mut escaped = None;
        'search: for x in &set {
            for s in gens {
                let y = x.conjugate_by(s);
                if set.binary_search(&y).is_err() {
                    escaped = Some(y);
                    break 'search;
                }
            }
        }
        match escaped {
            Some(y) => seeds.push(y),
            None => return SubgroupHandle::from_elements(g, &set),
        }
    }
}

/// Agemo: the subgroup generated by all p-th powers g^p. The generating set
/// is closed under conjugation, so plain product closure already yields a
/// normal subgroup.
pub fn agemo1(g: &FiniteGroup, p: u64) -> Result<SubgroupHandle> {
    let store = g.elements()?;
    let mut powers: Vec<GroupElement> =
        store.elements().iter().map(|e| e.pow(p as i64)).collect();
    powers.sort_unstable();
    powers.dedup();
    let set = close_under_products(&powers, &g.identity(), g.cap())?;
    SubgroupHandle::from_elements(g, &set)
}

/// Omega: the subgroup generated by all elements of order dividing p.
pub fn omega1(g: &FiniteGroup, p: u64) -> Result<SubgroupHandle> {
    let store = g.elements()?;
    let seeds: Vec<GroupElement> = store
        .elements()
        .iter()
        .filter(|e| e.pow(p as i64) == *g.identity())
        .cloned()
        .collect();
    let set = close_under_products(&seeds, &g.identity(), g.cap())?;
    SubgroupHandle::from_elements(g, &set)
}

/// Frattini subgroup of a p-group: G' together with the p-th powers.
pub fn frattini_pgroup(g: &FiniteGroup, p: u64) -> Result<SubgroupHandle> {
    g.p_group_exponent(p)?;
    let derived = derived_subgroup(g)?;
    let ag = agemo1(g, p)?;
    let mut seeds: Vec<GroupElement> = derived.group().generators().to_vec();
    seeds.extend_from_slice(ag.group().generators());
    let set = close_under_products(&seeds, &g.identity(), g.cap())?;
    SubgroupHandle::from_elements(g, &set)
}

/// Canonical-representative map for the cosets of a normal subgroup.
///
/// Representatives are the lex-least members of their cosets; `reps` is
/// sorted. Multiplication of cosets goes through `rep(a * b)`.
pub(crate) struct CosetMap {
    canon: HashMap<GroupElement, GroupElement>,
    reps: Vec<GroupElement>,
}

impl CosetMap {
    /// `ambient_sorted` must be a sorted group element list and `normal` the
    /// element list of a normal subgroup of it.
    pub(crate) fn build(ambient_sorted: &[GroupElement], normal: &[GroupElement]) -> CosetMap {
        let mut canon: HashMap<GroupElement, GroupElement> =
            HashMap::with_capacity(ambient_sorted.len());
        let mut reps = Vec::with_capacity(ambient_sorted.len() / normal.len().max(1));
        for e in ambient_sorted {
            if canon.contains_key(e) {
                continue;
            }
            // e is the lex-least unassigned element, hence least in its coset.
            for f in normal {
                canon.insert(e.mul(f), e.clone());
            }
            reps.push(e.clone());
        }
        CosetMap { canon, reps }
    }

    pub(crate) fn reps(&self) -> &[GroupElement] {
        &self.reps
    }

    pub(crate) fn rep(&self, e: &GroupElement) -> &GroupElement {
        &self.canon[e]
    }

    pub(crate) fn mul(&self, a: &GroupElement, b: &GroupElement) -> &GroupElement {
        self.rep(&a.mul(b))
    }
}

/// A quotient G/N realised concretely: a permutation group acting on the
/// (sorted) coset representatives by right translation, plus the data to
/// move between G-elements and quotient points.
pub(crate) struct Quotient {
    pub(crate) group: FiniteGroup,
    map: CosetMap,
}

impl Quotient {
    /// Quotient point (index into the sorted rep list) of an ambient element.
    pub(crate) fn point_of(&self, e: &GroupElement) -> usize {
        let rep = self.map.rep(e);
        self.map.reps().binary_search(rep).expect("rep list is sorted")
    }

    /// The coset rep a quotient element sends the identity coset to; this
    /// inverts the regular representation.
    pub(crate) fn rep_of(&self, q: &GroupElement, identity: &GroupElement) -> &GroupElement {
        let i0 = self.point_of(identity);
        let p = q.as_perm().expect("quotient elements are permutations");
        &self.map.reps()[p.apply(i0)]
    }
}

/// Build G/N as a permutation group via the regular action on cosets.
/// `normal_sorted` must be the sorted element list of a normal subgroup;
/// normality is the caller's responsibility.
pub(crate) fn regular_quotient(
    g: &FiniteGroup,
    normal_sorted: &[GroupElement],
) -> Result<Quotient> {
    let store = g.elements()?;
    let map = CosetMap::build(store.elements(), normal_sorted);
    let n_cosets = map.reps().len();
    if n_cosets > u16::MAX as usize {
        return Err(Error::cap(u16::MAX as u64, "coset count in quotient construction"));
    }
    let mut gens = Vec::with_capacity(g.generators().len());
    for s in g.generators() {
        let img: Vec<u16> = (0..n_cosets)
            .map(|i| {
                let target = map.mul(&map.reps()[i], s);
                map.reps().binary_search(target).expect("rep list is sorted") as u16
            })
            .collect();
        gens.push(GroupElement::Perm(
            crate::perm::Perm::from_images(img).expect("coset action is a bijection"),
        ));
    }
    let group = crate::group::make_group(gens, g.cap())?;
    Ok(Quotient { group, map })
}

/// Basis of G/Phi(G) as an F_p vector space, realised by coset
/// representatives, together with coordinates for every coset rep.
struct FrattiniQuotientBasis {
    basis: Vec<GroupElement>,
    /// coordinates of each coset rep in terms of `basis`, keyed by rep.
    coords: HashMap<GroupElement, Vec<u64>>,
}

fn frattini_quotient_basis(
    g: &FiniteGroup,
    p: u64,
    phi: &SubgroupHandle,
) -> Result<FrattiniQuotientBasis> {
    let store = g.elements()?;
    let phi_elements = phi.group().elements()?;
    let cosets = CosetMap::build(store.elements(), phi_elements.elements());
    let identity_rep = cosets.rep(&g.identity()).clone();

    // Greedy basis: walk reps in lex order, keep those outside the current span.
    let mut basis: Vec<GroupElement> = Vec::new();
    let mut coords: HashMap<GroupElement, Vec<u64>> = HashMap::new();
    coords.insert(identity_rep.clone(), Vec::new());
    for r in cosets.reps() {
        if coords.contains_key(r) {
            continue;
        }
        // Extend every known coordinate vector by powers of the new basis rep.
        let mut extended: HashMap<GroupElement, Vec<u64>> = HashMap::new();
        for (span_el, vec) in &coords {
            let mut acc = span_el.clone();
            for power in 0..p {
                let mut v = vec.clone();
                v.push(power);
                extended.insert(acc.clone(), v);
                if power + 1 < p {
                    acc = cosets.mul(&acc, r).clone();
                }
            }
        }
        basis.push(r.clone());
        coords = extended;
    }
    // Pad earlier vectors to full length (they were built incrementally).
    let rank = basis.len();
    for v in coords.values_mut() {
        while v.len() < rank {
            v.push(0);
        }
    }
    if coords.len() != cosets.reps().len() {
        return Err(Error::InternalCheckFailed(
            "frattini quotient span did not cover all cosets".into(),
        ));
    }
    Ok(FrattiniQuotientBasis { basis, coords })
}

/// All maximal subgroups of a p-group, i.e. the index-p subgroups, one per
/// hyperplane of G/Phi(G). Returned in a deterministic order (lex order of
/// the defining functional's coefficient vector).
pub fn maximal_subgroups_pgroup(g: &FiniteGroup, p: u64) -> Result<Vec<SubgroupHandle>> {
    let phi = frattini_pgroup(g, p)?;
    let quotient = frattini_quotient_basis(g, p, &phi)?;
    let rank = quotient.basis.len();
    if rank == 0 {
        return Ok(Vec::new()); // trivial group: no proper subgroups at all
    }
    let order = g.order()?;

    // Functionals in F_p^rank, first nonzero coefficient = 1, lex order.
    let mut functionals: Vec<Vec<u64>> = Vec::new();
    let total = p.pow(rank as u32);
    for code in 1..total {
        let mut digits = vec![0u64; rank];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c % p;
            c /= p;
        }
        if digits.iter().find(|&&d| d != 0) == Some(&1) {
            functionals.push(digits);
        }
    }

    let mut result = Vec::with_capacity(functionals.len());
    for f in &functionals {
        let mut kernel_reps: Vec<GroupElement> = quotient
            .coords
            .iter()
            .filter(|(rep, v)| {
                let dot: u64 = f.iter().zip(*v).map(|(a, b)| a * b).sum();
                dot % p == 0 && **rep != *g.identity()
            })
            .map(|(rep, _)| rep.clone())
            .collect();
        kernel_reps.sort_unstable();
        let mut gens: Vec<GroupElement> = phi.group().generators().to_vec();
        gens.extend(kernel_reps);
        let handle = SubgroupHandle::new(g, gens)?;
        if handle.order()? * p != order {
            return Err(Error::InternalCheckFailed(
                "hyperplane preimage does not have index p".into(),
            ));
        }
        result.push(handle);
    }
    // One subgroup per hyperplane: (p^rank - 1) / (p - 1) of them.
    let expected = (total - 1) / (p - 1);
    if result.len() as u64 != expected {
        return Err(Error::InternalCheckFailed(
            "maximal subgroup count does not match hyperplane count".into(),
        ));
    }
    Ok(result)
}

pub fn count_elements_order_dividing(g: &FiniteGroup, m: u64) -> Result<u64> {
    let store = g.elements()?;
    let identity = g.identity();
    Ok(store.elements().iter().filter(|e| e.pow(m as i64) == *identity).count() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentMode {
    /// Scan every element; result is exact.
    Full,
    /// Probe generators, their product, and seeded random words; result is a
    /// lower bound for the exponent (flagged as such).
    Witness { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ExponentBound {
    pub value: u64,
    /// True only for a full scan.
    pub exact: bool,
    /// An element whose order is `value` (Full mode: of maximal order).
    pub witness: Option<GroupElement>,
}

pub fn exponent(g: &FiniteGroup, mode: ExponentMode) -> Result<ExponentBound> {
    match mode {
        ExponentMode::Full => {
            let store = g.elements()?;
            let mut value = 1u64;
            let mut best_order = 0u64;
            let mut witness = None;
            for e in store.elements() {
                let o = e.order();
                value = lcm(value, o);
                if o > best_order {
                    best_order = o;
                    witness = Some(e.clone());
                }
            }
            Ok(ExponentBound { value, exact: true, witness })
        }
        ExponentMode::Witness { seed } => {
            let gens = g.generators();
            let mut candidates: Vec<GroupElement> = gens.to_vec();
            let mut all = g.identity().clone();
            for s in gens {
                all = all.mul(s);
            }
            candidates.push(all);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..64 {
                let len = rng.random_range(2..=16);
                let mut w = g.identity().clone();
                for _ in 0..len {
                    w = w.mul(&gens[rng.random_range(0..gens.len())]);
                }
                candidates.push(w);
            }
            // Track the best single order rather than an lcm across probes,
            // so the reported value is always witnessed by one element.
            let mut value = 1u64;
            let mut witness = None;
            for c in &candidates {
                let o = c.order();
                if o > value {
                    value = o;
                    witness = Some(c.clone());
                }
            }
            Ok(ExponentBound { value, exact: false, witness })
        }
    }
}

/// Abelian with every generator of order dividing p. For an abelian group the
/// exponent is the lcm of the generator orders, so this is exact.
pub fn is_elementary_abelian(g: &FiniteGroup, p: u64) -> Result<bool> {
    if !g.is_abelian() {
        return Ok(false);
    }
    Ok(g.generators().iter().all(|e| {
        let o = e.order();
        o == 1 || o == p
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group_default;
    use crate::perm::Perm;

    fn perm_el(degree: usize, cycles: &[&[u16]]) -> GroupElement {
        let cycles: Vec<Vec<u16>> = cycles.iter().map(|c| c.to_vec()).collect();
        GroupElement::Perm(Perm::from_cycles(degree, &cycles, "test").unwrap())
    }

    fn s4() -> FiniteGroup {
        make_group_default(vec![perm_el(4, &[&[0, 1]]), perm_el(4, &[&[0, 1, 2, 3]])]).unwrap()
    }

    /// Heisenberg group of order 27 acting on 9 points.
    fn heis27() -> FiniteGroup {
        // a: (x, y) -> (x+1, y); b: (x, y) -> (x, y+x) on points 3x + y.
        let a = Perm::from_images(
            (0..9).map(|i| ((i / 3 + 1) % 3 * 3 + i % 3) as u16).collect(),
        )
        .unwrap();
        let b = Perm::from_images(
            (0..9).map(|i| (i / 3 * 3 + (i % 3 + i / 3) % 3) as u16).collect(),
        )
        .unwrap();
        make_group_default(vec![GroupElement::Perm(a), GroupElement::Perm(b)]).unwrap()
    }

    #[test]
    fn center_of_s4_is_trivial() {
        let z = center(&s4()).unwrap();
        assert_eq!(z.order().unwrap(), 1);
    }

    #[test]
    fn derived_subgroup_of_s4_is_a4() {
        let d = derived_subgroup(&s4()).unwrap();
        assert_eq!(d.order().unwrap(), 12);
        // A_4 contains the 3-cycles.
        assert!(d.group().contains(&perm_el(4, &[&[0, 1, 2]])).unwrap());
    }

    #[test]
    fn heisenberg_structure() {
        let g = heis27();
        assert_eq!(g.order().unwrap(), 27);
        assert_eq!(center(&g).unwrap().order().unwrap(), 3);
        assert_eq!(derived_subgroup(&g).unwrap().order().unwrap(), 3);
        assert_eq!(agemo1(&g, 3).unwrap().order().unwrap(), 1); // exponent 3
        assert_eq!(omega1(&g, 3).unwrap().order().unwrap(), 27);
        assert_eq!(frattini_pgroup(&g, 3).unwrap().order().unwrap(), 3);
        // 27 / 3 = 9 = 3^2, so (9 - 1) / 2 = 4 maximal subgroups of order 9.
        let maximals = maximal_subgroups_pgroup(&g, 3).unwrap();
        assert_eq!(maximals.len(), 4);
        for m in &maximals {
            assert_eq!(m.order().unwrap(), 9);
        }
    }

    #[test]
    fn cyclic_nine_maximals() {
        let g = make_group_default(vec![perm_el(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]])]).unwrap();
        assert_eq!(frattini_pgroup(&g, 3).unwrap().order().unwrap(), 3);
        let maximals = maximal_subgroups_pgroup(&g, 3).unwrap();
        assert_eq!(maximals.len(), 1);
        assert_eq!(maximals[0].order().unwrap(), 3);
        assert_eq!(agemo1(&g, 3).unwrap().order().unwrap(), 3);
        assert_eq!(omega1(&g, 3).unwrap().order().unwrap(), 3);
    }

    #[test]
    fn elementary_abelian_maximals() {
        let g = make_group_default(vec![perm_el(6, &[&[0, 1, 2]]), perm_el(6, &[&[3, 4, 5]])])
            .unwrap();
        assert!(is_elementary_abelian(&g, 3).unwrap());
        assert_eq!(frattini_pgroup(&g, 3).unwrap().order().unwrap(), 1);
        let maximals = maximal_subgroups_pgroup(&g, 3).unwrap();
        assert_eq!(maximals.len(), 4);
    }

    #[test]
    fn count_orders_dividing() {
        let g = s4();
        assert_eq!(count_elements_order_dividing(&g, 1).unwrap(), 1);
        assert_eq!(count_elements_order_dividing(&g, 2).unwrap(), 10);
        assert_eq!(count_elements_order_dividing(&g, 4).unwrap(), 16);
        assert_eq!(count_elements_order_dividing(&g, 12).unwrap(), 24);
        assert_eq!(count_elements_order_dividing(&g, 6).unwrap(), 18);
    }

    #[test]
    fn exponent_full_vs_witness() {
        let g = s4();
        let full = exponent(&g, ExponentMode::Full).unwrap();
        assert_eq!(full.value, 12);
        assert!(full.exact);
        assert_eq!(full.witness.as_ref().unwrap().order(), 4); // max order in S_4

        let probe = exponent(&g, ExponentMode::Witness { seed: 7 }).unwrap();
        assert!(!probe.exact);
        assert!(probe.value <= 12 && full.value % probe.value == 0);
        // Deterministic for a fixed seed.
        let probe2 = exponent(&g, ExponentMode::Witness { seed: 7 }).unwrap();
        assert_eq!(probe.value, probe2.value);
    }

    #[test]
    fn heisenberg_exponent_is_three() {
        let g = heis27();
        let full = exponent(&g, ExponentMode::Full).unwrap();
        assert_eq!(full.value, 3);
    }

    #[test]
    fn frattini_rejects_non_p_group() {
        assert!(frattini_pgroup(&s4(), 3).is_err());
    }
}
