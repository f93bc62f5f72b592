//! Direct-product decomposition of finite p-groups.
//!
//! Abelian groups are decomposed exactly by basis peeling: take a
//! lexicographically least element of maximal order, split it off (adjusting
//! lifts so their orders match their quotient orders), and recurse on the
//! quotient in its regular representation.
//!
//! Nonabelian groups are decomposed by a complete bounded search. Any direct
//! factor N is normally generated by a minimal generating set, and
//! d(N) <= log_p |N| <= log_p(|G|/p), so N is the closure of a union of at
//! most that many conjugacy classes. We enumerate class subsets in
//! (cardinality, index-lex) order, close each union (aborting past |G|/p),
//! and test the closure N exactly: with C = C_G(N) and Z the intersection
//! of N and C, N is a direct factor iff |N||C| = |G||Z|, Z meets C'
//! trivially, and the image of Z in the abelian quotient C/C' has a
//! complement there (found by a deterministic greedy-chain DFS); the
//! complement's preimage is a direct complement of N.
//!
//! Every search is budgeted; exhausting a budget is a loud `CapExceeded`,
//! never a silent "indecomposable".

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::gf::{factorize, prime_power};
use crate::group::{close_under_products_bounded, make_group, FiniteGroup, SubgroupHandle};
use crate::structure::{derived_subgroup, regular_quotient};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug)]
pub struct DecomposeBudget {
    /// Closure attempts across the class-subset enumeration.
    pub closure_attempts: u64,
    /// Node visits in the abelian complement search.
    pub complement_nodes: u64,
}

impl Default for DecomposeBudget {
    fn default() -> Self {
        DecomposeBudget { closure_attempts: 50_000, complement_nodes: 100_000 }
    }
}

/// Decompose a p-group into internally indecomposable direct factors,
/// sorted by descending order then by generator list. The trivial group
/// yields an empty list; an indecomposable group yields itself.
pub fn direct_decomposition(g: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    direct_decomposition_budgeted(g, DecomposeBudget::default())
}

pub fn direct_decomposition_budgeted(
    g: &FiniteGroup,
    budget: DecomposeBudget,
) -> Result<Vec<FiniteGroup>> {
    let order = g.order()?;
    if order == 1 {
        return Ok(Vec::new());
    }
    let (p, _) = prime_power(order)
        .ok_or_else(|| Error::NotPGroup { p: factorize(order)[0].0, order })?;
    let mut factors = if g.is_abelian() {
        abelian_decomposition(g, p)?
    } else {
        nonabelian_decomposition(g, p, budget)?
    };
    factors.sort_by(|a, b| {
        let (oa, ob) = (a.order().unwrap_or(0), b.order().unwrap_or(0));
        ob.cmp(&oa).then_with(|| a.generators().cmp(b.generators()))
    });
    let product: u128 = factors.iter().map(|f| f.order().unwrap_or(0) as u128).product();
    if product != order as u128 {
        return Err(Error::InternalCheckFailed(
            "factor orders do not multiply to the group order".into(),
        ));
    }
    Ok(factors)
}

/// Orders of the cyclic factors of an abelian p-group, descending.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>> {
    let order = g.order()?;
    if order == 1 {
        return Ok(Vec::new());
    }
    let (p, _) = prime_power(order)
        .ok_or_else(|| Error::NotPGroup { p: factorize(order)[0].0, order })?;
    if !g.is_abelian() {
        return Err(Error::InternalCheckFailed(
            "abelian invariants requested for a nonabelian group".into(),
        ));
    }
    let mut inv: Vec<u64> = abelian_basis(g, p)?.iter().map(|b| b.order()).collect();
    inv.sort_unstable_by(|a, b| b.cmp(a));
    Ok(inv)
}

fn abelian_decomposition(g: &FiniteGroup, p: u64) -> Result<Vec<FiniteGroup>> {
    let basis = abelian_basis(g, p)?;
    basis.into_iter().map(|b| make_group(vec![b], g.cap())).collect()
}

/// Independent generators of an abelian p-group: the product of the cyclic
/// groups they generate is direct and equals G.
fn abelian_basis(g: &FiniteGroup, p: u64) -> Result<Vec<GroupElement>> {
    let store = g.elements()?;
    let order = g.order()?;
    if order == 1 {
        return Ok(Vec::new());
    }
    // Lex-least element of maximal order.
    let mut best: Option<(&GroupElement, u64)> = None;
    for e in store.elements() {
        let o = e.order();
        if best.map_or(true, |(_, bo)| o > bo) {
            best = Some((e, o));
        }
    }
    let (x, x_order) = best.expect("nontrivial group");
    let x = x.clone();
    if x_order == order {
        return Ok(vec![x]); // cyclic
    }

    // Powers of x, with a code table to solve x^s = w.
    let mut x_powers: Vec<GroupElement> = Vec::with_capacity(x_order as usize);
    let mut exponent_of: HashMap<GroupElement, u64> = HashMap::new();
    let mut acc = g.identity().clone();
    for s in 0..x_order {
        exponent_of.insert(acc.clone(), s);
        x_powers.push(acc.clone());
        acc = acc.mul(&x);
    }
    x_powers.sort_unstable();

    let quotient = regular_quotient(g, &x_powers)?;
    let q_basis = abelian_basis(&quotient.group, p)?;

    let mut basis = vec![x.clone()];
    for qb in &q_basis {
        let quotient_order = qb.order();
        let lift = quotient.rep_of(qb, g.identity()).clone();
        // lift^quotient_order lands in <x>; divide that power out of the lift
        // so its order drops to its quotient order.
        let w = lift.pow(quotient_order as i64);
        let s = *exponent_of.get(&w).ok_or_else(|| {
            Error::InternalCheckFailed("lift power escaped the peeled cyclic factor".into())
        })?;
        if s % quotient_order != 0 {
            return Err(Error::InternalCheckFailed(
                "lift power is not divisible by the quotient order".into(),
            ));
        }
        let adjusted = lift.mul(&x.pow(-((s / quotient_order) as i64)));
        if adjusted.order() != quotient_order {
            return Err(Error::InternalCheckFailed(
                "adjusted lift does not match its quotient order".into(),
            ));
        }
        basis.push(adjusted);
    }
    let product: u128 = basis.iter().map(|b| b.order() as u128).product();
    if product != order as u128 {
        return Err(Error::InternalCheckFailed(
            "basis orders do not multiply to the group order".into(),
        ));
    }
    Ok(basis)
}

fn nonabelian_decomposition(
    g: &FiniteGroup,
    p: u64,
    budget: DecomposeBudget,
) -> Result<Vec<FiniteGroup>> {
    let order = g.order()?;
    let classes = g.conjugacy_classes()?;
    let identity = g.identity().clone();
    // Class indices other than the identity's, in rep order.
    let candidates: Vec<usize> = (0..classes.len())
        .filter(|&i| classes.reps()[i] != identity)
        .collect();
    let sizes = classes.sizes();
    let bound = order / p;
    // Any proper direct factor is the closure of at most e-1 classes,
    // |G| = p^e.
    let mut t_complete = 0u32;
    let mut rest = order;
    while rest > p {
        rest /= p;
        t_complete += 1;
    }
    let t_complete = (t_complete as usize).min(candidates.len());

    let mut closures_left = budget.closure_attempts;
    for cardinality in 1..=t_complete {
        let mut subset: Vec<usize> = (0..cardinality).collect();
        loop {
            let size_sum: u64 = subset.iter().map(|&i| sizes[candidates[i]]).sum();
            if size_sum + 1 <= bound {
                if closures_left == 0 {
                    return Err(Error::cap(
                        budget.closure_attempts,
                        "closure attempts in direct factor search",
                    ));
                }
                closures_left -= 1;
                let mut union: Vec<GroupElement> = Vec::with_capacity(size_sum as usize);
                for &i in &subset {
                    union.extend_from_slice(classes.members(candidates[i]));
                }
                if let Some(n_elements) =
                    close_under_products_bounded(&union, &identity, bound)
                {
                    if n_elements.len() > 1 {
                        if let Some((n_group, m_group)) =
                            try_split(g, &n_elements, &union, budget)?
                        {
                            let mut factors =
                                direct_decomposition_budgeted(&n_group, budget)?;
                            factors
                                .extend(direct_decomposition_budgeted(&m_group, budget)?);
                            return Ok(factors);
                        }
                    }
                }
            }
            if !next_combination(&mut subset, candidates.len()) {
                break;
            }
        }
    }
    // Exhaustive search found no splitting: certified indecomposable.
    Ok(vec![g.clone()])
}

/// Advance `subset` (strictly increasing indices) to the next combination of
/// its size drawn from 0..n, in lexicographic order. False when exhausted.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact direct-factor test for N = <union> (closure already computed).
/// Returns the factor and a complement when N is a direct factor.
fn try_split(
    g: &FiniteGroup,
    n_elements: &[GroupElement],
    n_gens: &[GroupElement],
    budget: DecomposeBudget,
) -> Result<Option<(FiniteGroup, FiniteGroup)>> {
    let order = g.order()?;
    let store = g.elements()?;
    let n_size = n_elements.len() as u64;

    // C = C_G(N): centralizing the generating union centralizes N.
    let c_members: Vec<GroupElement> = store
        .elements()
        .iter()
        .filter(|e| n_gens.iter().all(|u| e.commutes_with(u)))
        .cloned()
        .collect();

    // Z = Z(N) = N âˆ© C (both sorted).
    let z_members: Vec<GroupElement> = intersect_sorted(n_elements, &c_members);

    // NC = G test: |N||C| = |G||Z|.
    if n_size as u128 * c_members.len() as u128 != order as u128 * z_members.len() as u128 {
        return Ok(None);
    }

    let c_handle = SubgroupHandle::from_elements(g, &c_members)?;
    let c_group = c_handle.group().clone();
    let c_derived = derived_subgroup(&c_group)?;
    let c_derived_elements = c_derived.group().elements()?;

    // Z must meet C' trivially for a complement to exist.
    let z_meet =
        intersect_sorted(&z_members, c_derived_elements.elements());
    if z_meet.len() != 1 {
        return Ok(None);
    }

    // Work in the abelian quotient A = C/C'.
    let quotient = regular_quotient(&c_group, c_derived_elements.elements())?;
    let a_store = quotient.group.elements()?;
    // Z meets C' trivially, so Z embeds in A; a complement of its image has
    // order |A| / |Z|.
    let z_bar = subgroup_image(&quotient, &z_members, &c_group)?;
    if z_bar.len() != z_members.len() || a_store.len() % z_bar.len() != 0 {
        return Err(Error::InternalCheckFailed(
            "quotient image of the factor center has inconsistent size".into(),
        ));
    }
    let goal = (a_store.len() / z_bar.len()) as u64;

    let identity_bar = quotient.group.identity().clone();
    let mut nodes_left = budget.complement_nodes;
    let mut gens_chain: Vec<GroupElement> = Vec::new();
    let found = complement_dfs(
        a_store.elements(),
        &identity_bar,
        &z_bar,
        goal,
        &mut nodes_left,
        budget.complement_nodes,
        &mut gens_chain,
        &vec![identity_bar.clone()],
        0,
    )?;
    let m_bar = match found {
        Some(m) => m,
        None => return Ok(None),
    };

    // Lift the complement back: all c in C whose quotient image lies in M.
    let i0 = quotient.point_of(c_group.identity());
    let mut m_points: Vec<usize> = m_bar
        .iter()
        .map(|q| q.as_perm().expect("quotient perm").apply(i0))
        .collect();
    m_points.sort_unstable();
    let m_members: Vec<GroupElement> = c_members
        .iter()
        .filter(|c| m_points.binary_search(&quotient.point_of(c)).is_ok())
        .cloned()
        .collect();
    if n_size as u128 * m_members.len() as u128 != order as u128 {
        return Err(Error::InternalCheckFailed(
            "lifted complement has the wrong order".into(),
        ));
    }
    let n_group = SubgroupHandle::from_elements(g, n_elements)?.group().clone();
    let m_group = SubgroupHandle::from_elements(g, &m_members)?.group().clone();
    Ok(Some((n_group, m_group)))
}

/// Image of a subgroup (given by its sorted ambient elements) in a regular
/// quotient, as sorted quotient elements.
fn subgroup_image(
    quotient: &crate::structure::Quotient,
    members: &[GroupElement],
    ambient: &FiniteGroup,
) -> Result<Vec<GroupElement>> {
    let i0 = quotient.point_of(ambient.identity());
    let mut points: Vec<usize> = members.iter().map(|m| quotient.point_of(m)).collect();
    points.sort_unstable();
    points.dedup();
    let a_store = quotient.group.elements()?;
    let mut image: Vec<GroupElement> = a_store
        .elements()
        .iter()
        .filter(|q| {
            let p = q.as_perm().expect("quotient perm");
            points.binary_search(&p.apply(i0)).is_ok()
        })
        .cloned()
        .collect();
    image.sort_unstable();
    if image.len() != points.len() {
        return Err(Error::InternalCheckFailed(
            "subgroup image size does not match its coset count".into(),
        ));
    }
    Ok(image)
}

/// Deterministic DFS for a complement of `z_bar` in the abelian group given
/// by `a_sorted`: a subgroup of order `goal` meeting `z_bar` trivially.
///
/// Every subgroup has a unique greedy generating chain with strictly
/// increasing element indices (each generator is the least element outside
/// the span so far), so searching over increasing indices visits every
/// candidate subgroup along exactly one path; the intersection and
/// divisibility prunes never cut a path leading to a genuine complement.
#[allow(clippy::too_many_arguments)]
fn complement_dfs(
    a_sorted: &[GroupElement],
    identity: &GroupElement,
    z_bar: &[GroupElement],
    goal: u64,
    nodes_left: &mut u64,
    node_budget: u64,
    gens: &mut Vec<GroupElement>,
    closure: &[GroupElement],
    start: usize,
) -> Result<Option<Vec<GroupElement>>> {
    if closure.len() as u64 == goal {
        return Ok(Some(closure.to_vec()));
    }
    for idx in start..a_sorted.len() {
        let e = &a_sorted[idx];
        if closure.binary_search(e).is_ok() {
            continue;
        }
        if *nodes_left == 0 {
            return Err(Error::cap(node_budget, "node visits in complement search"));
        }
        *nodes_left -= 1;
        gens.push(e.clone());
        let extended = close_under_products_bounded(gens, identity, goal);
        let keep = match &extended {
            Some(v) => goal % v.len() as u64 == 0 && intersect_sorted(v, z_bar).len() == 1,
            None => false,
        };
        if keep {
            let found = complement_dfs(
                a_sorted,
                identity,
                z_bar,
                goal,
                nodes_left,
                node_budget,
                gens,
                extended.as_ref().expect("checked above"),
                idx + 1,
            )?;
            if found.is_some() {
                gens.pop();
                return Ok(found);
            }
        }
        gens.pop();
    }
    Ok(None)
}

fn intersect_sorted(a: &[GroupElement], b: &[GroupElement]) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        cyclic, direct_product, elementary_abelian, extraspecial_p3, iterated_wreath,
        q8_generators_sl2_3, wreath_cyclic,
    };
    use crate::group::{make_group_default, DEFAULT_CAP};

    fn orders(factors: &[FiniteGroup]) -> Vec<u64> {
        factors.iter().map(|f| f.order().unwrap()).collect()
    }

    #[test]
    fn cyclic_groups_are_indecomposable() {
        let g = cyclic(9, DEFAULT_CAP).unwrap();
        let f = direct_decomposition(&g).unwrap();
        assert_eq!(orders(&f), vec![9]);
        assert_eq!(abelian_invariants(&g).unwrap(), vec![9]);
    }

    #[test]
    fn elementary_abelian_splits_fully() {
        let g = elementary_abelian(3, 3, DEFAULT_CAP).unwrap();
        let f = direct_decomposition(&g).unwrap();
        assert_eq!(orders(&f), vec![3, 3, 3]);
        assert_eq!(abelian_invariants(&g).unwrap(), vec![3, 3, 3]);
    }

    #[test]
    fn mixed_abelian_invariants() {
        let a = cyclic(9, DEFAULT_CAP).unwrap();
        let b = cyclic(3, DEFAULT_CAP).unwrap();
        let g = direct_product(&[a, b], DEFAULT_CAP).unwrap();
        assert_eq!(abelian_invariants(&g).unwrap(), vec![9, 3]);
        let f = direct_decomposition(&g).unwrap();
        assert_eq!(orders(&f), vec![9, 3]);
    }

    #[test]
    fn extraspecial_is_indecomposable() {
        let g = extraspecial_p3(3, DEFAULT_CAP).unwrap();
        let f = direct_decomposition(&g).unwrap();
        assert_eq!(orders(&f), vec![27]);
        assert!(!f[0].is_abelian());
    }

    #[test]
    fn central_product_with_cyclic_splits() {
        let c3 = cyclic(3, DEFAULT_CAP).unwrap();
        let es = extraspecial_p3(3, DEFAULT_CAP).unwrap();
        let g = direct_product(&[c3, es], DEFAULT_CAP).unwrap();
        let f = direct_decomposition(&g).unwrap();
        assert_eq!(orders(&f), vec![27, 3]);
        assert!(!f[0].is_abelian());
        assert!(f[1].is_abelian());
    }

    #[test]
    fn wreath_is_indecomposable() {
        let w = iterated_wreath(3, 2, DEFAULT_CAP).unwrap();
        let f = direct_decomposition(&w).unwrap();
        assert_eq!(orders(&f), vec![81]);
    }

    #[test]
    fn dihedral_eight_is_indecomposable() {
        let d8 = wreath_cyclic(&cyclic(2, DEFAULT_CAP).unwrap(), 2, DEFAULT_CAP).unwrap();
        let f = direct_decomposition(&d8).unwrap();
        assert_eq!(orders(&f), vec![8]);
    }

    #[test]
    fn quaternion_matrix_group_is_indecomposable() {
        let (x, y) = q8_generators_sl2_3().unwrap();
        let q8 = make_group_default(vec![
            crate::element::GroupElement::Matrix(x),
            crate::element::GroupElement::Matrix(y),
        ])
        .unwrap();
        assert_eq!(q8.order().unwrap(), 8);
        let f = direct_decomposition(&q8).unwrap();
        assert_eq!(orders(&f), vec![8]);
    }

    #[test]
    fn double_wreath_splits_into_two_wreaths() {
        let w = iterated_wreath(3, 2, DEFAULT_CAP).unwrap();
        let g = direct_product(&[w.clone(), w], DEFAULT_CAP).unwrap();
        assert_eq!(g.order().unwrap(), 6561);
        let f = direct_decomposition(&g).unwrap();
        assert_eq!(orders(&f), vec![81, 81]);
        assert!(!f[0].is_abelian());
        assert!(!f[1].is_abelian());
    }

    #[test]
    fn non_p_group_is_rejected() {
        let g = make_group_default(vec![
            crate::element::GroupElement::Perm(
                crate::perm::Perm::from_cycles(4, &[vec![0, 1]], "t").unwrap(),
            ),
            crate::element::GroupElement::Perm(
                crate::perm::Perm::from_cycles(4, &[vec![0, 1, 2, 3]], "t").unwrap(),
            ),
        ])
        .unwrap();
        assert!(matches!(
            direct_decomposition(&g),
            Err(Error::NotPGroup { .. })
        ));
    }

    #[test]
    fn tiny_budget_fails_loudly() {
        let w = iterated_wreath(3, 2, DEFAULT_CAP).unwrap();
        let err = direct_decomposition_budgeted(
            &w,
            DecomposeBudget { closure_attempts: 5, complement_nodes: 100_000 },
        )
        .unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn trivial_group_has_no_factors() {
        let g = crate::construct::trivial(3, DEFAULT_CAP).unwrap();
        assert!(direct_decomposition(&g).unwrap().is_empty());
    }
}
