//! Element fusion induced on a subgroup by ambient conjugation.
//!
//! Two elements of P fuse when some element of the ambient group G conjugates
//! one to the other. The partition of P \ {1} into fusion classes is computed
//! by walking the full G-conjugation orbit of each still-unassigned element of
//! P (a breadth-first search under the generators of G) and collecting the
//! members of P it contains; G itself is never enumerated. The fusion system
//! is transitive exactly when a single class remains.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::classes::normalizer;
use crate::decompose::direct_decomposition;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::gf::factorize;
use crate::group::{FiniteGroup, SubgroupHandle};
use crate::structure::{
    center, derived_subgroup, exponent, is_elementary_abelian, maximal_subgroups_pgroup,
    ExponentMode,
};

/// Partition of P \ {1} under ambient conjugation. Classes are ordered by
/// their lexicographically least member, which is also the stored
/// representative (first member of each sorted class).
#[derive(Clone, Debug)]
pub struct FusionPartition {
    classes: Vec<Vec<GroupElement>>,
}

impl FusionPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<GroupElement>] {
        &self.classes
    }

    pub fn reps(&self) -> impl Iterator<Item = &GroupElement> {
        self.classes.iter().map(|c| &c[0])
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.len() as u64).collect()
    }
}

/// Fusion classes of P \ {1} under conjugation by the parent group of `sub`.
pub fn fusion_classes(sub: &SubgroupHandle) -> Result<FusionPartition> {
    let ambient = sub.parent();
    let gens = ambient.generators();
    let cap = ambient.cap();
    let identity = ambient.identity().clone();
    let store = sub.group().elements()?;
    let n = store.len();

    let mut assigned = vec![false; n];
    let mut classes: Vec<Vec<GroupElement>> = Vec::new();
    for i in 0..n {
        let x = &store.elements()[i];
        if *x == identity || assigned[i] {
            continue;
        }
        // Orbit of x under G-conjugation. Because the store is sorted and we
        // start from the least unassigned element, x is the lex-least member
        // of its class, so classes come out ordered by representative.
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut queue: VecDeque<GroupElement> = VecDeque::new();
        seen.insert(x.clone());
        queue.push_back(x.clone());
        let mut members: Vec<GroupElement> = Vec::new();
        while let Some(y) = queue.pop_front() {
            if let Some(pos) = store.position(&y) {
                members.push(y.clone());
                assigned[pos as usize] = true;
            }
            for s in gens {
                let z = y.conjugate_by(s);
                if !seen.contains(&z) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::cap(cap, "ambient conjugation orbit"));
                    }
                    seen.insert(z.clone());
                    queue.push_back(z);
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    Ok(FusionPartition { classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

/// Necessary conditions for a p-group to support a transitive fusion system:
/// (a) exponent at most p; for nonabelian P, (b) Z(P) inside P' and (c)
/// indecomposability; (d) the conjectured target shape, elementary abelian or
/// extraspecial of order p^3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub p: u64,
    pub order: u64,
    pub abelian: bool,
    pub exponent_at_most_p: Verdict,
    pub center_in_derived: Verdict,
    pub indecomposable: Verdict,
    pub target_shape: Verdict,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        [
            self.exponent_at_most_p,
            self.center_in_derived,
            self.indecomposable,
            self.target_shape,
        ]
        .iter()
        .all(|v| *v != Verdict::Fail)
    }
}

pub fn defining_prime(order: u64) -> Result<u64> {
    let factors = factorize(order);
    if factors.len() != 1 {
        return Err(Error::NotPGroup { p: factors.first().map(|f| f.0).unwrap_or(0), order });
    }
    Ok(factors[0].0)
}

/// Is P extraspecial of order p^3 (center = derived = Frattini of order p)?
pub fn is_extraspecial_p3(group: &FiniteGroup, p: u64) -> Result<bool> {
    if group.order()? != p * p * p || group.is_abelian() {
        return Ok(false);
    }
    let z = center(group)?;
    let d = derived_subgroup(group)?;
    Ok(z.order()? == p
        && z.group().elements()?.elements() == d.group().elements()?.elements())
}

pub fn transitive_necessary_conditions(group: &FiniteGroup) -> Result<ConditionReport> {
    let order = group.order()?;
    let p = defining_prime(order)?;
    let abelian = group.is_abelian();

    let exp = exponent(group, ExponentMode::Full)?;
    let exponent_at_most_p = if exp.value <= p { Verdict::Pass } else { Verdict::Fail };

    let (center_in_derived, indecomposable) = if abelian {
        (Verdict::NotApplicable, Verdict::NotApplicable)
    } else {
        let z = center(group)?;
        let d = derived_subgroup(group)?;
        let d_store = d.group().elements()?;
        let contained =
            z.group().elements()?.elements().iter().all(|e| d_store.contains(e));
        let one_factor = direct_decomposition(group)?.len() == 1;
        (
            if contained { Verdict::Pass } else { Verdict::Fail },
            if one_factor { Verdict::Pass } else { Verdict::Fail },
        )
    };

    let shape = if abelian {
        is_elementary_abelian(group, p)?
    } else {
        is_extraspecial_p3(group, p)?
    };
    let target_shape = if shape { Verdict::Pass } else { Verdict::Fail };

    Ok(ConditionReport {
        p,
        order,
        abelian,
        exponent_at_most_p,
        center_in_derived,
        indecomposable,
        target_shape,
    })
}

pub const FUSION_REPORT_SCHEMA: &str = "flab/fusion-report/v1";

/// Transitivity verdict for the fusion system induced on P by its parent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionReport {
    pub schema: String,
    pub transitive: bool,
    /// None when the verdict was short-circuited by the exponent test and the
    /// classes were never computed.
    pub class_count: Option<usize>,
    /// Lex-least representative per class, in class order.
    pub witnesses: Vec<String>,
    /// True when |P| equals the p-part of the ambient order.
    pub is_sylow: bool,
    /// Set when exponent(P) > p decided non-transitivity on its own
    /// (conjugation preserves element order).
    pub short_circuit_exponent: Option<u64>,
    pub conditions: ConditionReport,
}

pub fn is_transitive_fusion(sub: &SubgroupHandle) -> Result<FusionReport> {
    let conditions = transitive_necessary_conditions(sub.group())?;
    let p = conditions.p;

    let ambient_order = sub.parent().order()?;
    let mut p_part = 1u64;
    let mut rest = ambient_order;
    while rest % p == 0 {
        rest /= p;
        p_part *= p;
    }
    let is_sylow = conditions.order == p_part;

    let exp = exponent(sub.group(), ExponentMode::Full)?;
    if exp.value > p {
        return Ok(FusionReport {
            schema: FUSION_REPORT_SCHEMA.into(),
            transitive: false,
            class_count: None,
            witnesses: Vec::new(),
            is_sylow,
            short_circuit_exponent: Some(exp.value),
            conditions,
        });
    }

    let partition = fusion_classes(sub)?;
    Ok(FusionReport {
        schema: FUSION_REPORT_SCHEMA.into(),
        transitive: partition.len() == 1,
        class_count: Some(partition.len()),
        witnesses: partition.reps().map(|r| r.display_compact()).collect(),
        is_sylow,
        short_circuit_exponent: None,
        conditions,
    })
}

/// Orbits of N_G(P) acting by conjugation on Z(P) \ {1}. For P Sylow in G
/// this is the action of the induced automorphism group on the center.
pub fn aut_center_orbits(sub: &SubgroupHandle) -> Result<Vec<Vec<GroupElement>>> {
    let ambient = sub.parent();
    let identity = ambient.identity().clone();
    let norm = normalizer(ambient, sub.group())?;
    let norm_gens = norm.group().generators().to_vec();
    let z = center(sub.group())?;
    let z_elems: Vec<GroupElement> = z
        .group()
        .elements()?
        .elements()
        .iter()
        .filter(|e| **e != identity)
        .cloned()
        .collect();

    let mut assigned = vec![false; z_elems.len()];
    let mut orbits: Vec<Vec<GroupElement>> = Vec::new();
    for i in 0..z_elems.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![z_elems[i].clone()];
        assigned[i] = true;
        let mut frontier = vec![z_elems[i].clone()];
        while let Some(y) = frontier.pop() {
            for s in &norm_gens {
                let img = y.conjugate_by(s);
                // The center is characteristic in P, so normalizer conjugation
                // stays inside it.
                let pos = z_elems
                    .binary_search(&img)
                    .map_err(|_| {
                        Error::InternalCheckFailed(
                            "normalizer conjugation left the center".into(),
                        )
                    })?;
                if !assigned[pos] {
                    assigned[pos] = true;
                    members.push(img.clone());
                    frontier.push(img);
                }
            }
        }
        members.sort();
        orbits.push(members);
    }
    Ok(orbits)
}

/// First abelian maximal subgroup of P, if any (the index-p witness scan).
pub fn abelian_index_p_scan(group: &FiniteGroup, p: u64) -> Result<Option<SubgroupHandle>> {
    for maximal in maximal_subgroups_pgroup(group, p)? {
        if maximal.group().is_abelian() {
            return Ok(Some(maximal));
        }
    }
    Ok(None)
}
