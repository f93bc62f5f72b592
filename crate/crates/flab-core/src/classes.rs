//! Conjugacy classes, centralizers, normalizers.
//!
//! Everything here works on the full element store (desk scale, capped).
//! Class representatives are the lexicographically smallest members of their
//! classes, and the class list is sorted by representative, so all outputs
//! are deterministic.

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupHandle};
use std::collections::HashMap;

pub struct ClassPartition {
    reps: Vec<GroupElement>,
    members: Vec<Vec<GroupElement>>,
    class_of: HashMap<GroupElement, u32>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Lex-min representative of each class, in ascending order; the class of
    /// the identity is always first for permutation groups.
    pub fn reps(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.len() as u64).collect()
    }

    pub fn members(&self, class: usize) -> &[GroupElement] {
        &self.members[class]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        self.class_of.get(g).copied()
    }
}

/// Partition the group into conjugacy classes by orbiting each unassigned
/// element under conjugation by the generators.
pub fn compute_classes(g: &FiniteGroup) -> Result<ClassPartition> {
    let store = g.elements()?;
    let gens = g.generators();
    let mut class_of: HashMap<GroupElement, u32> = HashMap::with_capacity(store.len());
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for x in store.elements() {
        if class_of.contains_key(x) {
            continue;
        }
        // x is the lex-least unassigned element, hence the least in its class.
        let idx = reps.len() as u32;
        let mut orbit = vec![x.clone()];
        class_of.insert(x.clone(), idx);
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head].clone();
            head += 1;
            for s in gens {
                let z = y.conjugate_by(s);
                if !class_of.contains_key(&z) {
                    class_of.insert(z.clone(), idx);
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        reps.push(x.clone());
        members.push(orbit);
    }
    Ok(ClassPartition { reps, members, class_of })
}

/// C_G(x): elements of G commuting with x, by exact scan.
pub fn centralizer(g: &FiniteGroup, x: &GroupElement) -> Result<SubgroupHandle> {
    if !g.contains(x)? {
        return Err(Error::NotAMember("centralizer input".into()));
    }
    let store = g.elements()?;
    let members: Vec<GroupElement> =
        store.elements().iter().filter(|e| e.commutes_with(x)).cloned().collect();
    SubgroupHandle::from_elements(g, &members)
}

/// N_G(H): elements of G conjugating H into itself, by exact scan with early
/// pruning (first generator of H that escapes H rejects the candidate).
pub fn normalizer(g: &FiniteGroup, h: &FiniteGroup) -> Result<SubgroupHandle> {
    for (i, hg) in h.generators().iter().enumerate() {
        if !g.contains(hg)? {
            return Err(Error::NotASubgroup(format!(
                "generator {i} of the candidate subgroup is outside the ambient group"
            )));
        }
    }
    let store = g.elements()?;
    let h_store = h.elements()?;
    let mut members = Vec::new();
    'cands: for e in store.elements() {
        for hg in h.generators() {
            if !h_store.contains(&hg.conjugate_by(e)) {
                continue 'cands;
            }
        }
        members.push(e.clone());
    }
    SubgroupHandle::from_elements(g, &members)
}
