//! Finite groups given by generators, with lazily built write-once caches.
//!
//! A group is frozen after construction: operations fill caches (order,
//! element store, stabilizer chain, class partition) but never mutate the
//! generators. `FiniteGroup` is a cheap handle (`Arc` inside), so subgroup
//! handles and reports can share it freely; `OnceLock` makes concurrent
//! readers safe.
//!
//! Orders are computed from the stabilizer chain for permutation groups and
//! by full enumeration (bounded by `cap`) for matrix groups. Exceeding the
//! cap is a loud `CapExceeded` error, never silent truncation.

use crate::chain::StabChain;
use crate::classes::{self, ClassPartition};
use crate::element::{GroupElement, Kind};
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

/// Default bound on full enumerations.
pub const DEFAULT_CAP: u64 = 5_000_000;

pub struct ElementStore {
    sorted: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
}

impl std::fmt::Debug for ElementStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElementStore({} elements)", self.sorted.len())
    }
}

impl ElementStore {
    fn from_sorted(sorted: Vec<GroupElement>) -> ElementStore {
        let index = sorted.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        ElementStore { sorted, index }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.sorted
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).copied()
    }
}

struct Inner {
    gens: Vec<GroupElement>,
    identity: GroupElement,
    cap: u64,
    store: OnceLock<Result<ElementStore>>,
    chain: OnceLock<StabChain>,
    order: OnceLock<Result<u64>>,
    classes: OnceLock<Result<ClassPartition>>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({} gens, kind {:?})", self.inner.gens.len(), self.kind())
    }
}

/// Build a group from a nonempty, kind-consistent generator list.
pub fn make_group(gens: Vec<GroupElement>, cap: u64) -> Result<FiniteGroup> {
    let first = gens.first().ok_or_else(|| {
        Error::IncompatibleGenerators("generator list is empty".into())
    })?;
    for (i, g) in gens.iter().enumerate() {
        if !first.compatible(g) {
            return Err(Error::IncompatibleGenerators(format!(
                "generator {i} does not act on the same set as generator 0"
            )));
        }
        if let GroupElement::Matrix(m) = g {
            if !m.is_invertible() {
                return Err(Error::SingularMatrix(format!("generator {i} is singular")));
            }
        }
    }
    let identity = first.identity_like();
    Ok(FiniteGroup {
        inner: Arc::new(Inner {
            identity,
            gens,
            cap,
            store: OnceLock::new(),
            chain: OnceLock::new(),
            order: OnceLock::new(),
            classes: OnceLock::new(),
        }),
    })
}

pub fn make_group_default(gens: Vec<GroupElement>) -> Result<FiniteGroup> {
    make_group(gens, DEFAULT_CAP)
}

impl FiniteGroup {
    pub fn generators(&self) -> &[GroupElement] {
        &self.inner.gens
    }

    pub fn identity(&self) -> &GroupElement {
        &self.inner.identity
    }

    pub fn cap(&self) -> u64 {
        self.inner.cap
    }

    pub fn kind(&self) -> Kind {
        self.inner.identity.kind()
    }

    /// Degree for permutation groups, dimension for matrix groups.
    pub fn shape(&self) -> usize {
        match &self.inner.identity {
            GroupElement::Perm(p) => p.degree(),
            GroupElement::Matrix(m) => m.dim(),
        }
    }

    fn perm_gens(&self) -> Vec<Perm> {
        self.inner
            .gens
            .iter()
            .map(|g| g.as_perm().expect("kind checked").clone())
            .collect()
    }

    /// Stabilizer chain (permutation groups only).
    pub fn stab_chain(&self) -> Option<&StabChain> {
        if self.kind() != Kind::Perm {
            return None;
        }
        Some(
            self.inner
                .chain
                .get_or_init(|| StabChain::build(&self.perm_gens(), self.shape())),
        )
    }

    /// |G|. Chain-based for permutation groups (no cap), enumeration-based
    /// (bounded by cap) for matrix groups.
    pub fn order(&self) -> Result<u64> {
        self.inner
            .order
            .get_or_init(|| match self.kind() {
                Kind::Perm => self.stab_chain().expect("perm kind").order(),
                Kind::Matrix => self.elements().map(|s| s.len() as u64),
            })
            .clone()
    }

    /// Full element store, sorted lexicographically. Errors with CapExceeded
    /// if the group has more than `cap` elements.
    pub fn elements(&self) -> Result<&ElementStore> {
        self.inner
            .store
            .get_or_init(|| {
                close_under_products(&self.inner.gens, &self.inner.identity, self.inner.cap)
                    .map(ElementStore::from_sorted)
            })
            .as_ref()
            .map_err(Error::clone)
    }

    /// Membership test: sifting for permutation groups, store lookup for
    /// matrix groups.
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if !self.inner.identity.compatible(g) {
            return Ok(false);
        }
        match self.kind() {
            Kind::Perm => {
                let p = g.as_perm().expect("kind checked");
                Ok(self.stab_chain().expect("perm kind").contains(p))
            }
            Kind::Matrix => Ok(self.elements()?.contains(g)),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.inner.gens;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Is |G| a power of p? Returns the exponent e with |G| = p^e.
    pub fn p_group_exponent(&self, p: u64) -> Result<u32> {
        let mut n = self.order()?;
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if n != 1 {
            return Err(Error::NotPGroup { p, order: self.order()? });
        }
        Ok(e)
    }

    pub fn conjugacy_classes(&self) -> Result<&ClassPartition> {
        self.inner
            .classes
            .get_or_init(|| classes::compute_classes(self))
            .as_ref()
            .map_err(Error::clone)
    }
}

/// Closure of the generated subgroup, as a sorted element list.
/// The identity is always included; errors with CapExceeded past `cap`.
pub fn close_under_products(
    gens: &[GroupElement],
    identity: &GroupElement,
    cap: u64,
) -> Result<Vec<GroupElement>> {
    match close_under_products_bounded(gens, identity, cap) {
        Some(v) => Ok(v),
        None => Err(Error::cap(cap, "subgroup closure")),
    }
}

/// As `close_under_products`, but returns None past the bound instead of an
/// error — used by searches that probe many candidate subgroups.
pub fn close_under_products_bounded(
    gens: &[GroupElement],
    identity: &GroupElement,
    bound: u64,
) -> Option<Vec<GroupElement>> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut queue: Vec<GroupElement> = Vec::new();
    seen.insert(identity.clone());
    queue.push(identity.clone());
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > bound {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    Some(queue)
}

/// A certified subgroup: every generator passed the parent's membership test
/// at construction. Carries both the parent and the generated group.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: FiniteGroup,
    group: FiniteGroup,
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubgroupHandle({} gens)", self.group.generators().len())
    }
}

impl SubgroupHandle {
    pub fn new(parent: &FiniteGroup, gens: Vec<GroupElement>) -> Result<SubgroupHandle> {
        for (i, g) in gens.iter().enumerate() {
            if !parent.contains(g)? {
                return Err(Error::NotASubgroup(format!(
                    "generator {i} is not a member of the parent group"
                )));
            }
        }
        let gens = if gens.is_empty() { vec![parent.identity().clone()] } else { gens };
        let group = make_group(gens, parent.cap())?;
        Ok(SubgroupHandle { parent: parent.clone(), group })
    }

    /// Build from an explicit element list (must be closed; not re-verified
    /// beyond membership of the extracted generators). A small generating
    /// set is extracted greedily in lexicographic order.
    pub fn from_elements(parent: &FiniteGroup, elements: &[GroupElement]) -> Result<SubgroupHandle> {
        let mut sorted: Vec<GroupElement> = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let gens = greedy_generators(&sorted, parent.identity(), parent.cap())?;
        SubgroupHandle::new(parent, gens)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> Result<u64> {
        self.group.order()
    }
}

/// Greedy small generating set for a subgroup given by its element list.
pub fn greedy_generators(
    sorted_elements: &[GroupElement],
    identity: &GroupElement,
    cap: u64,
) -> Result<Vec<GroupElement>> {
    let mut gens: Vec<GroupElement> = Vec::new();
    let mut closed: HashSet<GroupElement> = HashSet::new();
    closed.insert(identity.clone());
    for e in sorted_elements {
        if !closed.contains(e) {
            gens.push(e.clone());
            let closure = close_under_products(&gens, identity, cap)?;
            closed = closure.into_iter().collect();
            if closed.len() == sorted_elements.len() {
                break;
            }
        }
    }
    if gens.is_empty() {
        gens.push(identity.clone());
    }
    Ok(gens)
}
