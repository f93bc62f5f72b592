//! Sylow p-subgroups by normalizer growth.
//!
//! A p-subgroup P < G that is not yet Sylow has p dividing |N_G(P)/P|, so
//! N_G(P) contains a p-element outside P; adjoining it grows P by a factor
//! of at least p. Seeding tries a few random store picks for an element of
//! order divisible by p, then falls back to a lexicographic scan, so results
//! are reproducible from the recorded seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::normalizer;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::{close_under_products, FiniteGroup, SubgroupHandle};

/// How many random store picks to try before the deterministic scan.
const SEED_ATTEMPTS: usize = 64;

#[derive(Clone, Debug)]
pub struct SylowResult {
    pub subgroup: SubgroupHandle,
    /// RNG seed used for the initial p-element pick.
    pub seed: u64,
}

/// The p-part of g: with ord(g) = p^a * m and gcd(m, p) = 1, returns g^m.
fn p_part(g: &GroupElement, p: u64) -> GroupElement {
    let mut m = g.order();
    while m % p == 0 {
        m /= p;
    }
    g.pow(m as i64)
}

/// A Sylow p-subgroup of G with the default seed 0.
pub fn sylow_p(g: &FiniteGroup, p: u64) -> Result<SubgroupHandle> {
    Ok(sylow_p_seeded(g, p, 0)?.subgroup)
}

/// A Sylow p-subgroup of G: a subgroup of order equal to the p-part of |G|.
pub fn sylow_p_seeded(g: &FiniteGroup, p: u64, seed: u64) -> Result<SylowResult> {
    let order = g.order()?;
    if order % p != 0 {
        return Err(Error::PrimeDoesNotDivide {
            p,
            value: order,
            context: "sylow subgroup construction".into(),
        });
    }
    let mut target = 1u64;
    let mut rest = order;
    while rest % p == 0 {
        rest /= p;
        target *= p;
    }

    let store = g.elements()?;
    let identity = g.identity().clone();

    // Seed element: random picks first, lexicographic scan as fallback.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seed_elem = None;
    for _ in 0..SEED_ATTEMPTS {
        let e = &store.elements()[rng.random_range(0..store.len())];
        if e.order() % p == 0 {
            seed_elem = Some(p_part(e, p));
            break;
        }
    }
    if seed_elem.is_none() {
        for e in store.elements() {
            if e.order() % p == 0 {
                seed_elem = Some(p_part(e, p));
                break;
            }
        }
    }
    // p | |G| guarantees an element of order p exists, so the scan found one.
    let seed_elem = seed_elem.ok_or_else(|| {
        Error::InternalCheckFailed("no element of order divisible by p in a group p divides".into())
    })?;

    let mut gens = vec![seed_elem];
    let mut current = close_under_products(&gens, &identity, g.cap())?;

    while (current.len() as u64) < target {
        let handle = SubgroupHandle::from_elements(g, &current)?;
        let norm = normalizer(g, handle.group())?;
        let norm_store = norm.group().elements()?;
        let mut grown = None;
        for e in norm_store.elements() {
            let h = p_part(e, p);
            if h != identity && current.binary_search(&h).is_err() {
                grown = Some(h);
                break;
            }
        }
        let h = grown.ok_or_else(|| {
            Error::InternalCheckFailed(
                "sylow growth stalled: normalizer holds no p-element outside the current subgroup"
                    .into(),
            )
        })?;
        gens = handle.group().generators().to_vec();
        gens.push(h);
        current = close_under_products(&gens, &identity, g.cap())?;
    }

    if current.len() as u64 != target {
        return Err(Error::InternalCheckFailed(format!(
            "sylow growth overshot: reached {} elements, expected {}",
            current.len(),
            target
        )));
    }
    Ok(SylowResult { subgroup: SubgroupHandle::from_elements(g, &current)?, seed })
}
