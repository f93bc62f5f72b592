//! Base and strong generating set (stabilizer chain) for permutation groups,
//! built with a deterministic Schreier–Sims procedure.
//!
//! Level i holds a base point b_i, the orbit of b_i under the group generated
//! by all generators assigned to levels >= i, and a transversal element
//! u_δ with u_δ(b_i) = δ for every orbit point δ. The group order is the
//! product of the orbit lengths, and membership is decided by sifting.

use crate::error::{Error, Result};
use crate::perm::Perm;

pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Level {
    point: u16,
    gens_here: Vec<Perm>,
    orbit: Vec<u16>,
    transversal: Vec<Option<Perm>>,
    /// Number of generators (union over levels >= this one) at the last full
    /// Schreier verification of this level; `usize::MAX` when never verified.
    verified_with: usize,
}

impl Level {
    fn new(point: u16, degree: usize) -> Level {
        Level {
            point,
            gens_here: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            verified_with: usize::MAX,
        }
    }
}

enum Sift {
    /// Sifted to the identity: the element is in the group.
    Member,
    /// Nonidentity residue that stabilizes the base points of all levels
    /// before `depth`; `depth` may equal the current number of levels.
    Residue(Perm, usize),
}

impl StabChain {
    pub fn build(gens: &[Perm], degree: usize) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in gens {
            chain.add_element(g.clone());
        }
        chain.verify_all();
        chain
    }

    fn union_gen_count(&self, from: usize) -> usize {
        self.levels[from..].iter().map(|l| l.gens_here.len()).sum()
    }

    /// Generators acting at level i: everything assigned at levels >= i.
    fn gens_at(&self, i: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        for l in &self.levels[i..] {
            out.extend(l.gens_here.iter().cloned());
        }
        out
    }

    fn sift(&self, mut g: Perm, from: usize) -> Sift {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let delta = g.apply(level.point as usize);
            match &level.transversal[delta] {
                Some(u) => g = u.inverse().compose(&g),
                None => return Sift::Residue(g, i),
            }
        }
        if g.is_identity() {
            Sift::Member
        } else {
            Sift::Residue(g, self.levels.len())
        }
    }

    /// Sift and, if a residue survives, install it as a strong generator.
    /// Returns true if the chain changed.
    fn add_element(&mut self, g: Perm) -> bool {
        self.add_sifted(g, 0)
    }

    fn recompute_orbit(&mut self, i: usize) {
        let gens = self.gens_at(i);
        let level = &mut self.levels[i];
        level.orbit.clear();
        level.transversal.iter_mut().for_each(|t| *t = None);
        level.orbit.push(level.point);
        level.transversal[level.point as usize] = Some(Perm::identity(self.degree));
        let mut head = 0;
        while head < level.orbit.len() {
            let gamma = level.orbit[head] as usize;
            head += 1;
            for s in &gens {
                let delta = s.apply(gamma);
                if level.transversal[delta].is_none() {
                    let u = s.compose(level.transversal[gamma].as_ref().unwrap());
                    level.transversal[delta] = Some(u);
                    level.orbit.push(delta as u16);
                }
            }
        }
    }

    /// Verify Schreier generators level by level until a fixpoint; every
    /// violation installs a new strong generator, which strictly grows the
    /// product of orbit lengths, so this terminates.
    fn verify_all(&mut self) {
        'outer: loop {
            for i in 0..self.levels.len() {
                let gen_count = self.union_gen_count(i);
                if self.levels[i].verified_with == gen_count {
                    continue;
                }
                let gens = self.gens_at(i);
                let orbit = self.levels[i].orbit.clone();
                for &gamma in &orbit {
                    let u_gamma = self.levels[i].transversal[gamma as usize]
                        .clone()
                        .expect("orbit points have transversal entries");
                    for s in &gens {
                        let delta = s.apply(gamma as usize);
                        let u_delta = self.levels[i].transversal[delta]
                            .clone()
                            .expect("orbit is closed under generators");
                        let schreier = u_delta.inverse().compose(s).compose(&u_gamma);
                        if !schreier.is_identity() && self.add_sifted(schreier, i + 1) {
                            continue 'outer;
                        }
                    }
                }
                self.levels[i].verified_with = gen_count;
            }
            return;
        }
    }

    /// Sift an element starting at the given level; install the residue as a
    /// strong generator if one survives. Returns true if the chain changed.
    fn add_sifted(&mut self, g: Perm, from: usize) -> bool {
        let (residue, depth) = match self.sift(g, from) {
            Sift::Member => return false,
            Sift::Residue(r, d) => (r, d),
        };
        if depth == self.levels.len() {
            let point = (0..self.degree)
                .find(|&x| residue.apply(x) != x)
                .expect("non-identity permutation moves a point") as u16;
            self.levels.push(Level::new(point, self.degree));
        }
        self.levels[depth].gens_here.push(residue);
        for i in 0..=depth {
            self.recompute_orbit(i);
            self.levels[i].verified_with = usize::MAX;
        }
        true
    }

    pub fn order(&self) -> Result<u64> {
        let mut ord: u128 = 1;
        for l in &self.levels {
            ord *= l.orbit.len() as u128;
        }
        u64::try_from(ord).map_err(|_| Error::CapExceeded {
            cap: u64::MAX,
            context: "group order exceeds u64".into(),
        })
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        matches!(self.sift(g.clone(), 0), Sift::Member)
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.point).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[u16]]) -> Perm {
        let cycles: Vec<Vec<u16>> = cycles.iter().map(|c| c.to_vec()).collect();
        Perm::from_cycles(degree, &cycles, "test").unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9u16 {
            let gens = vec![
                cyc(n as usize, &[&[0, 1]]),
                cyc(n as usize, &[&(0..n).collect::<Vec<u16>>()]),
            ];
            let chain = StabChain::build(&gens, n as usize);
            let expect: u64 = (1..=n as u64).product();
            assert_eq!(chain.order().unwrap(), expect, "order of S_{n}");
        }
    }

    #[test]
    fn alternating_group_and_membership() {
        let a4 = vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])];
        let chain = StabChain::build(&a4, 4);
        assert_eq!(chain.order().unwrap(), 12);
        assert!(chain.contains(&cyc(4, &[&[0, 1], &[2, 3]])));
        assert!(!chain.contains(&cyc(4, &[&[0, 1]])));
        assert!(chain.contains(&Perm::identity(4)));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::build(&[Perm::identity(5)], 5);
        assert_eq!(chain.order().unwrap(), 1);
        assert!(chain.contains(&Perm::identity(5)));
        assert!(!chain.contains(&cyc(5, &[&[0, 1]])));
    }

    #[test]
    fn imprimitive_wreath_order() {
        // ⟨(0 1 2), (0 3 6)(1 4 7)(2 5 8)⟩ is C_3 wr C_3 of order 3^4.
        let gens = vec![cyc(9, &[&[0, 1, 2]]), cyc(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]])];
        let chain = StabChain::build(&gens, 9);
        assert_eq!(chain.order().unwrap(), 81);
    }

    #[test]
    fn intransitive_direct_product() {
        let gens = vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[3, 4]])];
        let chain = StabChain::build(&gens, 5);
        assert_eq!(chain.order().unwrap(), 6);
    }
}
