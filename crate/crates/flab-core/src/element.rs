//! A group element is either a permutation or an invertible matrix.
//!
//! Every `FiniteGroup` holds elements of a single kind and shape (same degree,
//! or same dimension over the same field); `make_group` enforces this, so the
//! arithmetic here may assume it.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GroupElement {
    Perm(Perm),
    Matrix(Mat),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Perm,
    Matrix,
}

impl GroupElement {
    pub fn kind(&self) -> Kind {
        match self {
            GroupElement::Perm(_) => Kind::Perm,
            GroupElement::Matrix(_) => Kind::Matrix,
        }
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(Perm::identity(p.degree())),
            GroupElement::Matrix(m) => {
                GroupElement::Matrix(Mat::identity(m.field().clone(), m.dim()))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.is_identity(),
            GroupElement::Matrix(m) => m.is_identity(),
        }
    }

    /// Group product. Panics on kind/shape mismatch (see module docs);
    /// use `checked_mul` at API boundaries.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.compose(b)),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => GroupElement::Matrix(a.mul(b)),
            _ => panic!("kind mismatch in element product"),
        }
    }

    pub fn checked_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if !self.compatible(other) {
            return Err(Error::KindMismatch(
                "cannot multiply elements of different kinds or shapes".into(),
            ));
        }
        Ok(self.mul(other))
    }

    pub fn compatible(&self, other: &GroupElement) -> bool {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a.degree() == b.degree(),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => {
                a.dim() == b.dim()
                    && a.field().p() == b.field().p()
                    && a.field().k() == b.field().k()
            }
            _ => false,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Matrix(m) => {
                GroupElement::Matrix(m.inverse().expect("group elements are invertible"))
            }
        }
    }

    /// g * self * g^{-1}
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (GroupElement::Perm(a), GroupElement::Perm(c)) => {
                GroupElement::Perm(a.conjugate_by(c))
            }
            _ => g.mul(self).mul(&g.inverse()),
        }
    }

    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// [a, b] = a^{-1} b^{-1} a b
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupElement::Perm(p) => p.order(),
            GroupElement::Matrix(m) => m.order(),
        }
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(p.pow(e)),
            GroupElement::Matrix(m) => {
                if e >= 0 {
                    GroupElement::Matrix(m.pow(e as u64))
                } else {
                    GroupElement::Matrix(
                        m.inverse().expect("group elements are invertible").pow(e.unsigned_abs()),
                    )
                }
            }
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Mat> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// One-line rendering for reports: cycle notation for permutations,
    /// row-major entry list for matrices.
    pub fn display_compact(&self) -> String {
        match self {
            GroupElement::Perm(p) => {
                let cycles = p.cycles();
                if cycles.is_empty() {
                    return "()".into();
                }
                cycles
                    .iter()
                    .map(|c| {
                        let body =
                            c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                        format!("({body})")
                    })
                    .collect::<Vec<_>>()
                    .join("")
            }
            GroupElement::Matrix(m) => {
                let n = m.dim();
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        let row: Vec<String> =
                            (0..n).map(|j| m.get(i, j).to_string()).collect();
                        format!("[{}]", row.join(","))
                    })
                    .collect();
                format!("[{}] over GF({})", rows.join(","), m.field().order())
            }
        }
    }
}

impl From<Perm> for GroupElement {
    fn from(p: Perm) -> Self {
        GroupElement::Perm(p)
    }
}

impl From<Mat> for GroupElement {
    fn from(m: Mat) -> Self {
        GroupElement::Matrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    #[test]
    fn checked_mul_rejects_mixed_kinds() {
        let p = GroupElement::Perm(Perm::identity(3));
        let f = Field::new(3, 1).unwrap();
        let m = GroupElement::Matrix(Mat::identity(f, 2));
        assert!(p.checked_mul(&m).is_err());
        assert!(p.checked_mul(&GroupElement::Perm(Perm::identity(4))).is_err());
        assert!(p.checked_mul(&GroupElement::Perm(Perm::identity(3))).is_ok());
    }

    #[test]
    fn commutator_of_commuting_elements_is_identity() {
        let a = GroupElement::Perm(
            Perm::from_cycles(6, &[vec![0, 1, 2]], "a").unwrap(),
        );
        let b = GroupElement::Perm(
            Perm::from_cycles(6, &[vec![3, 4, 5]], "b").unwrap(),
        );
        assert!(a.commutator(&b).is_identity());
        assert!(a.commutes_with(&b));
        let c = GroupElement::Perm(Perm::from_cycles(6, &[vec![0, 3]], "c").unwrap());
        assert!(!a.commutes_with(&c));
        assert!(!a.commutator(&c).is_identity());
    }

    #[test]
    fn matrix_element_order_and_pow() {
        let f = Field::new(3, 1).unwrap();
        let t = GroupElement::Matrix(Mat::from_entries(f, 2, vec![1, 1, 0, 1]).unwrap());
        assert_eq!(t.order(), 3);
        assert!(t.pow(3).is_identity());
        assert_eq!(t.pow(-1), t.inverse());
    }
}
