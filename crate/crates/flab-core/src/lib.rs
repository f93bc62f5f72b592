//! Finite p-group computation kernel: permutation and matrix groups over
//! prime fields, stabilizer chains, structural subgroups, p-group
//! constructions, linear-action classification, fusion analysis, and
//! reproducible check suites.

pub mod anchors;
pub mod chain;
pub mod classes;
pub mod construct;
pub mod decompose;
pub mod element;
pub mod error;
pub mod fusion;
pub mod gf;
pub mod group;
pub mod jsonio;
pub mod linear;
pub mod matrix;
pub mod perm;
pub mod report;
pub mod structure;
pub mod suites;
pub mod sylow;

pub use element::{GroupElement, Kind};
pub use error::{Error, Result};
pub use group::{make_group, make_group_default, FiniteGroup, SubgroupHandle, DEFAULT_CAP};
