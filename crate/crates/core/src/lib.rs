//! Cochain-level computations in the mod-p cohomology of elementary abelian
//! p-groups `G = (Z/p)^r`.
//!
//! The crate works with cochains on the augmentation ideal `I` of `Z[G]`
//! ("I-cochains"), which identify value-for-value with normalized cochains
//! and have a particularly simple coboundary. On top of that it builds the
//! explicit generator cocycles, the map `τ` from
//! `F_2[x_1..x_r]` (p = 2) or `Λ(x_1..x_r) ⊗ F_p[y_1..y_r]` (p > 2) into
//! cohomology, and closed formulas for its inverse. An independent
//! linear-algebra oracle computes cohomology dimensions and decides
//! coboundary membership by Gaussian elimination over `F_p`.

pub mod algebra;
pub mod cli;
pub mod cochain;
pub mod document;
pub mod error;
pub mod generators;
pub mod group_ring;
pub mod oracle;
pub mod permutation;
pub mod selftest;

pub use algebra::{AlgebraElem, MonomialSig, ShuffleSet};
pub use cochain::{correspond, correspond_back, Action, ICochain, NormalizedCochain, Tensor};
pub use error::{Error, Result};
pub use group_ring::{CoeffRing, GroupContext, GroupElem, MultiIndex, RingElem, TPolynomial};
pub use oracle::{CohomologyReport, FpMatrix};
pub use permutation::Permutation;
