//! Exact symbolic model of the Vietoris power `V(ω^ω)`, its subspace
//! 𝕂(ω, ord) of finite-range sequences, the Vietoris hyperspace over the
//! discrete naturals, and selection games played on them.
//!
//! The ground sets are eventually periodic subsets of ω ([`EpSet`]) and the
//! points are quasi-affine-periodic sequences ([`QSeq`]); on these classes
//! every membership, containment and emptiness question about basic open
//! sets is decidable, which is what lets the counterexample constructions be
//! machine-checked.

pub mod games;
pub mod groundset;
pub mod hyper;
pub mod metric;
pub mod sampling;
pub mod sequence;
pub mod suites;
pub mod vtop;

pub use groundset::{EpSet, EpSetError, SetOp, SetQuery};
pub use sequence::{QSeq, QSeqError, Word};
