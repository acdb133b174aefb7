//! Basic open sets of `V(ω^ω)` and the decision procedures built on them.

mod basic;
mod compact;
mod square;
mod witness;

use thiserror::Error;

pub use basic::{BoxBasic, BoxTail, Exclusion, Region, VBasic, WordBasic};
pub use compact::{compact_cover_check, CoverVerdict};
pub use square::{
    decode_tuple, encode_tuple, phi_continuity_cert, phi_join, phi_split, CantorPairing,
    ContinuityCert, Pairing,
};
pub use witness::{
    closed_separator, isolation_witness, separating_witness, Escape, Isolation, SearchBounds,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VTopError {
    #[error("basic set is empty")]
    EmptyBasic,
    #[error("point is not in the given basic set")]
    PointNotInBasic,
    #[error("point lies inside the closed set")]
    PointInsideClosedSet,
    #[error("depth limit {depth_limit} is shorter than the word ({word_len})")]
    BadDepth { depth_limit: usize, word_len: usize },
    #[error("cover family is empty")]
    EmptyFamily,
    #[error("point has infinite range")]
    InfiniteRangeUnsupported,
    #[error("basic set is not of the form [s, A]")]
    NotWordForm,
    #[error("range bound is infinite, so its pairing preimage is not finite")]
    PreimageNotFinite,
    #[error("point does not map into the target product")]
    PointNotInTarget,
}
