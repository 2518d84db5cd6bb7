//! Odd elements of `gl(m|n)`, the even group action, and the classical
//! subalgebras with their complements.

mod complement;
mod element;
mod kind;
mod realization;

pub use complement::{
    complement_basis, decompose, verify_basis, verify_complement, BlockRelationFailure, BlockRelationReport,
    BracketFailure, ComplementBasis, ComplementReport, DimensionCheck, Labeled,
};
pub use element::{act, bracket_odd, invariants, superbracket, EvenElement, GroupElement, Homogeneous, OddElement};
pub use kind::AlgebraKind;
pub use realization::{even_membership, odd_membership, osp_forms};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuperError {
    #[error("size mismatch: expected {expected:?}, found {found:?}")]
    SizeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("group element is not invertible")]
    NotInvertible,
    #[error("invalid algebra kind `{0}`")]
    InvalidKind(String),
    #[error("{0}")]
    Shape(String),
    #[error("{0} is the whole ambient algebra and has no complement")]
    NoComplement(String),
}
