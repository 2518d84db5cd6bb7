//! Exact dense linear algebra over ℚ.

mod echelon;
mod jordan;
mod matrix;
mod rational;

pub use echelon::{ColumnEchelon, RankNormalForm, RowEchelon, Span};
pub use jordan::{conjugate_partition, jordan_matrix, partition_from_ranks, NilpotentJordan};
pub use matrix::Matrix;
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}
