//! Exact sparse linear algebra over prime fields and the rationals.

mod elim;
mod field;
mod matrix;

pub use elim::{homology_dim, homology_dim_with, kernel_basis, rank, rank_with, vector_rank, RankOptions};
pub use field::{rational_to_string, Field, FieldChoice, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{LabeledMatrix, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("unknown field `{0}`; expected `rational` or `gf<prime>`")]
    UnknownField(String),
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("composite of consecutive maps is nonzero ({nonzero_entries} nonzero entries)")]
    CompositionNonzero { nonzero_entries: usize },
    #[error("basis labels are not distinct")]
    DuplicateLabel,
}
