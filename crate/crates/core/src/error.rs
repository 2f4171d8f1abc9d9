use num_rational::BigRational;
use thiserror::Error;

use crate::exact::fmt_q;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Usage(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded: {needed} points requested, budget is {budget}")]
    Budget { needed: u128, budget: u64 },

    /// psi vanished: the transposed system has an exact integer relation.
    #[error("degenerate: psi vanishes at |y| = {height} (witness y = {witness:?})")]
    Degenerate { height: i64, witness: Vec<i64> },

    #[error(
        "search radius {radius} insufficient: {found} of {needed} independent points found, \
         next minimum exceeds {}", fmt_q(.certified_scale)
    )]
    RadiusInsufficient {
        radius: i64,
        found: usize,
        needed: usize,
        certified_scale: BigRational,
    },

    #[error("no qualifying parameter found up to cap {cap}")]
    NotFound { cap: String },

    #[error("no solution in range; best residual {}", fmt_q(.best_residual))]
    NoSolution {
        best_residual: BigRational,
        best_x: Vec<i64>,
    },

    /// An internal consistency check failed. Indicates a bug, never bad input.
    #[error("internal check failed: {0}")]
    Defect(String),
}
