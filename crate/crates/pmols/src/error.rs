//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entry ({row},{col}) is not finite: {value}")]
    NonFiniteEntry { row: usize, col: usize, value: f64 },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("entry buffer holds {len} values but {rows}x{cols} needs {needed}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        len: usize,
        needed: usize,
    },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("singular value decomposition did not converge for a {rows}x{cols} matrix")]
    DecompositionFailure { rows: usize, cols: usize },

    #[error("column {col} has zero norm")]
    ZeroColumn { col: usize },

    #[error("column subset is numerically rank deficient: {detail}")]
    RankDeficient { detail: String },

    #[error("index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "sample Gram matrix is singular at lambda = 0; use the pseudo-inverse preconditioner \
         (pip_preconditioner) for rank-deficient matrices"
    )]
    SingularGram,

    #[error("selection exhausted: needed {needed} admissible columns, only {available} remain")]
    Exhausted { needed: usize, available: usize },

    #[error("lift constant {c0} too small: entry ({row},{col}) = {value} stays negative")]
    LiftTooSmall {
        c0: f64,
        row: usize,
        col: usize,
        value: f64,
    },

    #[error("pattern matrix must be nonnegative: entry ({row},{col}) = {value}")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("need at least {need} samples for fluctuation statistics, got {have}")]
    DegenerateStatistics { need: usize, have: usize },

    #[error("combinatorial budget exceeded: C(n,k) = {combinations} > {budget}")]
    BudgetExceeded { combinations: u128, budget: u128 },

    #[error("index sets must be disjoint; {index} appears in both")]
    OverlappingSets { index: usize },

    #[error("matrix is not symmetric positive definite: {detail}")]
    NotPositiveDefinite { detail: String },

    #[error("PGM parse error at byte {offset}: {detail}")]
    PgmParse { offset: usize, detail: String },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
