//! Error types shared by every module. Each variant names the failed check
//! and carries the offending magnitude so callers can report precisely what
//! went wrong.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e} exceeds {tol:.1e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver did not converge in {sweeps} sweeps: max off-diagonal {off_diagonal:.3e}")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("trace is not 1: |trace - 1| = {deviation:.3e}")]
    NotUnitTrace { deviation: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector is not normalized: |norm² - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("{name} = {value} lies outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("probability weight is negative: {value:.3e}")]
    NegativeProbability { value: f64 },

    #[error("probability weights do not sum to 1: sum = {sum}")]
    ProbabilityNotNormalized { sum: f64 },

    #[error("operator {index} is not a projector: max |Π² - Π| or |Π - Π†| = {deviation:.3e}")]
    NotProjector { index: usize, deviation: f64 },

    #[error("projectors {first} and {second} are not orthogonal: max |Π_j Π_k| = {deviation:.3e}")]
    NotOrthogonal {
        first: usize,
        second: usize,
        deviation: f64,
    },

    #[error("projectors do not sum to the identity: max |ΣΠ - I| = {deviation:.3e}")]
    NotComplete { deviation: f64 },

    #[error("measurement must consist of rank-1 projectors, got ranks {ranks:?}")]
    NotRankOne { ranks: Vec<usize> },

    #[error(
        "state is not classically accessible in this basis: \
         superselection residual {residual:.3e} exceeds {tol:.1e}"
    )]
    NonzeroDiscord { residual: f64, tol: f64 },

    #[error("measurement minimization is implemented for dim_a = 2 only, got dim_a = {dim_a}")]
    UnsupportedDimension { dim_a: usize },

    #[error("malformed state file: {detail}")]
    MalformedStateFile { detail: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("state file is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
