//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by basis construction, matrix builders, and the
/// biorthogonal analysis pipeline.
#[derive(Error, Debug)]
pub enum Error {
    /// Model or basis parameters violate a precondition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A sector basis does not match the parameters or vector it is used with.
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),

    /// Operator and vector dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The eigenvector matrix is numerically singular; the operator is at or
    /// near an exceptional point and the biorthogonal basis does not exist.
    #[error("defective eigensystem: eigenvector matrix condition {condition:.3e} exceeds {threshold:.1e}")]
    Defective { condition: f64, threshold: f64 },

    /// A biorthogonal pair failed `⟨ψ^L|ψ^R⟩ = 1` within tolerance.
    #[error("biorthogonal normalization violated: |⟨L|R⟩ - 1| = {deviation:.3e}")]
    NormalizationViolated { deviation: f64 },

    /// The reduced density matrix has an eigenvalue too close to zero for a
    /// matrix logarithm.
    #[error("zero eigenvalue in density matrix: |ω| = {magnitude:.3e}")]
    ZeroEigenvalue { magnitude: f64 },

    /// First-order perturbation theory diverges at Δ = -1.
    #[error("divergent perturbative denominator: 1 + Δ = {denominator:.3e}")]
    DivergentDenominator { denominator: f64 },

    /// Backend linear algebra failure.
    #[error("linear algebra error: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),
}

pub type Result<T> = std::result::Result<T, Error>;
