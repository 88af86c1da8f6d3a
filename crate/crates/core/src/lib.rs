//! Exact diagonalization of the nonreciprocal XXZ spin-1/2 ladder and
//! biorthogonal entanglement analysis.
//!
//! The crate builds dense sector-resolved Hamiltonians for a two-leg ladder
//! with asymmetric hopping weights `e^{±Ψ}` (legs) and `e^{±Φ}` (rungs),
//! diagonalizes them into biorthonormal left/right eigenpairs, forms the
//! biorthogonal reduced density matrix `ρ_A = Tr_B |ψ₀^R⟩⟨ψ₀^L|`, and
//! extracts complex entanglement spectra, TTC entropies, the entanglement
//! Hamiltonian, and effective XXZ couplings by operator tomography. A
//! closed-form first-order strong-rung expansion serves as an independent
//! cross-check of the whole pipeline.

pub mod basis;
pub mod eig;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod parallel;
pub mod perturbation;
pub mod rdm;

pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
