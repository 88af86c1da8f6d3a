//! Biorthogonal reduced density matrix `ρ_A = Tr_B |ψ₀^R⟩⟨ψ₀^L|`.
//!
//! With the bit layout of [`crate::basis`] the full-space index factorizes as
//! `idx = b·2^N + a`, so the partial trace over leg B is a strided sum:
//! `ρ_A[a, a'] = Σ_b ψ^R[b·2^N + a] · ψ^L[b·2^N + a']`. No conjugation enters
//! because the left vector already stores the bra row. No Hermitization is
//! ever applied: the object is genuinely non-Hermitian and downstream
//! entropies are built for complex eigenvalues.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::basis::SectorBasis;
use crate::error::{Error, Result};

/// Tolerance on `|⟨ψ^L|ψ^R⟩ - 1|` below which input vectors are accepted.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Density matrix of leg A in the full 2^N leg space.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    matrix: Array2<Complex64>,
    trace_residual: f64,
    num_rungs: usize,
}

impl ReducedDensityMatrix {
    /// Wrap an existing leg-space matrix, checking shape and unit trace.
    pub fn from_matrix(matrix: Array2<Complex64>, num_rungs: usize) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim || dim != 1 << num_rungs {
            return Err(Error::DimensionMismatch { expected: 1 << num_rungs, got: dim });
        }
        let trace: Complex64 = (0..dim).map(|i| matrix[(i, i)]).sum();
        let trace_residual = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_residual > NORMALIZATION_TOL {
            return Err(Error::NormalizationViolated { deviation: trace_residual });
        }
        Ok(Self { matrix, trace_residual, num_rungs })
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Number of leg-A sites (= rungs of the parent ladder).
    pub fn num_rungs(&self) -> usize {
        self.num_rungs
    }

    pub fn trace_residual(&self) -> f64 {
        self.trace_residual
    }
}

/// Partial trace over leg B of the outer product of two full 4^N-space
/// vectors; returns the raw leg-A matrix without trace checks.
pub fn partial_trace_outer(
    right_full: &Array1<Complex64>,
    left_full: &Array1<Complex64>,
    num_rungs: usize,
) -> Array2<Complex64> {
    let leg_dim = 1usize << num_rungs;
    assert_eq!(right_full.len(), leg_dim * leg_dim, "full vector must span 4^N states");
    assert_eq!(left_full.len(), leg_dim * leg_dim);
    let mut rho = Array2::zeros((leg_dim, leg_dim));
    for b in 0..leg_dim {
        let offset = b << num_rungs;
        for a in 0..leg_dim {
            let r = right_full[offset | a];
            if r == Complex64::new(0.0, 0.0) {
                continue;
            }
            for a2 in 0..leg_dim {
                rho[(a, a2)] += r * left_full[offset | a2];
            }
        }
    }
    rho
}

/// Biorthogonal RDM from full-space right/left vectors normalized to
/// `⟨ψ^L|ψ^R⟩ = 1` (plain dot product, no conjugation).
pub fn rdm_from_full(
    right_full: &Array1<Complex64>,
    left_full: &Array1<Complex64>,
    num_rungs: usize,
) -> Result<ReducedDensityMatrix> {
    let overlap: Complex64 = left_full.iter().zip(right_full.iter()).map(|(l, r)| l * r).sum();
    let deviation = (overlap - Complex64::new(1.0, 0.0)).norm();
    if deviation > NORMALIZATION_TOL {
        return Err(Error::NormalizationViolated { deviation });
    }
    ReducedDensityMatrix::from_matrix(partial_trace_outer(right_full, left_full, num_rungs), num_rungs)
}

/// Biorthogonal RDM from sector-basis ground-state vectors.
///
/// The sector vectors are embedded into the full 4^N space (zeros elsewhere)
/// and traced over leg B. Callers must hand in vectors already normalized by
/// the biorthogonal overlap.
pub fn biorthogonal_rdm(
    right: &Array1<Complex64>,
    left: &Array1<Complex64>,
    sector: &SectorBasis,
) -> Result<ReducedDensityMatrix> {
    if sector.num_sites() % 2 != 0 {
        return Err(Error::SectorMismatch(
            "RDM needs a ladder sector (even site count)".into(),
        ));
    }
    if right.len() != sector.dim() || left.len() != sector.dim() {
        return Err(Error::DimensionMismatch { expected: sector.dim(), got: right.len() });
    }
    let num_rungs = sector.num_rungs();
    let full_dim = 1usize << (2 * num_rungs);
    let mut right_full = Array1::zeros(full_dim);
    let mut left_full = Array1::zeros(full_dim);
    for (i, state) in sector.states().iter().enumerate() {
        right_full[state.0 as usize] = right[i];
        left_full[state.0 as usize] = left[i];
    }
    rdm_from_full(&right_full, &left_full, num_rungs)
}
