//! Dense sector-resolved matrices for the nonreciprocal XXZ ladder.
//!
//! The ladder Hamiltonian is `H = H_A + H_B + H_AB`: two XXZ legs with
//! asymmetric hopping weights `e^{±Ψ}` and a rung coupling with weights
//! `e^{±Φ}`,
//!
//! ```text
//! H_leg  = J_leg  Σ_j [ (e^Ψ S⁺_j S⁻_{j+1} + e^{-Ψ} S⁻_j S⁺_{j+1})/2 + Δ S^z_j S^z_{j+1} ]
//! H_rung = J_rung Σ_j [ (e^Φ S⁺_{j,A} S⁻_{j,B} + e^{-Φ} S⁻_{j,A} S⁺_{j,B})/2 + Δ S^z_{j,A} S^z_{j,B} ]
//! ```
//!
//! All matrices are dense and complex-typed even though the entries are real;
//! the non-Hermitian eigensolver downstream works on complex storage. Builders
//! are pure functions of `(params, sector)` and accumulate bond-major in
//! ascending `j`, so outputs are bit-for-bit reproducible.

use ndarray::{Array1, Array2};
use ndarray_linalg::EigVals;
use num_complex::Complex64;

use crate::basis::{apply_bond, BondOp, SectorBasis, SiteIndex, SpinConfig};
use crate::error::{Error, Result};
use crate::parallel::par_map;

/// Boundary condition along the legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
}

/// Form of the rung coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RungType {
    /// Nonreciprocal XXZ rung with weights `e^{±Φ}` and anisotropy Δ.
    XxzNonreciprocal,
    /// Hermitian isotropic Heisenberg rung (symmetric 1/2 weights, Δ = 1).
    HeisenbergIso,
}

/// All model parameters of the ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderParams {
    pub num_rungs: usize,
    pub j_leg: f64,
    pub j_rung: f64,
    /// XXZ anisotropy Δ; the strong-rung expansion assumes Δ > -1.
    pub delta: f64,
    /// Rung nonreciprocity Φ.
    pub phi: f64,
    /// Leg nonreciprocity Ψ.
    pub psi: f64,
    pub boundary: Boundary,
    pub rung_type: RungType,
}

impl LadderParams {
    /// Isotropic Hermitian defaults (`J_leg = J_rung = Δ = 1`, `Φ = Ψ = 0`,
    /// periodic, nonreciprocal-XXZ rung form).
    pub fn new(num_rungs: usize) -> Self {
        Self {
            num_rungs,
            j_leg: 1.0,
            j_rung: 1.0,
            delta: 1.0,
            phi: 0.0,
            psi: 0.0,
            boundary: Boundary::Periodic,
            rung_type: RungType::XxzNonreciprocal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_rungs < 2 {
            return Err(Error::InvalidParams(format!(
                "num_rungs must be ≥ 2, got {}",
                self.num_rungs
            )));
        }
        if self.delta <= -1.0 {
            return Err(Error::InvalidParams(format!(
                "anisotropy must satisfy Δ > -1, got {}",
                self.delta
            )));
        }
        for (name, v) in [
            ("j_leg", self.j_leg),
            ("j_rung", self.j_rung),
            ("delta", self.delta),
            ("phi", self.phi),
            ("psi", self.psi),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Which Hilbert space a matrix acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorSpace {
    /// The 4^N ladder space (or one of its S^z sectors).
    FullLadder,
    /// The 2^N space of a single leg.
    LegOnly,
}

/// Sector metadata attached to a ladder-space operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorTag {
    pub num_rungs: usize,
    pub sz_twice: i32,
}

/// Dense square complex matrix with space/sector metadata.
#[derive(Debug, Clone)]
pub struct ComplexOperator {
    matrix: Array2<Complex64>,
    space: OperatorSpace,
    sector: Option<SectorTag>,
}

impl ComplexOperator {
    pub fn new(matrix: Array2<Complex64>, space: OperatorSpace, sector: Option<SectorTag>) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols(), "operator must be square");
        Self { matrix, space, sector }
    }

    /// Operator on the full ladder space restricted to a sector.
    pub fn in_sector(matrix: Array2<Complex64>, tag: SectorTag) -> Self {
        Self::new(matrix, OperatorSpace::FullLadder, Some(tag))
    }

    /// Operator on the 2^N single-leg space.
    pub fn leg_only(matrix: Array2<Complex64>) -> Self {
        Self::new(matrix, OperatorSpace::LegOnly, None)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<Complex64> {
        self.matrix
    }

    pub fn space(&self) -> OperatorSpace {
        self.space
    }

    pub fn sector(&self) -> Option<SectorTag> {
        self.sector
    }
}

/// Part of the ladder Hamiltonian to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianPart {
    Total,
    LegA,
    LegB,
    Rung,
}

/// Directed nearest-neighbor bonds `(j, j+1)` of an `n`-site chain.
///
/// Periodic boundaries include the wrap bond `(n-1, 0)`; at `n = 2` this
/// doubles the pair, giving both `(0,1)` and `(1,0)` as written in the
/// Hamiltonian sum.
pub fn chain_bonds(n: usize, boundary: Boundary) -> Vec<(usize, usize)> {
    match boundary {
        Boundary::Periodic => (0..n).map(|j| (j, (j + 1) % n)).collect(),
        Boundary::Open => (0..n.saturating_sub(1)).map(|j| (j, j + 1)).collect(),
    }
}

/// One XXZ bond accumulated into `matrix` over the given states:
/// `w_pm·S⁺_{b1}S⁻_{b2} + w_mp·S⁻_{b1}S⁺_{b2} + w_zz·S^z_{b1}S^z_{b2}`.
fn add_xxz_bond<F>(
    matrix: &mut Array2<Complex64>,
    states: &[SpinConfig],
    position: &F,
    bit1: usize,
    bit2: usize,
    w_pm: f64,
    w_mp: f64,
    w_zz: f64,
) where
    F: Fn(SpinConfig) -> Option<usize>,
{
    for (col, &state) in states.iter().enumerate() {
        for (op, w) in [
            (BondOp::PlusMinus, w_pm),
            (BondOp::MinusPlus, w_mp),
            (BondOp::ZZ, w_zz),
        ] {
            if let Some((dest, amp)) = apply_bond(state, op, bit1, bit2) {
                let row = position(dest).expect("bond image must stay inside the basis");
                matrix[(row, col)] += Complex64::new(w * amp, 0.0);
            }
        }
    }
}

fn assemble_part<F>(
    params: &LadderParams,
    states: &[SpinConfig],
    position: &F,
    part: HamiltonianPart,
) -> Array2<Complex64>
where
    F: Fn(SpinConfig) -> Option<usize>,
{
    let n = params.num_rungs;
    let dim = states.len();

    if part == HamiltonianPart::Total {
        let mut total = assemble_part(params, states, position, HamiltonianPart::LegA);
        total += &assemble_part(params, states, position, HamiltonianPart::LegB);
        total += &assemble_part(params, states, position, HamiltonianPart::Rung);
        return total;
    }

    let mut matrix = Array2::zeros((dim, dim));
    match part {
        HamiltonianPart::LegA | HamiltonianPart::LegB => {
            let leg = if part == HamiltonianPart::LegA {
                crate::basis::Leg::A
            } else {
                crate::basis::Leg::B
            };
            let j = params.j_leg;
            let (w_pm, w_mp) = (j * params.psi.exp() / 2.0, j * (-params.psi).exp() / 2.0);
            let w_zz = j * params.delta;
            for (s1, s2) in chain_bonds(n, params.boundary) {
                let b1 = SiteIndex::new(s1, leg).bit(n);
                let b2 = SiteIndex::new(s2, leg).bit(n);
                add_xxz_bond(&mut matrix, states, position, b1, b2, w_pm, w_mp, w_zz);
            }
        }
        HamiltonianPart::Rung => {
            let j = params.j_rung;
            let (w_pm, w_mp, w_zz) = match params.rung_type {
                RungType::XxzNonreciprocal => (
                    j * params.phi.exp() / 2.0,
                    j * (-params.phi).exp() / 2.0,
                    j * params.delta,
                ),
                RungType::HeisenbergIso => (j / 2.0, j / 2.0, j),
            };
            for rung in 0..n {
                let b1 = SiteIndex::new(rung, crate::basis::Leg::A).bit(n);
                let b2 = SiteIndex::new(rung, crate::basis::Leg::B).bit(n);
                add_xxz_bond(&mut matrix, states, position, b1, b2, w_pm, w_mp, w_zz);
            }
        }
        HamiltonianPart::Total => unreachable!(),
    }
    matrix
}

/// Build the requested part of the ladder Hamiltonian in a fixed S^z sector.
///
/// `Total` is the entrywise sum of the three separately assembled parts.
pub fn build_hamiltonian(
    params: &LadderParams,
    sector: &SectorBasis,
    part: HamiltonianPart,
) -> Result<ComplexOperator> {
    params.validate()?;
    if sector.num_sites() != 2 * params.num_rungs {
        return Err(Error::SectorMismatch(format!(
            "sector spans {} sites but the ladder has {}",
            sector.num_sites(),
            2 * params.num_rungs
        )));
    }
    let matrix = assemble_part(params, sector.states(), &|c| sector.position(c), part);
    Ok(ComplexOperator::in_sector(
        matrix,
        SectorTag { num_rungs: params.num_rungs, sz_twice: sector.sz_twice() },
    ))
}

/// Build a Hamiltonian part on the entire 4^N ladder space, states ordered by
/// their bit value. Used by diagnostics and block-structure checks.
pub fn build_hamiltonian_full(params: &LadderParams, part: HamiltonianPart) -> Result<ComplexOperator> {
    params.validate()?;
    let states: Vec<SpinConfig> = (0..1u64 << (2 * params.num_rungs)).map(SpinConfig).collect();
    let matrix = assemble_part(params, &states, &|c: SpinConfig| Some(c.0 as usize), part);
    Ok(ComplexOperator::new(matrix, OperatorSpace::FullLadder, None))
}

/// `Σ_j S⁺_j S⁻_{j+1}` on the full 2^n single-chain space.
pub fn sum_plus_minus(num_sites: usize, boundary: Boundary) -> Array2<Complex64> {
    chain_string(num_sites, boundary, BondOp::PlusMinus)
}

/// `Σ_j S⁻_j S⁺_{j+1}` on the full 2^n single-chain space.
pub fn sum_minus_plus(num_sites: usize, boundary: Boundary) -> Array2<Complex64> {
    chain_string(num_sites, boundary, BondOp::MinusPlus)
}

/// `Σ_j S^z_j S^z_{j+1}` on the full 2^n single-chain space.
pub fn sum_zz(num_sites: usize, boundary: Boundary) -> Array2<Complex64> {
    chain_string(num_sites, boundary, BondOp::ZZ)
}

fn chain_string(num_sites: usize, boundary: Boundary, op: BondOp) -> Array2<Complex64> {
    let dim = 1usize << num_sites;
    let mut matrix = Array2::zeros((dim, dim));
    for (s1, s2) in chain_bonds(num_sites, boundary) {
        for col in 0..dim {
            if let Some((dest, amp)) = apply_bond(SpinConfig(col as u64), op, s1, s2) {
                matrix[(dest.0 as usize, col)] += Complex64::new(amp, 0.0);
            }
        }
    }
    matrix
}

/// Single-chain XXZ Hamiltonian on the full 2^N leg space with the leg
/// couplings of `params` and an explicit anisotropy.
///
/// `delta_override = Δ` reproduces the subsystem Hamiltonian `H_A`;
/// `delta_override = (Δ+Δ²)/2` gives the renormalized `H̃_A` that the
/// entanglement Hamiltonian approaches in the strong-rung limit.
pub fn subsystem_hamiltonian(params: &LadderParams, delta_override: f64) -> Result<ComplexOperator> {
    params.validate()?;
    if !delta_override.is_finite() {
        return Err(Error::InvalidParams(format!(
            "delta_override must be finite, got {delta_override}"
        )));
    }
    let n = params.num_rungs;
    let j = Complex64::new(params.j_leg, 0.0);
    let w_pm = j * params.psi.exp() / 2.0;
    let w_mp = j * (-params.psi).exp() / 2.0;
    let w_zz = j * delta_override;
    let matrix = sum_plus_minus(n, params.boundary).mapv(|z| z * w_pm)
        + sum_minus_plus(n, params.boundary).mapv(|z| z * w_mp)
        + sum_zz(n, params.boundary).mapv(|z| z * w_zz);
    Ok(ComplexOperator::leg_only(matrix))
}

fn hausdorff_distance(a: &Array1<Complex64>, b: &Array1<Complex64>) -> f64 {
    let directed = |xs: &Array1<Complex64>, ys: &Array1<Complex64>| {
        xs.iter()
            .map(|x| ys.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Numerical witness that Φ is a gauge degree of freedom: the spectrum of the
/// total Hamiltonian must not depend on it.
///
/// Returns the maximum, over `phi_values`, of the Hausdorff distance between
/// the eigenvalue multiset at Φ and the one at Φ = 0.
pub fn spectrum_gauge_check(
    params: &LadderParams,
    sector: &SectorBasis,
    phi_values: &[f64],
) -> Result<f64> {
    params.validate()?;
    if phi_values.len() < 2 {
        return Err(Error::InvalidParams(
            "gauge check needs at least 2 phi values".into(),
        ));
    }
    let spectrum_at = |phi: f64| -> Result<Array1<Complex64>> {
        let p = LadderParams { phi, ..*params };
        let h = build_hamiltonian(&p, sector, HamiltonianPart::Total)?;
        Ok(h.matrix().eigvals()?)
    };
    let reference = spectrum_at(0.0)?;
    let deviations = par_map(phi_values, |&phi| {
        spectrum_at(phi).map(|s| hausdorff_distance(&s, &reference))
    });
    let mut worst = 0.0f64;
    for d in deviations {
        worst = worst.max(d?);
    }
    Ok(worst)
}
