//! Biorthonormal left/right eigendecomposition of dense complex matrices.
//!
//! Right eigenvectors come from a dense general eigendecomposition (LAPACK
//! `zgeev`); left eigenvectors are the rows of the inverse of the
//! right-eigenvector matrix, which enforces `⟨ψ_n^L|ψ_m^R⟩ = δ_nm` by
//! construction and sidesteps the eigenvalue-matching problem of two
//! independent decompositions. Near an exceptional point the eigenvector
//! matrix becomes singular; that state is surfaced as a `defective` flag
//! rather than silently regularized.

use ndarray::{Array1, Array2, Axis};
use ndarray_linalg::{Eig, Inverse, SVD};
use num_complex::Complex64;

use crate::basis::{ladder_sector_szs, SectorBasis};
use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, ComplexOperator, HamiltonianPart, LadderParams};
use crate::parallel::par_map;

/// Eigenvector-matrix condition number beyond which a system is flagged
/// defective (at or near an exceptional point).
pub const DEFECTIVE_CONDITION: f64 = 1e10;

/// Relative tolerance for two real parts of eigenvalues to count as tied in
/// ground-state selection.
pub const GROUND_TIE_TOL: f64 = 1e-9;

/// One eigenvalue with its biorthonormal right/left eigenvectors.
///
/// `left` stores the bra `⟨ψ^L|` as its row entries, normalized so the plain
/// (unconjugated) dot product `left·right` equals one. `overlap_condition`
/// is the eigenvalue condition number `‖left‖·‖right‖`, which diverges as an
/// exceptional point is approached.
#[derive(Debug, Clone)]
pub struct BiorthogonalPair {
    pub eigenvalue: Complex64,
    pub right: Array1<Complex64>,
    pub left: Array1<Complex64>,
    pub overlap_condition: f64,
}

/// Complete biorthogonal eigendecomposition of one operator.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// All `dim` pairs, sorted by (Re E ascending, |Im E| ascending, Im E ascending).
    pub pairs: Vec<BiorthogonalPair>,
    /// Set when the eigenvector matrix condition exceeds [`DEFECTIVE_CONDITION`]
    /// or the inversion fails outright; consumers must refuse to proceed.
    pub defective: bool,
    /// Condition number (σ_max/σ_min) of the right-eigenvector matrix.
    pub condition: f64,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Eigenvalues in sort order.
    pub fn eigenvalues(&self) -> Array1<Complex64> {
        self.pairs.iter().map(|p| p.eigenvalue).collect()
    }

    /// Right-eigenvector matrix (columns in sort order).
    pub fn right_matrix(&self) -> Array2<Complex64> {
        let dim = self.dim();
        let mut m = Array2::zeros((dim, dim));
        for (i, pair) in self.pairs.iter().enumerate() {
            m.column_mut(i).assign(&pair.right);
        }
        m
    }

    /// Left-eigenvector matrix (rows in sort order); `left_matrix · right_matrix = I`.
    pub fn left_matrix(&self) -> Array2<Complex64> {
        let dim = self.dim();
        let mut m = Array2::zeros((dim, dim));
        for (i, pair) in self.pairs.iter().enumerate() {
            m.row_mut(i).assign(&pair.left);
        }
        m
    }
}

fn eigenvalue_sort_key(e: Complex64) -> (f64, f64, f64) {
    (e.re, e.im.abs(), e.im)
}

fn cmp_keys(a: (f64, f64, f64), b: (f64, f64, f64)) -> std::cmp::Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.total_cmp(&b.1))
        .then(a.2.total_cmp(&b.2))
}

/// Dense biorthogonal eigendecomposition.
///
/// A defective (or near-defective) input does not error: it returns an
/// `EigenSystem` with the `defective` flag raised so callers can report the
/// exceptional point instead of consuming garbage left vectors.
pub fn eig_biorthogonal(op: &ComplexOperator) -> Result<EigenSystem> {
    let m = op.matrix();
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidParams("matrix entries must be finite".into()));
    }
    let dim = m.nrows();
    let (values, vectors) = m.eig()?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| cmp_keys(eigenvalue_sort_key(values[i]), eigenvalue_sort_key(values[j])));

    let mut right = Array2::zeros((dim, dim));
    for (slot, &src) in order.iter().enumerate() {
        right.column_mut(slot).assign(&vectors.index_axis(Axis(1), src));
    }

    let (_, singular, _) = right.svd(false, false)?;
    let (sigma_max, sigma_min) = (singular[0], singular[dim - 1]);
    let condition = if sigma_min > 0.0 { sigma_max / sigma_min } else { f64::INFINITY };

    let (left, defective) = match right.inv() {
        Ok(inverse) if condition <= DEFECTIVE_CONDITION => (inverse, false),
        Ok(inverse) => (inverse, true),
        Err(_) => (Array2::zeros((dim, dim)), true),
    };

    let pairs = order
        .iter()
        .enumerate()
        .map(|(slot, &src)| {
            let r = right.column(slot).to_owned();
            let l = left.row(slot).to_owned();
            let norm = |v: &Array1<Complex64>| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            BiorthogonalPair {
                eigenvalue: values[src],
                right: r.clone(),
                left: l.clone(),
                overlap_condition: if defective { f64::INFINITY } else { norm(&l) * norm(&r) },
            }
        })
        .collect();

    Ok(EigenSystem { pairs, defective, condition })
}

/// Ground-state pair selected from an eigensystem, with degeneracy
/// diagnostics.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub pair: BiorthogonalPair,
    /// Position of the chosen pair in `system.pairs`.
    pub index: usize,
    /// Re-gap to the runner-up eigenvalue.
    pub gap: f64,
    /// True when more than one eigenvalue sits inside the tie window.
    pub degenerate: bool,
    /// All eigenvalues inside the tie window, in sort order.
    pub candidates: Vec<Complex64>,
}

/// Select the eigenvalue minimizing Re E; ties within `GROUND_TIE_TOL·scale`
/// are broken by smallest |Im E|, then by sort order.
pub fn ground_state(system: &EigenSystem) -> Result<GroundState> {
    if system.defective {
        return Err(Error::Defective {
            condition: system.condition,
            threshold: DEFECTIVE_CONDITION,
        });
    }
    assert!(!system.pairs.is_empty(), "eigensystem has no pairs");
    let scale = system
        .pairs
        .iter()
        .map(|p| p.eigenvalue.norm())
        .fold(0.0f64, f64::max);
    let min_re = system
        .pairs
        .iter()
        .map(|p| p.eigenvalue.re)
        .fold(f64::INFINITY, f64::min);
    let tol = GROUND_TIE_TOL * scale;

    let candidates: Vec<usize> = (0..system.pairs.len())
        .filter(|&i| system.pairs[i].eigenvalue.re - min_re <= tol)
        .collect();
    let &chosen = candidates
        .iter()
        .min_by(|&&i, &&j| {
            let (a, b) = (system.pairs[i].eigenvalue, system.pairs[j].eigenvalue);
            a.im.abs()
                .total_cmp(&b.im.abs())
                .then(a.im.total_cmp(&b.im))
                .then(i.cmp(&j))
        })
        .expect("at least one candidate");

    let runner_up_re = system
        .pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != chosen)
        .map(|(_, p)| p.eigenvalue.re)
        .fold(f64::INFINITY, f64::min);

    Ok(GroundState {
        pair: system.pairs[chosen].clone(),
        index: chosen,
        gap: runner_up_re - system.pairs[chosen].eigenvalue.re,
        degenerate: candidates.len() > 1,
        candidates: candidates.iter().map(|&i| system.pairs[i].eigenvalue).collect(),
    })
}

/// Result of a ground-state scan over all S^z sectors of the ladder.
#[derive(Debug, Clone)]
pub struct SectorScan {
    /// `2·S^z` of the winning sector.
    pub sz_twice: i32,
    pub ground: GroundState,
    /// Sectors whose eigensystem came back defective and were skipped.
    pub defective_sectors: Vec<i32>,
}

/// Diagonalize every S^z sector of the total Hamiltonian and return the
/// global Re E minimizer under the same tie-breaking as [`ground_state`].
///
/// Defective sectors are recorded and skipped; the scan fails only if no
/// sector yields a usable ground state.
pub fn sector_scan_ground_state(params: &LadderParams) -> Result<SectorScan> {
    params.validate()?;
    let szs = ladder_sector_szs(params.num_rungs);
    let per_sector = par_map(&szs, |&sz_twice| -> Result<(i32, GroundState)> {
        let sector = SectorBasis::ladder(params.num_rungs, sz_twice)?;
        let h = build_hamiltonian(params, &sector, HamiltonianPart::Total)?;
        let system = eig_biorthogonal(&h)?;
        Ok((sz_twice, ground_state(&system)?))
    });

    let mut winners: Vec<(i32, GroundState)> = Vec::new();
    let mut defective_sectors = Vec::new();
    let mut worst_condition = 0.0f64;
    for (sz_twice, outcome) in szs.iter().zip(per_sector) {
        match outcome {
            Ok(found) => winners.push(found),
            Err(Error::Defective { condition, .. }) => {
                defective_sectors.push(*sz_twice);
                worst_condition = worst_condition.max(condition);
            }
            Err(other) => return Err(other),
        }
    }
    if winners.is_empty() {
        return Err(Error::Defective {
            condition: worst_condition,
            threshold: DEFECTIVE_CONDITION,
        });
    }

    let scale = winners
        .iter()
        .map(|(_, g)| g.pair.eigenvalue.norm())
        .fold(0.0f64, f64::max);
    let min_re = winners
        .iter()
        .map(|(_, g)| g.pair.eigenvalue.re)
        .fold(f64::INFINITY, f64::min);
    let tol = GROUND_TIE_TOL * scale;
    let best = winners
        .iter()
        .enumerate()
        .filter(|(_, (_, g))| g.pair.eigenvalue.re - min_re <= tol)
        .min_by(|(i, (_, a)), (j, (_, b))| {
            let (ea, eb) = (a.pair.eigenvalue, b.pair.eigenvalue);
            ea.im
                .abs()
                .total_cmp(&eb.im.abs())
                .then(ea.im.total_cmp(&eb.im))
                .then(i.cmp(j))
        })
        .map(|(i, _)| i)
        .expect("non-empty winners");

    let (sz_twice, ground) = winners.swap_remove(best);
    Ok(SectorScan { sz_twice, ground, defective_sectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_norm, identity};
    use ndarray::array;
    use proptest::prelude::*;

    fn op(matrix: Array2<Complex64>) -> ComplexOperator {
        ComplexOperator::leg_only(matrix)
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn asymmetric_two_level_system() {
        // [[0, e^Φ], [e^{-Φ}, 0]]: eigenvalues ±1 independent of Φ.
        let phi = 1.0f64;
        let system = eig_biorthogonal(&op(array![
            [re(0.0), re(phi.exp())],
            [re((-phi).exp()), re(0.0)]
        ]))
        .unwrap();
        assert!(!system.defective);
        assert!((system.pairs[0].eigenvalue - re(-1.0)).norm() < 1e-12);
        assert!((system.pairs[1].eigenvalue - re(1.0)).norm() < 1e-12);
        let lr = system.left_matrix().dot(&system.right_matrix());
        assert!(frobenius_norm(&(&lr - &identity(2))) < 1e-12);
    }

    #[test]
    fn identity_matrix_is_not_defective() {
        let system = eig_biorthogonal(&op(identity(4))).unwrap();
        assert!(!system.defective);
        for pair in &system.pairs {
            assert!((pair.eigenvalue - re(1.0)).norm() < 1e-14);
        }
        let completeness: Array2<Complex64> = system.right_matrix().dot(&system.left_matrix());
        assert!(frobenius_norm(&(&completeness - &identity(4))) < 1e-10);
    }

    #[test]
    fn jordan_block_raises_defective_flag() {
        let system = eig_biorthogonal(&op(array![[re(0.0), re(1.0)], [re(0.0), re(0.0)]])).unwrap();
        assert!(system.defective);
        assert!(ground_state(&system).is_err());
    }

    #[test]
    fn hermitian_input_has_conjugate_left_vectors() {
        let m = array![
            [re(1.0), Complex64::new(0.2, 0.5)],
            [Complex64::new(0.2, -0.5), re(-0.7)]
        ];
        let system = eig_biorthogonal(&op(m)).unwrap();
        for pair in &system.pairs {
            assert!(pair.eigenvalue.im.abs() < 1e-10);
            // Unitary eigenbasis: left row = conjugate of right column.
            let defect: f64 = pair
                .left
                .iter()
                .zip(pair.right.iter())
                .map(|(l, r)| (l - r.conj()).norm())
                .fold(0.0, f64::max);
            assert!(defect < 1e-10, "defect {defect}");
        }
    }

    #[test]
    fn ground_state_of_rung_only_two_rungs() {
        // Spectrum {-1.5, 0.25, 0.25, 0.5, ...} in the sz = 0 sector at Δ = 1.
        let params = LadderParams { j_leg: 0.0, ..LadderParams::new(2) };
        let sector = SectorBasis::ladder(2, 0).unwrap();
        let h = build_hamiltonian(&params, &sector, HamiltonianPart::Total).unwrap();
        let system = eig_biorthogonal(&h).unwrap();
        let ground = ground_state(&system).unwrap();
        assert!((ground.pair.eigenvalue - re(-1.5)).norm() < 1e-12);
        assert!(!ground.degenerate);
        assert!(ground.gap > 0.1);
    }

    #[test]
    fn tie_break_prefers_smaller_imaginary_part() {
        let m = Array2::from_diag(&array![
            Complex64::new(-1.0, -0.1),
            Complex64::new(-1.0, 0.1),
            re(0.0)
        ]);
        let system = eig_biorthogonal(&op(m)).unwrap();
        let ground = ground_state(&system).unwrap();
        assert!(ground.degenerate);
        assert_eq!(ground.candidates.len(), 2);
        // |Im| ties at 0.1; deterministic pick is the sort-order first, -1-0.1i.
        assert!((ground.pair.eigenvalue - Complex64::new(-1.0, -0.1)).norm() < 1e-14);
    }

    #[test]
    fn hermitian_ground_state_is_real() {
        let params = LadderParams { j_leg: 1.0, j_rung: 2.0, delta: 0.5, ..LadderParams::new(3) };
        let sector = SectorBasis::ladder(3, 0).unwrap();
        let h = build_hamiltonian(&params, &sector, HamiltonianPart::Total).unwrap();
        let ground = ground_state(&eig_biorthogonal(&h).unwrap()).unwrap();
        assert!(ground.pair.eigenvalue.im.abs() <= 1e-10);
    }

    #[test]
    fn sector_scan_strong_rung_lands_in_sz_zero() {
        let params = LadderParams { j_leg: 1.0, j_rung: 10.0, delta: 0.5, ..LadderParams::new(3) };
        let scan = sector_scan_ground_state(&params).unwrap();
        assert_eq!(scan.sz_twice, 0);
        assert!(scan.defective_sectors.is_empty());
        // Cross-check the winner against a scan-free full-space diagonalization.
        use ndarray_linalg::EigVals;
        let full = crate::model::build_hamiltonian_full(&params, HamiltonianPart::Total).unwrap();
        let full_min = full
            .matrix()
            .eigvals()
            .unwrap()
            .iter()
            .map(|e| e.re)
            .fold(f64::INFINITY, f64::min);
        assert!((scan.ground.pair.eigenvalue.re - full_min).abs() < 1e-9);
    }

    #[test]
    fn sector_scan_rung_only_matches_singlet_energy() {
        let params = LadderParams { j_leg: 0.0, j_rung: 3.0, delta: 0.5, ..LadderParams::new(3) };
        let scan = sector_scan_ground_state(&params).unwrap();
        let expected = -3.0 * 3.0 * (0.5 + 0.5 / 4.0);
        assert!((scan.ground.pair.eigenvalue.re - expected).abs() < 1e-10);
    }

    #[test]
    fn polarized_sector_eigenvalue_is_diagonal_element() {
        let params = LadderParams { j_leg: 1.0, j_rung: 2.0, delta: 0.7, psi: 0.4, ..LadderParams::new(3) };
        let sector = SectorBasis::ladder(3, 6).unwrap();
        assert_eq!(sector.dim(), 1);
        let h = build_hamiltonian(&params, &sector, HamiltonianPart::Total).unwrap();
        let system = eig_biorthogonal(&h).unwrap();
        assert!((system.pairs[0].eigenvalue - h.matrix()[(0, 0)]).norm() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn random_matrices_satisfy_biorthogonality_and_reconstruction(
            seed in proptest::collection::vec(-1.0f64..1.0, 32)
        ) {
            let entries: Vec<Complex64> = seed
                .chunks(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect();
            let m = Array2::from_shape_vec((4, 4), entries).unwrap();
            let system = eig_biorthogonal(&op(m.clone())).unwrap();
            prop_assume!(!system.defective && system.condition < 1e8);

            let lr = system.left_matrix().dot(&system.right_matrix());
            prop_assert!(frobenius_norm(&(&lr - &identity(4))) < 1e-10 * 4.0);

            // R·diag(E)·L reconstructs the input.
            let diag = Array2::from_diag(&system.eigenvalues());
            let rebuilt = system.right_matrix().dot(&diag).dot(&system.left_matrix());
            let err = frobenius_norm(&(&rebuilt - &m)) / frobenius_norm(&m).max(1e-300);
            prop_assert!(err <= 1e-8 * system.condition, "err {} cond {}", err, system.condition);

            // Eigenvalue multiset is transpose-invariant.
            let tsys = eig_biorthogonal(&op(m.t().to_owned())).unwrap();
            for (a, b) in system.eigenvalues().iter().zip(tsys.eigenvalues().iter()) {
                prop_assert!((a - b).norm() < 1e-8 * (1.0 + a.norm()));
            }
        }
    }
}
