//! Task execution across sweep points.
//!
//! Each point runs the requested tasks on its own worker; results come back
//! in sweep order regardless of completion order, so reports are identical
//! to a sequential run.

use nhladder::basis::SectorBasis;
use nhladder::eig::sector_scan_ground_state;
use nhladder::entanglement::{
    entanglement_hamiltonian, entanglement_spectrum, fit_effective_model,
    predicted_effective_parameters, ttc_entropies,
};
use nhladder::linalg::frobenius_norm;
use nhladder::model::{spectrum_gauge_check, Boundary, LadderParams, RungType};
use nhladder::parallel::par_map;
use nhladder::perturbation::perturbative_rdm;
use nhladder::rdm::biorthogonal_rdm;
use nhladder::Error as NhError;

use crate::config::{RunConfig, Task};
use crate::report::ResultRow;

/// Φ values probed by the gauge-invariance task.
const GAUGE_PHIS: [f64; 3] = [0.0, 0.5, 1.0];

#[derive(Debug)]
pub enum EngineError {
    /// Defective eigensystem without --allow-defective, or any other
    /// numerical failure. Exit code 3.
    Numerical(String),
    /// Output files could not be written. Exit code 3.
    Io(String),
}

/// Everything produced for one sweep point.
#[derive(Debug, Clone)]
pub struct PointOutcome {
    pub row: ResultRow,
    /// Re ξ_i of the entanglement spectrum, for plotting.
    pub xi_real: Option<Vec<f64>>,
    pub diagnostics: Vec<String>,
}

fn boundary_name(b: Boundary) -> &'static str {
    match b {
        Boundary::Periodic => "periodic",
        Boundary::Open => "open",
    }
}

fn rung_type_name(r: RungType) -> &'static str {
    match r {
        RungType::XxzNonreciprocal => "xxz",
        RungType::HeisenbergIso => "heisenberg",
    }
}

fn blank_row(params: &LadderParams) -> ResultRow {
    ResultRow {
        num_rungs: params.num_rungs,
        j_leg: params.j_leg,
        j_rung: params.j_rung,
        delta: params.delta,
        phi: params.phi,
        psi: params.psi,
        boundary: boundary_name(params.boundary).to_string(),
        rung_type: rung_type_name(params.rung_type).to_string(),
        ground_energy_re: None,
        ground_energy_im: None,
        sz_sector: None,
        s_ttc_re: None,
        s_ttc_im: None,
        renyi2_re: None,
        renyi2_im: None,
        beta_fit_re: None,
        beta_fit_im: None,
        beta_pred: None,
        delta_tilde_fit_re: None,
        delta_tilde_fit_im: None,
        delta_tilde_pred: None,
        fit_residual: None,
        rdm_distance: None,
        defective: false,
    }
}

/// True for errors that mean "exceptional point in the way" rather than a
/// programming or configuration problem.
fn is_defectiveness(error: &NhError) -> bool {
    matches!(error, NhError::Defective { .. } | NhError::ZeroEigenvalue { .. })
}

fn evaluate_point(
    index: usize,
    params: &LadderParams,
    tasks: &[Task],
    allow_defective: bool,
) -> Result<PointOutcome, EngineError> {
    let mut row = blank_row(params);
    let mut diagnostics = Vec::new();
    let mut xi_real = None;

    if tasks.contains(&Task::FitBeta) {
        if let Ok((beta, delta_tilde)) = predicted_effective_parameters(params) {
            row.beta_pred = Some(beta);
            row.delta_tilde_pred = Some(delta_tilde);
        }
    }

    let needs_ground = tasks.iter().any(|t| {
        matches!(
            t,
            Task::Spectrum | Task::Rdm | Task::Entanglement | Task::FitBeta | Task::PerturbCheck
        )
    });

    let bail = |row: ResultRow, mut diags: Vec<String>, error: &NhError| {
        if allow_defective {
            let mut flagged = row;
            flagged.defective = true;
            diags.push(format!("point {index}: defective system: {error}"));
            Ok(PointOutcome { row: flagged, xi_real: None, diagnostics: diags })
        } else {
            Err(EngineError::Numerical(format!(
                "point {index}: defective system (rerun with --allow-defective to continue): {error}"
            )))
        }
    };

    if needs_ground {
        let scan = match sector_scan_ground_state(params) {
            Ok(scan) => scan,
            Err(e) if is_defectiveness(&e) => return bail(row, diagnostics, &e),
            Err(e) => return Err(EngineError::Numerical(format!("point {index}: {e}"))),
        };
        if !scan.defective_sectors.is_empty() {
            row.defective = true;
            diagnostics.push(format!(
                "point {index}: defective sectors skipped: 2·S^z in {:?}",
                scan.defective_sectors
            ));
            if !allow_defective {
                return Err(EngineError::Numerical(format!(
                    "point {index}: {} defective sector(s) encountered (rerun with --allow-defective)",
                    scan.defective_sectors.len()
                )));
            }
        }
        let energy = scan.ground.pair.eigenvalue;
        row.ground_energy_re = Some(energy.re);
        row.ground_energy_im = Some(energy.im);
        row.sz_sector = Some(scan.sz_twice / 2);
        if scan.ground.degenerate {
            diagnostics.push(format!(
                "point {index}: ground state degenerate within tolerance, candidates {:?}",
                scan.ground.candidates
            ));
        }
        diagnostics.push(format!(
            "point {index}: ground energy {:+.12e} {:+.12e}i in sector sz={}",
            energy.re,
            energy.im,
            scan.sz_twice / 2
        ));

        let needs_rdm = tasks.iter().any(|t| {
            matches!(t, Task::Rdm | Task::Entanglement | Task::FitBeta | Task::PerturbCheck)
        });
        if needs_rdm {
            let sector = SectorBasis::ladder(params.num_rungs, scan.sz_twice)
                .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
            let rho = biorthogonal_rdm(&scan.ground.pair.right, &scan.ground.pair.left, &sector)
                .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
            diagnostics.push(format!(
                "point {index}: RDM trace residual {:.3e}",
                rho.trace_residual()
            ));

            if tasks.contains(&Task::Entanglement) {
                match entanglement_spectrum(&rho) {
                    Ok(spectrum) => {
                        let report = ttc_entropies(&spectrum, &[2.0])
                            .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
                        row.s_ttc_re = Some(report.s_ttc.re);
                        row.s_ttc_im = Some(report.s_ttc.im);
                        if let Some(renyi2) = report.renyi_at(2.0) {
                            row.renyi2_re = Some(renyi2.re);
                            row.renyi2_im = Some(renyi2.im);
                        }
                        xi_real = Some(spectrum.xi_real.clone());
                    }
                    Err(e) if is_defectiveness(&e) => return bail(row, diagnostics, &e),
                    Err(e) => return Err(EngineError::Numerical(format!("point {index}: {e}"))),
                }
            }

            if tasks.contains(&Task::FitBeta) {
                match entanglement_hamiltonian(&rho) {
                    Ok(he) => {
                        if he.branch_note {
                            diagnostics.push(format!(
                                "point {index}: matrix logarithm near the ±π branch cut; Im ξ ambiguous"
                            ));
                        }
                        let fit = fit_effective_model(&he, params)
                            .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
                        if let Some(beta) = fit.beta_fit {
                            row.beta_fit_re = Some(beta.re);
                            row.beta_fit_im = Some(beta.im);
                        }
                        if let Some(dt) = fit.delta_tilde_fit {
                            row.delta_tilde_fit_re = Some(dt.re);
                            row.delta_tilde_fit_im = Some(dt.im);
                        }
                        row.fit_residual = Some(fit.residual);
                        diagnostics.push(format!(
                            "point {index}: tomography residual {:.3e}, reconstruction residual {:.3e}",
                            fit.residual, he.reconstruction_residual
                        ));
                    }
                    Err(e) if is_defectiveness(&e) => return bail(row, diagnostics, &e),
                    Err(e) => return Err(EngineError::Numerical(format!("point {index}: {e}"))),
                }
            }

            if tasks.contains(&Task::PerturbCheck) {
                let oracle = perturbative_rdm(params)
                    .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
                let distance = frobenius_norm(&(rho.matrix() - oracle.matrix()));
                row.rdm_distance = Some(distance);
                diagnostics.push(format!(
                    "point {index}: ‖ρ_ED − ρ_pert‖_F = {distance:.6e}"
                ));
            }
        }
    }

    if tasks.contains(&Task::GaugeCheck) {
        let mut phis = GAUGE_PHIS.to_vec();
        if GAUGE_PHIS.iter().all(|&p| (p - params.phi).abs() > 1e-12) {
            phis.push(params.phi);
        }
        let sector = SectorBasis::ladder(params.num_rungs, 0)
            .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
        let deviation = spectrum_gauge_check(params, &sector, &phis)
            .map_err(|e| EngineError::Numerical(format!("point {index}: {e}")))?;
        diagnostics.push(format!(
            "point {index}: gauge check over Φ ∈ {phis:?}: max spectral deviation {deviation:.3e}"
        ));
    }

    Ok(PointOutcome { row, xi_real, diagnostics })
}

/// Run every sweep point, fanning out across workers, results in sweep order.
pub fn run_all_points(
    config: &RunConfig,
    allow_defective: bool,
) -> Result<Vec<PointOutcome>, EngineError> {
    let points = config.points();
    let indexed: Vec<(usize, LadderParams)> = points.into_iter().enumerate().collect();
    let outcomes = par_map(&indexed, |(index, params)| {
        evaluate_point(*index, params, &config.tasks, allow_defective)
    });
    outcomes.into_iter().collect()
}
