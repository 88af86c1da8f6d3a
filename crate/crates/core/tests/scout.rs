// Temporary scouting run to read off pipeline magnitudes before freezing
// acceptance tolerances. Deleted before the final commit.

use nhladder::basis::SectorBasis;
use nhladder::eig::sector_scan_ground_state;
use nhladder::entanglement::{
    entanglement_hamiltonian, entanglement_spectrum, fit_effective_model,
    predicted_effective_parameters, ttc_entropies,
};
use nhladder::linalg::frobenius_norm;
use nhladder::model::LadderParams;
use nhladder::perturbation::perturbative_rdm;
use nhladder::rdm::{biorthogonal_rdm, ReducedDensityMatrix};

fn pipeline(params: &LadderParams) -> (ReducedDensityMatrix, f64) {
    let scan = sector_scan_ground_state(params).unwrap();
    let sector = SectorBasis::ladder(params.num_rungs, scan.sz_twice).unwrap();
    let rho = biorthogonal_rdm(&scan.ground.pair.right, &scan.ground.pair.left, &sector).unwrap();
    (rho, scan.ground.pair.eigenvalue.re)
}

#[test]
fn scout() {
    let base = LadderParams { j_leg: 1.0, j_rung: 10.0, delta: 0.5, phi: 0.7, psi: 0.3, ..LadderParams::new(3) };

    println!("=== convergence sweep N=3 d=0.5 psi=0.3 phi=0.7 ===");
    let mut dists = Vec::new();
    let mut beta_errs = Vec::new();
    let mut residuals = Vec::new();
    for j_rung in [10.0, 20.0, 40.0, 80.0] {
        let params = LadderParams { j_rung, ..base };
        let (rho, e0) = pipeline(&params);
        let oracle = perturbative_rdm(&params).unwrap();
        let dist = frobenius_norm(&(rho.matrix() - oracle.matrix()));
        let he = entanglement_hamiltonian(&rho).unwrap();
        let fit = fit_effective_model(&he, &params).unwrap();
        let (beta_pred, dt_pred) = predicted_effective_parameters(&params).unwrap();
        let beta = fit.beta_fit.unwrap();
        let psi = fit.psi_fit.unwrap();
        let dt = fit.delta_tilde_fit.unwrap();
        println!(
            "J={j_rung:5}: E0={e0:.6} dist={dist:.6e} beta=({:.6e},{:.6e}) pred={beta_pred:.6e} err={:.3e} psi=({:.5},{:.2e}) dt=({:.5},{:.2e}) dtpred={dt_pred} resid={:.3e} recon={:.3e} branch={}",
            beta.re, beta.im, (beta.re - beta_pred).abs(), psi.re, psi.im, dt.re, dt.im, fit.residual, he.reconstruction_residual, he.branch_note
        );
        dists.push(dist);
        beta_errs.push((beta.re - beta_pred).abs());
        residuals.push(fit.residual);
    }
    for k in 0..3 {
        println!(
            "ratio step {k}: dist {:.3}, beta_err {:.3}, residual {:.3}",
            dists[k] / dists[k + 1],
            beta_errs[k] / beta_errs[k + 1],
            residuals[k] / residuals[k + 1]
        );
    }

    println!("=== criterion 4/5/6 at J=50 ===");
    for delta in [0.5, 1.0, 0.0] {
        let params = LadderParams { j_rung: 50.0, delta, ..base };
        let (rho, _) = pipeline(&params);
        let he = entanglement_hamiltonian(&rho).unwrap();
        let fit = fit_effective_model(&he, &params).unwrap();
        let (beta_pred, dt_pred) = predicted_effective_parameters(&params).unwrap();
        let beta = fit.beta_fit.unwrap();
        let psi = fit.psi_fit.unwrap();
        let dt = fit.delta_tilde_fit.unwrap();
        println!(
            "delta={delta}: beta=({:.6e},{:.2e}) pred={beta_pred:.6e} relerr={:.4} psi=({:.5}) dt=({:.5},{:.2e}) pred={dt_pred} resid={:.4e}",
            beta.re, beta.im, (beta.re - beta_pred).abs() / beta_pred, psi.re, dt.re, dt.im, fit.residual
        );
    }

    println!("=== criterion 7: psi=0 phi=0.7 J=10 ===");
    let params = LadderParams { psi: 0.0, ..base };
    let (rho, _) = pipeline(&params);
    let spec = entanglement_spectrum(&rho).unwrap();
    let min_re = spec.omegas.iter().map(|w| w.re).fold(f64::INFINITY, f64::min);
    println!("im_max={:.3e} min Re omega={:.6e}", spec.im_max, min_re);

    println!("=== criterion 10 points: complex omega check ===");
    let (rho, _) = pipeline(&base);
    let spec = entanglement_spectrum(&rho).unwrap();
    println!("base point im_max={:.6e}", spec.im_max);
    let report = ttc_entropies(&spec, &[1.001, 2.0]).unwrap();
    println!(
        "S_TTC=({:.8},{:.2e}) S(1.001)=({:.8}) diff={:.3e}",
        report.s_ttc.re,
        report.s_ttc.im,
        report.renyi_at(1.001).unwrap().re,
        (report.renyi_at(1.001).unwrap() - report.s_ttc).norm()
    );

    println!("=== criterion 2: gauge invariance rdm ===");
    let p5 = LadderParams { j_rung: 5.0, phi: 0.0, ..base };
    let (rho0, _) = pipeline(&p5);
    for phi in [0.5, 1.0] {
        let (rho_phi, _) = pipeline(&LadderParams { phi, ..p5 });
        let d = (rho_phi.matrix() - rho0.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        println!("phi={phi}: rdm max diff={d:.3e}");
    }

    println!("=== sector scan timing sanity N=5 ===");
    let t = std::time::Instant::now();
    let params5 = LadderParams { j_rung: 20.0, ..LadderParams { num_rungs: 5, ..base } };
    let scan = sector_scan_ground_state(&params5).unwrap();
    println!("N=5 scan: E0={:.6} sz={} in {:?}", scan.ground.pair.eigenvalue.re, scan.sz_twice, t.elapsed());

    let t = std::time::Instant::now();
    let params6 = LadderParams { j_rung: 20.0, ..LadderParams { num_rungs: 6, ..base } };
    let scan = sector_scan_ground_state(&params6).unwrap();
    println!("N=6 scan: E0={:.6} sz={} in {:?}", scan.ground.pair.eigenvalue.re, scan.sz_twice, t.elapsed());
}
