// Temporary scout #2: residual structure at N=4 and the N=5 stack issue.
use nhladder::basis::SectorBasis;
use nhladder::eig::{eig_biorthogonal, ground_state};
use nhladder::entanglement::{entanglement_hamiltonian, fit_effective_model, EntanglementHamiltonian};
use nhladder::model::{build_hamiltonian, sum_zz, ComplexOperator, HamiltonianPart, LadderParams};
use nhladder::rdm::biorthogonal_rdm;
use ndarray::Array2;
use num_complex::Complex64;

#[test]
fn residual_of_out_of_span_operator_is_nonzero() {
    // S^z_0 S^z_1 alone (not the translation-symmetric sum) is outside the span.
    let params = LadderParams::new(3);
    let dim = 8;
    let mut m: Array2<Complex64> = Array2::zeros((dim, dim));
    for a in 0..dim {
        let sz = |bit: usize| if a >> bit & 1 == 1 { 0.5 } else { -0.5 };
        m[(a, a)] = Complex64::new(sz(0) * sz(1), 0.0);
    }
    let he = EntanglementHamiltonian {
        matrix: ComplexOperator::leg_only(m),
        ln_z: 3.0 * 2f64.ln(),
        branch_note: false,
        reconstruction_residual: 0.0,
    };
    let fit = fit_effective_model(&he, &params).unwrap();
    println!("out-of-span residual = {:.6e} (sum_zz coeff {:.4})", fit.residual, fit.coeff_zz.re);
    assert!(fit.residual > 0.5);
}

#[test]
fn residual_at_n4() {
    let params = LadderParams { j_leg: 1.0, j_rung: 10.0, delta: 0.5, phi: 0.7, psi: 0.3, ..LadderParams::new(4) };
    let sector = SectorBasis::ladder(4, 0).unwrap();
    let h = build_hamiltonian(&params, &sector, HamiltonianPart::Total).unwrap();
    let gs = ground_state(&eig_biorthogonal(&h).unwrap()).unwrap();
    let rho = biorthogonal_rdm(&gs.pair.right, &gs.pair.left, &sector).unwrap();
    let he = entanglement_hamiltonian(&rho).unwrap();
    let fit = fit_effective_model(&he, &params).unwrap();
    println!("N=4 residual = {:.6e}, beta = {:.6e}", fit.residual, fit.beta_fit.unwrap().re);
    let _ = sum_zz(4, params.boundary);
}

#[test]
fn n5_single_sector_eig() {
    let params = LadderParams { j_leg: 1.0, j_rung: 20.0, delta: 0.5, phi: 0.7, psi: 0.3, ..LadderParams::new(5) };
    let sector = SectorBasis::ladder(5, 0).unwrap();
    println!("sector dim {}", sector.dim());
    let h = build_hamiltonian(&params, &sector, HamiltonianPart::Total).unwrap();
    let t = std::time::Instant::now();
    let sys = eig_biorthogonal(&h).unwrap();
    println!("eig ok in {:?}, condition {:.3e}", t.elapsed(), sys.condition);
    let gs = ground_state(&sys).unwrap();
    println!("E0 = {:.6}", gs.pair.eigenvalue.re);
}
