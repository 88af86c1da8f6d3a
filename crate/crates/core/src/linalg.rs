//! Small dense-matrix helpers shared across the crate.

use ndarray::Array2;
use num_complex::Complex64;

/// Frobenius norm of a complex matrix.
pub fn frobenius_norm(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Complex identity matrix.
pub fn identity(dim: usize) -> Array2<Complex64> {
    Array2::from_diag_elem(dim, Complex64::new(1.0, 0.0))
}

/// Max entrywise deviation from the conjugate transpose.
pub fn hermiticity_defect(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Matrix exponential by scaling and squaring with a Taylor series.
///
/// Independent of any eigendecomposition, so it can cross-check
/// spectral reconstructions. Accurate to near machine precision for the
/// moderate norms that occur here (dim ≤ 128, ‖A‖ up to a few tens).
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let dim = a.nrows();
    assert_eq!(dim, a.ncols(), "expm needs a square matrix");
    let norm1 = a
        .columns()
        .into_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    // Scale so the Taylor series converges fast: ‖A/2^s‖₁ ≤ 1/2.
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / 2f64.powi(squarings as i32));

    let mut result = identity(dim);
    let mut term = identity(dim);
    for k in 1..=40 {
        term = term.dot(&scaled) / Complex64::new(k as f64, 0.0);
        result += &term;
        if frobenius_norm(&term) < 1e-18 * frobenius_norm(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}
