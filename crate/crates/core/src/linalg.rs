//! Dense Hermitian spectra and singular values.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `max |A − A^H|` over all entries.
pub fn hermitian_deviation(a: &DMatrix<Complex64>) -> f64 {
    let n = a.nrows();
    if n != a.ncols() {
        return f64::INFINITY;
    }
    let mut dev: f64 = 0.0;
    for j in 0..n {
        for k in j..n {
            dev = dev.max((a[(j, k)] - a[(k, j)].conj()).norm());
        }
    }
    dev
}

fn max_abs(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix in descending order.
///
/// Fails with [`Error::NotHermitian`] when `max |A − A^H| > 1e-10 · max(1, max |A|)`.
pub fn hermitian_eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let deviation = hermitian_deviation(a);
    if deviation > 1e-10 * max_abs(a).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    if a.is_empty() {
        return Ok(Vec::new());
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let sym = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let mut eig: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Singular values in descending order.
pub fn singular_values(a: &DMatrix<Complex64>) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Largest singular value, `0` for an empty matrix.
pub fn largest_singular_value(a: &DMatrix<Complex64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues_of_a_complex_hermitian_matrix() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let a = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let eig = hermitian_eigenvalues(&a).unwrap();
        assert!((eig[0] - 3.0).abs() < 1e-14 && (eig[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(hermitian_eigenvalues(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn singular_value_of_a_nilpotent_block() {
        let a = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 3.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((largest_singular_value(&a) - 3.0).abs() < 1e-14);
        assert_eq!(largest_singular_value(&DMatrix::zeros(0, 0)), 0.0);
    }
}
