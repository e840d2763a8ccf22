//! Small dense helpers on top of nalgebra's Hermitian eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

pub(crate) fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn hermitian_part(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Negative eigenvalues from round-off are clamped to zero.
pub(crate) fn psd_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let v = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::new(l.max(0.0).sqrt(), 0.0)));
    v * d * v.adjoint()
}

/// `exp(−i·t·H)` for Hermitian `H` via its eigendecomposition.
pub(crate) fn unitary_exp(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let eig = SymmetricEigen::new(hermitian_part(h));
    let v = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -t * l)));
    v * d * v.adjoint()
}

/// Gauss–Legendre nodes and weights on [a, b] (Golub–Welsch).
pub(crate) fn gauss_legendre(points: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    if points == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut jacobi = DMatrix::<f64>::zeros(points, points);
    for k in 1..points {
        let kf = k as f64;
        let beta = kf / (4.0 * kf * kf - 1.0).sqrt();
        jacobi[(k - 1, k)] = beta;
        jacobi[(k, k - 1)] = beta;
    }
    let eig = SymmetricEigen::new(jacobi);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut pairs: Vec<(f64, f64)> = (0..points)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (mid + half * eig.eigenvalues[i], 2.0 * v0 * v0 * half)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(5, -1.0, 2.0);
        // exact for degree ≤ 9
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        let exact = (2f64.powi(9) + 1.0) / 9.0;
        assert!((integral - exact).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_gaussian() {
        let (x, w) = gauss_legendre(201, -6.0, 6.0);
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * (-x * x).exp()).sum();
        assert!((integral - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = DMatrix::from_row_slice(2, 2, &[
            C64::new(2.0, 0.0), C64::new(0.5, 0.5),
            C64::new(0.5, -0.5), C64::new(1.0, 0.0),
        ]);
        let s = psd_sqrt(&m);
        assert!((&s * &s - &m).norm() < 1e-13);
    }
}
