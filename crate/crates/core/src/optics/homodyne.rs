use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::detectors::{ElementKind, MeasurementElement};
use crate::error::{Error, Result};
use crate::fock::ModeRegister;
use crate::linalg;

/// Harmonic-oscillator eigenfunctions ψ_n(x) = π^{−1/4}(2ⁿn!)^{−1/2}H_n(x)e^{−x²/2}
/// for n = 0..=n_max, via the normalized three-term recurrence.
pub fn hermite_functions(x: f64, n_max: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n_max + 1);
    psi.push(std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp());
    if n_max >= 1 {
        psi.push(std::f64::consts::SQRT_2 * x * psi[0]);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * psi[n] - (nf / (nf + 1.0)).sqrt() * psi[n - 1];
        psi.push(next);
    }
    psi
}

/// Fock components of the bra ⟨x_θ|: ⟨x_θ|n⟩ = e^{−inθ} ψ_n(x).
///
/// The quadrature convention has vacuum wavefunction π^{−1/4}e^{−x²/2}, so
/// that ⟨x_θ|α⟩ = π^{−1/4} exp[−x²/2 + √2 α e^{−iθ} x − (α e^{−iθ})²/2 − |α|²/2].
pub fn quadrature_bra(x: f64, theta: f64, n_max: usize) -> Vec<C64> {
    hermite_functions(x, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, p)| C64::from_polar(p, -(n as f64) * theta))
        .collect()
}

/// Rank-one element |x_θ⟩⟨x_θ| on a bosonic mode. The stored vector is the
/// ket |x_θ⟩, whose components are the conjugates of [`quadrature_bra`].
pub fn homodyne_vector(register: &ModeRegister, mode: &str, x: f64, theta: f64) -> Result<MeasurementElement> {
    let i = register.require_bosonic(mode)?;
    let n_max = register.modes()[i].1.max_occupation();
    let ket = quadrature_bra(x, theta, n_max).into_iter().map(|z| z.conj()).collect();
    Ok(MeasurementElement::from_vector(
        format!("x={x}"),
        mode,
        ElementKind::QuadratureVector,
        ket,
    ))
}

/// Gauss–Legendre grid standing in for the homodyne continuum on [−x_max, x_max].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    x_max: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureGrid {
    pub const DEFAULT_X_MAX: f64 = 6.0;
    pub const DEFAULT_POINTS: usize = 201;

    pub fn new(x_max: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::EmptyGrid);
        }
        if !(x_max > 0.0 && x_max.is_finite()) {
            return Err(Error::OutOfRange { name: "homodyne.x_max", value: x_max, expected: "> 0" });
        }
        let (nodes, weights) = linalg::gauss_legendre(points, -x_max, x_max);
        Ok(Self { x_max, nodes, weights })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// max |Σ_i w_i |x_i⟩⟨x_i| − I| on Fock states n ≤ n_max.
    pub fn completeness_defect(&self, n_max: usize, theta: f64) -> f64 {
        let dim = n_max + 1;
        let mut sum = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for (x, w) in self.iter() {
            let bra = quadrature_bra(x, theta, n_max);
            for r in 0..dim {
                for c in 0..dim {
                    sum[(r, c)] += bra[r].conj() * bra[c] * w;
                }
            }
        }
        (sum - DMatrix::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(Self::DEFAULT_X_MAX, Self::DEFAULT_POINTS).expect("default grid is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_coherent, StateVector};
    use crate::optics::loss::one_mode;
    use approx::assert_abs_diff_eq;

    /// ⟨x_θ|α⟩ written out directly as the closed-form wavefunction.
    fn coherent_wavefunction(x: f64, theta: f64, alpha: C64) -> C64 {
        let z = alpha * C64::from_polar(1.0, -theta);
        let expo = C64::new(-x * x / 2.0, 0.0) + z * (std::f64::consts::SQRT_2 * x)
            - z * z / 2.0
            - alpha.norm_sqr() / 2.0;
        expo.exp() * std::f64::consts::PI.powf(-0.25)
    }

    fn project(state: &StateVector, x: f64, theta: f64) -> C64 {
        let e = homodyne_vector(state.register(), "B", x, theta).unwrap();
        state.contract_mode("B", e.vector().unwrap()).unwrap().amplitudes()[0]
    }

    #[test]
    fn vacuum_wavefunction_any_angle() {
        let r = one_mode("B", 6).unwrap();
        let vac = StateVector::vacuum(&r);
        for theta in [0.0, 0.7, std::f64::consts::FRAC_PI_2] {
            for x in [-1.3, 0.0, 2.1] {
                let amp = project(&vac, x, theta);
                assert_abs_diff_eq!((amp - C64::new(std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)).norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn coherent_amplitude_matches_closed_form() {
        let r = one_mode("B", 20).unwrap();
        for (alpha, theta) in [
            (C64::new(0.5, 0.0), 0.0),
            (C64::new(0.5, 0.0), std::f64::consts::FRAC_PI_2),
            (C64::new(-0.4, 0.3), 1.1),
        ] {
            let coh = make_coherent(&r, "B", alpha).unwrap();
            for x in [-2.0, 0.3, 1.0] {
                let got = project(&coh, x, theta);
                let want = coherent_wavefunction(x, theta, alpha);
                assert_abs_diff_eq!((got - want).norm(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn coherent_density_integrates_to_one() {
        let r = one_mode("B", 16).unwrap();
        let coh = make_coherent(&r, "B", C64::new(0.5, 0.0)).unwrap();
        let grid = QuadratureGrid::default();
        let total: f64 = grid.iter().map(|(x, w)| w * project(&coh, x, 0.0).norm_sqr()).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn default_grid_is_complete_on_low_fock_states() {
        // |x| ≤ 6 holds all but ~1e-6 of ψ_n for n ≤ 8; ψ_12 leaks ~1.6e-4.
        let grid = QuadratureGrid::default();
        assert!(grid.completeness_defect(8, std::f64::consts::FRAC_PI_2) < 1e-6);
        assert!(grid.completeness_defect(12, 0.0) < 2e-4);
        let wide = QuadratureGrid::new(9.0, 301).unwrap();
        assert!(wide.completeness_defect(12, 0.0) < 1e-10);
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(QuadratureGrid::new(6.0, 0), Err(Error::EmptyGrid)));
        assert!(QuadratureGrid::new(-1.0, 10).is_err());
    }

    #[test]
    fn element_is_rank_one_psd() {
        let r = one_mode("B", 8).unwrap();
        let e = homodyne_vector(&r, "B", 0.4, 0.3).unwrap();
        assert!(e.hermiticity_defect() < 1e-14);
        assert!(e.min_eigenvalue() > -1e-12);
        assert_eq!(e.kind(), ElementKind::QuadratureVector);
    }
}
