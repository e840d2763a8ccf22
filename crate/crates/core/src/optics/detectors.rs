use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::loss::LossChannel;
use crate::error::{check_unit_interval, Error, Result};
use crate::fock::{DensityOperator, ModeRegister, StateVector};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Projector,
    PovmElement,
    /// Rank-one |x_θ⟩⟨x_θ| from a continuous quadrature outcome.
    QuadratureVector,
}

/// A labelled positive operator acting on one named mode.
#[derive(Debug, Clone)]
pub struct MeasurementElement {
    label: String,
    mode: String,
    kind: ElementKind,
    operator: DMatrix<C64>,
    vector: Option<Vec<C64>>,
}

impl MeasurementElement {
    pub fn new(
        label: impl Into<String>,
        mode: impl Into<String>,
        kind: ElementKind,
        operator: DMatrix<C64>,
    ) -> Self {
        Self { label: label.into(), mode: mode.into(), kind, operator, vector: None }
    }

    /// Rank-one element |v⟩⟨v|, keeping `v` for cheap contractions.
    pub fn from_vector(
        label: impl Into<String>,
        mode: impl Into<String>,
        kind: ElementKind,
        vector: Vec<C64>,
    ) -> Self {
        let v = nalgebra::DVector::from_column_slice(&vector);
        let operator = &v * v.adjoint();
        Self { label: label.into(), mode: mode.into(), kind, operator, vector: Some(vector) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mode(&self) -> &str {
        &self.mode
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn operator(&self) -> &DMatrix<C64> {
        &self.operator
    }

    /// The ket |v⟩ of a rank-one element, if it was built from one.
    pub fn vector(&self) -> Option<&[C64]> {
        self.vector.as_deref()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.operator)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.operator)[0]
    }

    /// A measurement operator M with M†M = E. Projectors are their own root;
    /// other elements use the positive square root.
    pub fn kraus_root(&self) -> DMatrix<C64> {
        match self.kind {
            ElementKind::Projector => self.operator.clone(),
            _ => linalg::psd_sqrt(&self.operator),
        }
    }

    /// ⟨ψ|E|ψ⟩ (unnormalized states give unnormalized probabilities).
    pub fn probability(&self, state: &StateVector) -> Result<f64> {
        let root = self.kraus_root();
        Ok(state.apply_mode_operator(&self.mode, &root)?.norm_sqr())
    }

    pub fn probability_rho(&self, rho: &DensityOperator) -> Result<f64> {
        Ok(rho.trace_out_with(&self.mode, &self.operator)?.trace().re)
    }

    /// M|ψ⟩ with M the Kraus root; the measured mode stays in the register.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        state.apply_mode_operator(&self.mode, &self.kraus_root())
    }

    /// Conditional state of the other modes, tr_mode[E ρ] (unnormalized).
    pub fn condition(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        rho.trace_out_with(&self.mode, &self.operator)
    }
}

fn mode_dim(register: &ModeRegister, mode: &str) -> Result<usize> {
    let i = register.require_bosonic(mode)?;
    Ok(register.modes()[i].1.dim())
}

fn number_projector(dim: usize, ns: impl IntoIterator<Item = usize>) -> DMatrix<C64> {
    let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for n in ns {
        m[(n, n)] = C64::new(1.0, 0.0);
    }
    m
}

/// Photon-number-resolving detector: |n⟩⟨n| for n ≤ n_max, plus a single
/// "n>n_max" remainder when n_max is below the cutoff.
pub fn pnr_elements(register: &ModeRegister, mode: &str, n_max: usize) -> Result<Vec<MeasurementElement>> {
    let dim = mode_dim(register, mode)?;
    let top = n_max.min(dim - 1);
    let mut out: Vec<MeasurementElement> = (0..=top)
        .map(|n| {
            MeasurementElement::new(n.to_string(), mode, ElementKind::Projector, number_projector(dim, [n]))
        })
        .collect();
    if top + 1 < dim {
        out.push(MeasurementElement::new(
            format!("{}+", top + 1),
            mode,
            ElementKind::Projector,
            number_projector(dim, top + 1..dim),
        ));
    }
    Ok(out)
}

/// On-off (threshold) detector: {P₀ = |0⟩⟨0|, P≠0 = 1 − |0⟩⟨0|}.
pub fn onoff_elements(register: &ModeRegister, mode: &str) -> Result<Vec<MeasurementElement>> {
    let dim = mode_dim(register, mode)?;
    Ok(vec![
        MeasurementElement::new("off", mode, ElementKind::Projector, number_projector(dim, [0])),
        MeasurementElement::new("on", mode, ElementKind::Projector, number_projector(dim, 1..dim)),
    ])
}

/// Single-photon detector: {P₀, P₁, 1 − P₀ − P₁}.
pub fn spd_elements(register: &ModeRegister, mode: &str) -> Result<Vec<MeasurementElement>> {
    let dim = mode_dim(register, mode)?;
    Ok(vec![
        MeasurementElement::new("0", mode, ElementKind::Projector, number_projector(dim, [0])),
        MeasurementElement::new("1", mode, ElementKind::Projector, number_projector(dim, [1])),
        MeasurementElement::new("2+", mode, ElementKind::Projector, number_projector(dim, 2..dim)),
    ])
}

/// Detector of efficiency T′: each element becomes Σ_k A_k† E A_k with A_k the
/// Kraus operators of loss T′, which is the same as placing that loss right in
/// front of the ideal detector.
pub fn with_inefficiency(elements: &[MeasurementElement], t_prime: f64) -> Result<Vec<MeasurementElement>> {
    check_unit_interval("T_prime", t_prime)?;
    if t_prime == 1.0 {
        return Ok(elements.to_vec());
    }
    elements
        .iter()
        .map(|e| {
            let dim = e.operator.nrows();
            if dim < 2 {
                return Err(Error::OperatorShape { expected: 2, got: dim });
            }
            let channel = LossChannel::new(t_prime, dim - 1)?;
            let operator = channel
                .kraus()
                .iter()
                .fold(DMatrix::zeros(dim, dim), |acc: DMatrix<C64>, a| acc + a.adjoint() * &e.operator * a);
            Ok(MeasurementElement::new(e.label.clone(), e.mode.clone(), ElementKind::PovmElement, operator))
        })
        .collect()
}

/// max |Σ E − I| over a finite detector set.
pub fn completeness_defect(elements: &[MeasurementElement]) -> f64 {
    let Some(first) = elements.first() else {
        return f64::INFINITY;
    };
    let dim = first.operator.nrows();
    let sum = elements.iter().fold(DMatrix::zeros(dim, dim), |acc: DMatrix<C64>, e| acc + &e.operator);
    (sum - DMatrix::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_cat, make_coherent, make_fock, overlap, Parity};
    use crate::optics::loss::one_mode;
    use approx::assert_abs_diff_eq;

    #[test]
    fn every_set_is_complete() {
        let r = one_mode("B", 9).unwrap();
        for set in [
            pnr_elements(&r, "B", 9).unwrap(),
            pnr_elements(&r, "B", 3).unwrap(),
            onoff_elements(&r, "B").unwrap(),
            spd_elements(&r, "B").unwrap(),
        ] {
            assert!(completeness_defect(&set) < 1e-12);
            for e in &set {
                assert!(e.hermiticity_defect() < 1e-12);
                assert!(e.min_eigenvalue() > -1e-12);
            }
        }
        assert_eq!(pnr_elements(&r, "B", 20).unwrap().len(), 10);
    }

    #[test]
    fn onoff_on_vacuum() {
        let r = one_mode("B", 4).unwrap();
        let set = onoff_elements(&r, "B").unwrap();
        let vac = StateVector::vacuum(&r);
        assert_eq!(set[0].probability(&vac).unwrap(), 1.0);
        assert_eq!(set[1].probability(&vac).unwrap(), 0.0);
    }

    #[test]
    fn spd_single_click_on_odd_cat() {
        let r = one_mode("B", 12).unwrap();
        let cat = make_cat(&r, "B", C64::new(0.3, 0.0), Parity::Odd).unwrap();
        let one = make_fock(&r, &[("B", 1)]).unwrap();
        let p = spd_elements(&r, "B").unwrap()[1].probability(&cat).unwrap();
        assert_abs_diff_eq!(p, overlap(&one, &cat).unwrap().norm_sqr(), epsilon = 1e-15);
    }

    #[test]
    fn inefficient_onoff_click_probability() {
        let r = one_mode("B", 14).unwrap();
        let alpha: f64 = 0.8;
        let t_prime: f64 = 0.6;
        let coh = make_coherent(&r, "B", C64::new(alpha, 0.0)).unwrap();
        let set = with_inefficiency(&onoff_elements(&r, "B").unwrap(), t_prime).unwrap();
        assert!(completeness_defect(&set) < 1e-12);
        let p_on = set[1].probability(&coh).unwrap();
        assert_abs_diff_eq!(p_on, 1.0 - (-t_prime * alpha * alpha).exp(), epsilon = 1e-10);
        let rho = coh.to_density();
        assert_abs_diff_eq!(set[1].probability_rho(&rho).unwrap(), p_on, epsilon = 1e-12);
    }

    #[test]
    fn unit_efficiency_leaves_detector_unchanged() {
        let r = one_mode("B", 5).unwrap();
        let set = spd_elements(&r, "B").unwrap();
        let same = with_inefficiency(&set, 1.0).unwrap();
        for (a, b) in set.iter().zip(&same) {
            assert_eq!(a.operator(), b.operator());
            assert_eq!(a.kind(), b.kind());
        }
        assert!(with_inefficiency(&set, 1.2).is_err());
    }

    #[test]
    fn inefficient_elements_are_diagonal_number_filters() {
        let r = one_mode("B", 6).unwrap();
        let set = with_inefficiency(&spd_elements(&r, "B").unwrap(), 0.7).unwrap();
        let (p0, p1) = (&set[0], &set[1]);
        for n in 0..7 {
            let n_f = n as f64;
            assert_abs_diff_eq!(p0.operator()[(n, n)].re, 0.3f64.powi(n as i32), epsilon = 1e-14);
            let expected = if n == 0 { 0.0 } else { n_f * 0.7 * 0.3f64.powi(n as i32 - 1) };
            assert_abs_diff_eq!(p1.operator()[(n, n)].re, expected, epsilon = 1e-14);
        }
    }
}
