//! Partial transpose and negativity.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::DensityOperator;
use crate::linalg;

pub const DEFAULT_EIGEN_TOLERANCE: f64 = 1e-12;
const HERMITICITY_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityReport {
    /// E = −2 Σ λ⁻ of the trace-normalized partial transpose.
    pub value: f64,
    /// Eigenvalues below −tolerance, ascending.
    pub negative_eigenvalues: Vec<f64>,
    pub tolerance_used: f64,
    /// Trace that was divided out before the eigenanalysis.
    pub trace_factor: f64,
}

/// Transposes the indices of `modes` (one side of the bipartition).
pub fn partial_transpose(rho: &DensityOperator, modes: &[&str]) -> Result<DensityOperator> {
    let reg = rho.register();
    let positions: Vec<usize> = modes.iter().map(|m| reg.index_of(m)).collect::<Result<_>>()?;
    if positions.is_empty() {
        return Err(Error::DegenerateBipartition("no modes to transpose"));
    }
    if positions.len() >= reg.len() {
        return Err(Error::DegenerateBipartition("every mode transposed"));
    }
    let dim = reg.total_dim();
    let strides = reg.strides();
    let dims = reg.dims();
    // Flat offset contributed by the transposed digits of each index.
    let part: Vec<usize> = (0..dim)
        .map(|idx| positions.iter().map(|&p| (idx / strides[p]) % dims[p] * strides[p]).sum())
        .collect();
    let m = rho.matrix();
    let mut out = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for j in 0..dim {
        for i in 0..dim {
            let ti = i - part[i] + part[j];
            let tj = j - part[j] + part[i];
            out[(ti, tj)] = m[(i, j)];
        }
    }
    DensityOperator::from_matrix(reg.clone(), out)
}

/// Negativity across the cut `bipartition | rest`.
///
/// The input is divided by its trace first, so unnormalized post-selected
/// states can be passed directly. Eigenvalues within `eigen_tolerance` of zero
/// count as zero.
pub fn negativity(
    rho: &DensityOperator,
    bipartition: &[&str],
    eigen_tolerance: f64,
) -> Result<NegativityReport> {
    let trace = rho.trace().re;
    if !(trace > 0.0) {
        return Err(Error::OutOfRange { name: "trace", value: trace, expected: "> 0" });
    }
    let (normalized, _) = rho.normalized();
    let defect = normalized.hermiticity_defect();
    if defect > HERMITICITY_LIMIT {
        return Err(Error::NotHermitian(defect));
    }
    let pt = partial_transpose(&normalized, bipartition)?;
    let negative_eigenvalues: Vec<f64> = linalg::hermitian_eigenvalues(pt.matrix())
        .into_iter()
        .filter(|&l| l < -eigen_tolerance)
        .collect();
    let value = -2.0 * negative_eigenvalues.iter().sum::<f64>();
    Ok(NegativityReport { value, negative_eigenvalues, tolerance_used: eigen_tolerance, trace_factor: trace })
}

/// Shorthand for the value of [`negativity`] at the default tolerance.
pub fn negativity_value(rho: &DensityOperator, bipartition: &[&str]) -> Result<f64> {
    Ok(negativity(rho, bipartition, DEFAULT_EIGEN_TOLERANCE)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_hybrid_pair, make_vsp_bell, tensor_rho, ModeRegister, ModeSpec, VspBell};
    use approx::assert_abs_diff_eq;

    fn ac() -> ModeRegister {
        ModeRegister::new([("A", ModeSpec::Qubit), ("C", ModeSpec::Qubit)]).unwrap()
    }

    fn bell() -> DensityOperator {
        make_vsp_bell(&ac(), "A", "C", VspBell::PhiPlus).unwrap().to_density()
    }

    fn werner(p: f64) -> DensityOperator {
        let m = bell().matrix().map(|z| z * p) + DMatrix::identity(4, 4).map(|z: C64| z * ((1.0 - p) / 4.0));
        DensityOperator::from_matrix(ac(), m).unwrap()
    }

    /// Closed 4×4 eigenvalue oracle for the Werner family: the partial
    /// transpose has eigenvalues (1+p)/4 (×3) and (1−3p)/4.
    fn werner_oracle(p: f64) -> f64 {
        (2.0 * -((1.0 - 3.0 * p) / 4.0)).max(0.0)
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        let r = negativity(&bell(), &["A"], DEFAULT_EIGEN_TOLERANCE).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
        assert_eq!(r.negative_eigenvalues.len(), 1);
        assert_abs_diff_eq!(r.negative_eigenvalues[0], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn product_state_has_zero_negativity() {
        let a = ModeRegister::new([("A", ModeSpec::Qubit)]).unwrap();
        let c = ModeRegister::new([("C", ModeSpec::Qubit)]).unwrap();
        let plus = DMatrix::from_element(2, 2, C64::new(0.5, 0.0));
        let ra = DensityOperator::from_matrix(a, plus).unwrap();
        let rc = DensityOperator::from_matrix(c, DMatrix::from_diagonal_element(2, 2, C64::new(0.5, 0.0))).unwrap();
        let rho = tensor_rho(&ra, &rc).unwrap();
        assert_eq!(negativity_value(&rho, &["C"]).unwrap(), 0.0);
        let pt = partial_transpose(&rho, &["A"]).unwrap();
        assert!(pt.eigenvalues()[0] > -1e-14);
    }

    #[test]
    fn werner_family() {
        for p in [0.2, 0.5, 1.0] {
            assert_abs_diff_eq!(negativity_value(&werner(p), &["A"]).unwrap(), werner_oracle(p), epsilon = 1e-12);
            assert_abs_diff_eq!(werner_oracle(p), ((3.0 * p - 1.0) / 2.0).max(0.0), epsilon = 1e-15);
        }
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let rho = werner(0.7);
        let twice = partial_transpose(&partial_transpose(&rho, &["C"]).unwrap(), &["C"]).unwrap();
        assert_eq!(twice, rho);
        let pt = partial_transpose(&bell(), &["A"]).unwrap();
        assert_abs_diff_eq!(pt.eigenvalues()[0], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_bipartitions_rejected() {
        assert!(matches!(partial_transpose(&bell(), &[]), Err(Error::DegenerateBipartition(_))));
        assert!(matches!(partial_transpose(&bell(), &["A", "C"]), Err(Error::DegenerateBipartition(_))));
    }

    #[test]
    fn unnormalized_input_is_rescaled() {
        let r = negativity(&bell().scaled(0.25), &["A"], DEFAULT_EIGEN_TOLERANCE).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.trace_factor, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = bell().into_matrix();
        m[(0, 1)] = C64::new(0.3, 0.0);
        let rho = DensityOperator::from_matrix(ac(), m).unwrap();
        assert!(matches!(negativity(&rho, &["A"], 1e-12), Err(Error::NotHermitian(_))));
    }

    /// Brute-force closed form for the pure hybrid pair: it is a Schmidt-rank-2
    /// state with coefficients from the eigenvalues (1 ± e^{−2α²})/2 of the
    /// reduced qubit, so E = 2√(λ₊λ₋) = √(1 − e^{−4α²}).
    #[test]
    fn hybrid_pair_negativity_converges() {
        let alpha: f64 = 0.3;
        let value = |cutoff| {
            let reg = ModeRegister::new([("A", ModeSpec::Qubit), ("B", ModeSpec::Bosonic { cutoff })]).unwrap();
            let v = make_hybrid_pair(&reg, "A", "B", C64::new(alpha, 0.0)).unwrap();
            negativity_value(&v.to_density(), &["A"]).unwrap()
        };
        let (e10, e14) = (value(10), value(14));
        assert!((e10 - e14).abs() < 1e-6);
        assert_abs_diff_eq!(e14, (1.0 - (-4.0 * alpha * alpha).exp()).sqrt(), epsilon = 1e-9);
        assert_eq!(
            negativity_value(
                &make_hybrid_pair(
                    &ModeRegister::new([("A", ModeSpec::Qubit), ("B", ModeSpec::Bosonic { cutoff: 6 })]).unwrap(),
                    "A",
                    "B",
                    C64::new(0.0, 0.0)
                )
                .unwrap()
                .to_density(),
                &["A"]
            )
            .unwrap(),
            0.0
        );
    }
}
