use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{coherent_amplitudes, ModeRegister, ModeSpec, StateVector};
use crate::optics::{BeamSplitter, BeamSplitterParams};

/// Probability, averaged over the four coherent-state Bell states
/// N±(|α,α⟩ ± |−α,−α⟩) and N±(|α,−α⟩ ± |−α,α⟩), that both outputs of a
/// balanced beam splitter are empty. Those events cannot be told apart and
/// make the Bell measurement fail.
pub fn cv_bsm_failure_prob(alpha: f64, cutoff: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "> 0" });
    }
    let reg = ModeRegister::new([("a", ModeSpec::bosonic(cutoff)?), ("b", ModeSpec::bosonic(cutoff)?)])?;
    let (plus, _) = coherent_amplitudes(C64::new(alpha, 0.0), cutoff);
    let (minus, _) = coherent_amplitudes(C64::new(-alpha, 0.0), cutoff);
    let product = |x: &[C64], y: &[C64]| -> Vec<C64> { x.iter().flat_map(|u| y.iter().map(move |v| u * v)).collect() };
    let overlap = (-4.0 * alpha * alpha).exp();
    let bs = BeamSplitter::new(BeamSplitterParams::balanced(), cutoff + 1, cutoff + 1);

    let mut total = 0.0;
    for (first, second) in [(product(&plus, &plus), product(&minus, &minus)), (product(&plus, &minus), product(&minus, &plus))] {
        for sign in [1.0, -1.0] {
            let norm = (2.0 + sign * 2.0 * overlap).powf(-0.5);
            let amps = first.iter().zip(&second).map(|(u, v)| (u + v * sign) * norm).collect();
            let out = bs.apply(&StateVector::from_amplitudes(reg.clone(), amps, 0.0)?, "a", "b")?;
            total += out.amplitudes()[0].norm_sqr();
        }
    }
    Ok(total / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::cv_bsm_failure;
    use approx::assert_abs_diff_eq;

    #[test]
    fn matches_closed_form() {
        assert_abs_diff_eq!(cv_bsm_failure_prob(1.0, 20).unwrap(), cv_bsm_failure(1.0), epsilon = 1e-4);
        assert_abs_diff_eq!(cv_bsm_failure(1.0), 0.13290, epsilon = 1e-5);
    }

    #[test]
    fn vanishes_for_large_amplitude() {
        assert!(cv_bsm_failure_prob(3.0, 40).unwrap() < 1e-7);
    }

    #[test]
    fn approaches_one_half_for_small_amplitude() {
        assert_abs_diff_eq!(cv_bsm_failure_prob(0.05, 8).unwrap(), 0.5, epsilon = 1e-4);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(cv_bsm_failure_prob(0.0, 8).is_err());
    }
}
