use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::swap::{hybrid_initial, lossy_branches, mix_bd};
use super::{check_params, record, ParamsEcho, SwapResult, MODE_A, MODE_B, MODE_C, MODE_D, MODE_E};
use crate::analytic::Scheme;
use crate::entanglement;
use crate::error::{Error, Result};
use crate::fock::{make_coherent, single_mode, tensor, DensityOperator, StateVector};
use crate::optics::{
    homodyne_vector, onoff_elements, with_inefficiency, BeamSplitter, BeamSplitterParams, LossChannel,
    QuadratureGrid,
};

const HOMODYNE_ANGLE: f64 = std::f64::consts::FRAC_PI_2;

/// Unnormalized state of (A, C, D) after both on-off detectors clicked, with
/// the loss of the homodyne detector already applied to D.
fn heralded_acd(alpha: f64, t: f64, t_prime: f64, cutoff: usize) -> Result<DensityOperator> {
    let mut branches = lossy_branches(&hybrid_initial(alpha, cutoff)?, t, cutoff)?;
    mix_bd(&mut branches, cutoff)?;

    let ancilla_reg = single_mode(MODE_E, cutoff)?;
    let ancilla = make_coherent(&ancilla_reg, MODE_E, C64::new((2.0 * t).sqrt() * alpha, 0.0))?;
    let bs = BeamSplitter::new(BeamSplitterParams::balanced(), cutoff + 1, cutoff + 1);

    let mut rho: Option<DensityOperator> = None;
    let mut roots: Option<(DMatrix<C64>, DMatrix<C64>)> = None;
    for b in &branches {
        let v = bs.apply(&tensor(b, &ancilla)?, MODE_B, MODE_E)?;
        if roots.is_none() {
            let reg = v.register();
            let on_b = with_inefficiency(&onoff_elements(reg, MODE_B)?, t_prime)?;
            let on_e = with_inefficiency(&onoff_elements(reg, MODE_E)?, t_prime)?;
            roots = Some((on_b[1].kraus_root(), on_e[1].kraus_root()));
        }
        let (rb, re) = roots.as_ref().expect("set above");
        let mut v = v.apply_mode_operator(MODE_B, rb)?;
        v.apply_mode_operator_in_place(MODE_E, re)?;
        let part = v.reduced_density(&[MODE_A, MODE_C, MODE_D])?;
        match rho.as_mut() {
            Some(r) => r.add_assign(&part)?,
            None => rho = Some(part),
        }
    }
    let rho = rho.expect("loss unravelling keeps at least one branch");
    LossChannel::new(t_prime, cutoff)?.apply(&rho, MODE_D)
}

/// tr_D[|x⟩⟨x| ρ] for the x̂_{π/2} quadrature; a probability density in x.
fn condition_on(rho_acd: &DensityOperator, x: f64) -> Result<DensityOperator> {
    let e = homodyne_vector(rho_acd.register(), MODE_D, x, HOMODYNE_ANGLE)?;
    e.condition(rho_acd)
}

/// Phase imprinted on |11⟩ relative to |00⟩ by a homodyne outcome x when the
/// coherent amplitude reaching the detector is √(2·t_eff)·α.
pub fn feed_forward_phase(alpha: f64, t_eff: f64, x: f64) -> f64 {
    4.0 * t_eff.sqrt() * alpha * x
}

fn phase_gate(phi: f64) -> DMatrix<C64> {
    let mut g = DMatrix::identity(2, 2);
    g[(1, 1)] = C64::from_polar(1.0, -phi);
    g
}

/// Applies diag(1, e^{−iφ}) on the qubit `mode`, φ = [`feed_forward_phase`].
pub fn feed_forward_correction(
    rho: &DensityOperator,
    mode: &str,
    alpha: f64,
    t_eff: f64,
    x: f64,
) -> Result<DensityOperator> {
    rho.register().require_qubit(mode)?;
    rho.apply_mode_operator(mode, &phase_gate(feed_forward_phase(alpha, t_eff, x)))
}

pub fn feed_forward_correction_state(
    state: &StateVector,
    mode: &str,
    alpha: f64,
    t_eff: f64,
    x: f64,
) -> Result<StateVector> {
    state.register().require_qubit(mode)?;
    state.apply_mode_operator(mode, &phase_gate(feed_forward_phase(alpha, t_eff, x)))
}

/// Uncorrected state of (A, C) for the single homodyne outcome `x`,
/// normalized, together with its probability density (both clicks included).
pub fn homodyne_conditional_state(
    alpha: f64,
    t: f64,
    t_prime: f64,
    cutoff: usize,
    x: f64,
) -> Result<(DensityOperator, f64)> {
    check_params(alpha, t, t_prime, cutoff, 1)?;
    let rho = condition_on(&heralded_acd(alpha, t, t_prime, cutoff)?, x)?;
    let density = rho.trace().re;
    Ok((rho.normalized().0, density))
}

/// Weighted sum over the grid of the corrected conditional states, with the
/// correction phase κ·α·x.
fn corrected_average(rho_acd: &DensityOperator, alpha: f64, kappa: f64, grid: &QuadratureGrid) -> Result<DensityOperator> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut sum: Option<DensityOperator> = None;
    for (x, w) in grid.iter() {
        let cond = condition_on(rho_acd, x)?.apply_mode_operator(MODE_C, &phase_gate(kappa * alpha * x))?;
        let cond = cond.scaled(w);
        match sum.as_mut() {
            Some(s) => s.add_assign(&cond)?,
            None => sum = Some(cond),
        }
    }
    Ok(sum.expect("grid is non-empty"))
}

/// Hybrid swapping with on-off detectors and a homodyne measurement.
///
/// B and D meet on a balanced beam splitter; B is then mixed with an ancilla
/// |√(2T)α⟩ and both outputs must click. D is measured in x̂_{π/2} and every
/// outcome is accepted after the feed-forward phase correction on C. Each of
/// the three detectors sits behind a loss T′.
pub fn he_swap_homodyne(alpha: f64, t: f64, t_prime: f64, cutoff: usize, grid: &QuadratureGrid) -> Result<SwapResult> {
    check_params(alpha, t, t_prime, cutoff, 1)?;
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let rho_acd = heralded_acd(alpha, t, t_prime, cutoff)?;
    let kappa = 4.0 * (t * t_prime).sqrt();
    let rho_ac = corrected_average(&rho_acd, alpha, kappa, grid)?;
    let echo = ParamsEcho { scheme: Scheme::HeHo, alpha, t, t_prime, cutoff };
    Ok(SwapResult::from_outcomes(vec![record("on,on", rho_ac)?], echo))
}

/// Negativity of the averaged state as a function of the feed-forward
/// coefficient κ in φ = κ·α·x.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedForwardScan {
    pub coefficients: Vec<f64>,
    pub negativities: Vec<f64>,
    pub best_coefficient: f64,
    pub best_negativity: f64,
    /// The coefficient used by [`he_swap_homodyne`], 4√(TT′).
    pub nominal_coefficient: f64,
}

pub fn scan_feed_forward(
    alpha: f64,
    t: f64,
    t_prime: f64,
    cutoff: usize,
    grid: &QuadratureGrid,
    coefficients: &[f64],
) -> Result<FeedForwardScan> {
    check_params(alpha, t, t_prime, cutoff, 1)?;
    let rho_acd = heralded_acd(alpha, t, t_prime, cutoff)?;
    let negativities = coefficients
        .iter()
        .map(|&k| {
            let rho = corrected_average(&rho_acd, alpha, k, grid)?;
            entanglement::negativity_value(&rho, &[MODE_A])
        })
        .collect::<Result<Vec<_>>>()?;
    let (best_coefficient, best_negativity) = coefficients
        .iter()
        .zip(&negativities)
        .fold((f64::NAN, f64::NEG_INFINITY), |best, (&k, &e)| if e > best.1 { (k, e) } else { best });
    Ok(FeedForwardScan {
        coefficients: coefficients.to_vec(),
        negativities,
        best_coefficient,
        best_negativity,
        nominal_coefficient: 4.0 * (t * t_prime).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use crate::fock::{ModeRegister, ModeSpec};
    use approx::assert_abs_diff_eq;

    fn target(x: f64, alpha: f64) -> StateVector {
        let reg = ModeRegister::new([(MODE_A, ModeSpec::Qubit), (MODE_C, ModeSpec::Qubit)]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![C64::new(0.0, 0.0); 4];
        amps[0] = C64::new(h, 0.0);
        amps[3] = C64::from_polar(h, 4.0 * alpha * x);
        StateVector::from_amplitudes(reg, amps, 0.0).unwrap()
    }

    #[test]
    fn lossless_conditional_state_carries_the_phase() {
        let alpha = 0.3;
        for x in [-1.2, 0.0, 0.45, 2.0] {
            let (rho, density) = homodyne_conditional_state(alpha, 1.0, 1.0, 12, x).unwrap();
            assert!(density > 0.0);
            assert!(rho.expectation_in(&target(x, alpha)).unwrap() > 1.0 - 1e-8);
            let fixed = feed_forward_correction(&rho, MODE_C, alpha, 1.0, x).unwrap();
            assert!(fixed.expectation_in(&target(0.0, alpha)).unwrap() > 1.0 - 1e-8);
        }
    }

    #[test]
    fn zero_outcome_needs_no_correction() {
        assert_eq!(feed_forward_phase(0.7, 0.3, 0.0), 0.0);
        let s = target(0.0, 0.3);
        assert_eq!(feed_forward_correction_state(&s, MODE_C, 0.7, 0.3, 0.0).unwrap(), s);
        assert!(feed_forward_correction_state(&s, "Z", 0.7, 0.3, 0.0).is_err());
    }

    #[test]
    fn matches_closed_forms() {
        let grid = QuadratureGrid::default();
        for (alpha, t) in [(0.3, 1.0), (0.3, 0.5)] {
            let r = he_swap_homodyne(alpha, t, 1.0, 12, &grid).unwrap();
            let cf = analytic::closed_form(Scheme::HeHo, alpha, t, 1.0).unwrap();
            assert_abs_diff_eq!(r.total_success_probability, cf.p, epsilon = 1e-6);
            assert_abs_diff_eq!(r.averaged_negativity, cf.e, epsilon = 2e-3);
        }
    }

    #[test]
    fn nominal_coefficient_is_optimal() {
        let grid = QuadratureGrid::new(6.0, 81).unwrap();
        let ks: Vec<f64> = (0..=8).map(|i| 2.0 + 0.25 * i as f64).collect();
        let scan = scan_feed_forward(0.3, 0.5, 1.0, 10, &grid, &ks).unwrap();
        assert!((scan.best_coefficient - scan.nominal_coefficient).abs() <= 0.125 + 1e-12);
    }

    #[test]
    fn efficiency_substitution_converges_with_cutoff() {
        // (T, T') and (TT', 1) truncate different amplitudes; the gap closes
        // as the cutoff grows.
        let grid = QuadratureGrid::new(6.0, 61).unwrap();
        let gap = |c| {
            let x = he_swap_homodyne(0.6, 0.9, 0.4, c, &grid).unwrap();
            let y = he_swap_homodyne(0.6, 0.36, 1.0, c, &grid).unwrap();
            (x.averaged_negativity - y.averaged_negativity).abs()
        };
        let (g12, g16) = (gap(12), gap(16));
        assert!(g16 < 1e-10 && g16 < g12 / 100.0, "{g12:e} {g16:e}");
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(matches!(QuadratureGrid::new(6.0, 0), Err(Error::EmptyGrid)));
    }
}
