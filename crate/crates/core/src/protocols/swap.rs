use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::{check_params, record, swap_register, ParamsEcho, SwapResult, MODE_A, MODE_B, MODE_C, MODE_D};
use crate::analytic::Scheme;
use crate::error::Result;
use crate::fock::{make_hybrid_pair, make_vsp_bell, DensityOperator, ModeRegister, StateVector, VspBell};
use crate::optics::{spd_elements, with_inefficiency, BeamSplitter, BeamSplitterParams, LossChannel};

/// Sends B and D through loss T and returns the Kraus branches.
pub(super) fn lossy_branches(state: &StateVector, t: f64, cutoff: usize) -> Result<Vec<StateVector>> {
    let channel = LossChannel::new(t, cutoff)?;
    let mut out = Vec::new();
    for b in channel.unravel(state, MODE_B)? {
        out.extend(channel.unravel(&b, MODE_D)?);
    }
    Ok(out)
}

/// BS^{1/2} on (B, D) for every branch.
pub(super) fn mix_bd(branches: &mut [StateVector], cutoff: usize) -> Result<()> {
    let bs = BeamSplitter::new(BeamSplitterParams::balanced(), cutoff + 1, cutoff + 1);
    for b in branches.iter_mut() {
        *b = bs.apply(b, MODE_B, MODE_D)?;
    }
    Ok(())
}

/// Σ_branches tr_{BD}[M_B M_D |ψ⟩⟨ψ| M_D† M_B†] for measurement roots M.
fn herald(
    branches: &[StateVector],
    root_b: &DMatrix<C64>,
    root_d: &DMatrix<C64>,
    ac: &ModeRegister,
) -> Result<DensityOperator> {
    let mut rho = DensityOperator::from_matrix(ac.clone(), DMatrix::zeros(4, 4))?;
    for b in branches {
        let mut v = b.apply_mode_operator(MODE_B, root_b)?;
        v.apply_mode_operator_in_place(MODE_D, root_d)?;
        rho.add_assign(&v.reduced_density(&[MODE_A, MODE_C])?)?;
    }
    Ok(rho)
}

/// Common tail of the DV and SPD-hybrid schemes: loss, BS^{1/2}, then single
/// photon detectors of efficiency T′ on B and D. Only the outcomes
/// (B, D) = (0, 1) and (1, 0) are accepted.
fn two_detector_swap(initial: StateVector, t: f64, t_prime: f64, cutoff: usize, echo: ParamsEcho) -> Result<SwapResult> {
    let mut branches = lossy_branches(&initial, t, cutoff)?;
    mix_bd(&mut branches, cutoff)?;

    let reg = initial.register();
    let spd_b = with_inefficiency(&spd_elements(reg, MODE_B)?, t_prime)?;
    let spd_d = with_inefficiency(&spd_elements(reg, MODE_D)?, t_prime)?;
    let (zero_b, one_b) = (spd_b[0].kraus_root(), spd_b[1].kraus_root());
    let (zero_d, one_d) = (spd_d[0].kraus_root(), spd_d[1].kraus_root());

    let ac = reg.subset(&[MODE_A, MODE_C])?;
    let per_outcome = vec![
        record("01", herald(&branches, &zero_b, &one_d, &ac)?)?,
        record("10", herald(&branches, &one_b, &zero_d, &ac)?)?,
    ];
    Ok(SwapResult::from_outcomes(per_outcome, echo))
}

/// Swapping with two vacuum/single-photon pairs |φ+⟩_AB |φ+⟩_CD.
///
/// Outcome 01 heralds (a mixture around) |φ+⟩_AC, outcome 10 |φ−⟩_AC.
pub fn dv_swap(t: f64, t_prime: f64, cutoff: usize) -> Result<SwapResult> {
    check_params(0.0, t, t_prime, cutoff, 2)?;
    let reg = swap_register(cutoff)?;
    let ab = make_vsp_bell(&reg.subset(&[MODE_A, MODE_B])?, MODE_A, MODE_B, VspBell::PhiPlus)?;
    let cd = make_vsp_bell(&reg.subset(&[MODE_C, MODE_D])?, MODE_C, MODE_D, VspBell::PhiPlus)?;
    let initial = crate::fock::tensor(&ab, &cd)?;
    let echo = ParamsEcho { scheme: Scheme::Dv, alpha: 0.0, t, t_prime, cutoff };
    two_detector_swap(initial, t, t_prime, cutoff, echo)
}

/// Two hybrid pairs (|0⟩|α⟩ + |1⟩|−α⟩)/√2 on (A, B) and (C, D), with the
/// coherent parts measured by single-photon detectors. Events with two or more
/// photons in a detector are rejected.
pub fn he_swap_spd(alpha: f64, t: f64, t_prime: f64, cutoff: usize) -> Result<SwapResult> {
    check_params(alpha, t, t_prime, cutoff, 1)?;
    let initial = hybrid_initial(alpha, cutoff)?;
    let echo = ParamsEcho { scheme: Scheme::HeSpd, alpha, t, t_prime, cutoff };
    two_detector_swap(initial, t, t_prime, cutoff, echo)
}

pub(super) fn hybrid_initial(alpha: f64, cutoff: usize) -> Result<StateVector> {
    let reg = swap_register(cutoff)?;
    let a = C64::new(alpha, 0.0);
    let ab = make_hybrid_pair(&reg.subset(&[MODE_A, MODE_B])?, MODE_A, MODE_B, a)?;
    let cd = make_hybrid_pair(&reg.subset(&[MODE_C, MODE_D])?, MODE_C, MODE_D, a)?;
    crate::fock::tensor(&ab, &cd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use crate::entanglement::negativity_value;
    use crate::fock::{overlap, ModeSpec};
    use approx::assert_abs_diff_eq;

    #[test]
    fn lossless_dv() {
        let r = dv_swap(1.0, 1.0, 4).unwrap();
        assert_abs_diff_eq!(r.total_success_probability, 0.5, epsilon = 1e-12);
        for o in &r.per_outcome {
            assert_abs_diff_eq!(o.probability, 0.25, epsilon = 1e-12);
            assert_abs_diff_eq!(o.negativity, 1.0, epsilon = 1e-10);
        }
        // outcome 01 → φ+, 10 → φ−
        let ac = ModeRegister::new([("A", ModeSpec::Qubit), ("C", ModeSpec::Qubit)]).unwrap();
        let phi_p = make_vsp_bell(&ac, "A", "C", VspBell::PhiPlus).unwrap();
        let phi_m = make_vsp_bell(&ac, "A", "C", VspBell::PhiMinus).unwrap();
        assert_abs_diff_eq!(r.outcome("01").unwrap().post_state.expectation_in(&phi_p).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.outcome("10").unwrap().post_state.expectation_in(&phi_m).unwrap(), 1.0, epsilon = 1e-12);
        let _ = overlap(&phi_p, &phi_m).unwrap();
    }

    #[test]
    fn dv_matches_closed_form_with_loss() {
        for t in [0.9, 0.5, 0.2] {
            let r = dv_swap(t, 1.0, 3).unwrap();
            assert_abs_diff_eq!(r.total_success_probability, analytic::dv_probability(t), epsilon = 1e-12);
            assert_abs_diff_eq!(r.averaged_negativity, analytic::dv_negativity(t), epsilon = 1e-10);
            let (p01, p10) = (r.per_outcome[0].probability, r.per_outcome[1].probability);
            assert_abs_diff_eq!(p01, p10, epsilon = 1e-14);
        }
    }

    #[test]
    fn dv_near_total_loss_state() {
        // ρ_AC → (|00⟩⟨00| + |φ⟩⟨φ|)/2 and E → (√2−1)/2.
        let r = dv_swap(1e-6, 1.0, 2).unwrap();
        let rho = &r.outcome("10").unwrap().post_state;
        assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 0.5, epsilon = 1e-5);
        assert_abs_diff_eq!(rho.matrix()[(1, 2)].re, -0.25, epsilon = 1e-5);
        assert_abs_diff_eq!(r.averaged_negativity, analytic::dv_loss_limit(), epsilon = 1e-5);
    }

    #[test]
    fn dv_total_loss_has_no_successes() {
        let r = dv_swap(0.0, 1.0, 2).unwrap();
        assert_eq!(r.total_success_probability, 0.0);
        assert!(r.averaged_negativity.is_nan());
    }

    #[test]
    fn hybrid_spd_lossless() {
        let r = he_swap_spd(0.3, 1.0, 1.0, 12).unwrap();
        assert_abs_diff_eq!(r.total_success_probability, 0.150349, epsilon = 1e-6);
        assert_abs_diff_eq!(r.total_success_probability, analytic::he_spd_probability(0.3, 1.0), epsilon = 1e-12);
        assert_abs_diff_eq!(r.averaged_negativity, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn hybrid_spd_with_loss() {
        let r = he_swap_spd(0.3, 0.5, 1.0, 12).unwrap();
        assert_abs_diff_eq!(r.averaged_negativity, (-0.18f64).exp(), epsilon = 1e-9);
        assert_abs_diff_eq!(r.averaged_negativity, 0.83527, epsilon = 1e-5);
        for o in &r.per_outcome {
            assert_abs_diff_eq!(negativity_value(&o.post_state, &["C"]).unwrap(), o.negativity, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(dv_swap(1.2, 1.0, 4).is_err());
        assert!(dv_swap(1.0, -0.1, 4).is_err());
        assert!(dv_swap(1.0, 1.0, 1).is_err());
        assert!(he_swap_spd(-0.3, 1.0, 1.0, 4).is_err());
    }
}
