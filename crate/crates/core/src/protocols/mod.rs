//! End-to-end entanglement-swapping protocols.
//!
//! Every protocol starts from two resource pairs, (A, B) and (C, D), sends the
//! traveling modes B and D through pure-loss channels of transmission T and
//! performs a Bell-type measurement on them. Detector efficiency T′ is a loss
//! placed in front of each ideal detector. The result is the heralded state of
//! the two stationary qubits A and C.
//!
//! Channel loss is simulated by Kraus unravelling: each loss pattern is kept
//! as an unnormalized pure branch and the branches are summed once the
//! measured modes have been traced out.

mod cv_bsm;
mod homodyne;
mod povm;
mod swap;

pub use cv_bsm::cv_bsm_failure_prob;
pub use homodyne::{
    feed_forward_correction, feed_forward_correction_state, feed_forward_phase, he_swap_homodyne,
    homodyne_conditional_state, scan_feed_forward, FeedForwardScan,
};
pub use povm::{build_k_povm, k_povm_lambda};
pub use swap::{dv_swap, he_swap_spd};

use crate::analytic::Scheme;
use crate::entanglement;
use crate::error::{check_unit_interval, Error, Result};
use crate::fock::{DensityOperator, ModeRegister, ModeSpec};
use crate::optics::QuadratureGrid;

/// Mode names shared by every protocol.
pub const MODE_A: &str = "A";
pub const MODE_B: &str = "B";
pub const MODE_C: &str = "C";
pub const MODE_D: &str = "D";
pub const MODE_E: &str = "E";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamsEcho {
    pub scheme: Scheme,
    pub alpha: f64,
    pub t: f64,
    pub t_prime: f64,
    pub cutoff: usize,
}

/// One accepted measurement outcome.
#[derive(Debug, Clone)]
pub struct OutcomeRecord {
    pub label: String,
    pub probability: f64,
    /// Unit-trace state of (A, C); left unnormalized (all zero) when the
    /// outcome never occurs.
    pub post_state: DensityOperator,
    /// NaN when `probability` is zero.
    pub negativity: f64,
}

#[derive(Debug, Clone)]
pub struct SwapResult {
    pub per_outcome: Vec<OutcomeRecord>,
    pub total_success_probability: f64,
    /// Probability-weighted mean of the per-outcome negativities.
    pub averaged_negativity: f64,
    pub params: ParamsEcho,
}

impl SwapResult {
    fn from_outcomes(per_outcome: Vec<OutcomeRecord>, params: ParamsEcho) -> Self {
        let total: f64 = per_outcome.iter().map(|o| o.probability).sum();
        let averaged_negativity = if total > 0.0 {
            per_outcome
                .iter()
                .filter(|o| o.probability > 0.0)
                .map(|o| o.probability * o.negativity)
                .sum::<f64>()
                / total
        } else {
            f64::NAN
        };
        Self { per_outcome, total_success_probability: total, averaged_negativity, params }
    }

    pub fn outcome(&self, label: &str) -> Option<&OutcomeRecord> {
        self.per_outcome.iter().find(|o| o.label == label)
    }

    pub fn per_outcome_negativities(&self) -> Vec<(String, f64)> {
        self.per_outcome.iter().map(|o| (o.label.clone(), o.negativity)).collect()
    }
}

/// Turns an unnormalized heralded state of (A, C) into an outcome record.
pub(crate) fn record(label: impl Into<String>, rho_ac: DensityOperator) -> Result<OutcomeRecord> {
    let probability = rho_ac.trace().re;
    if probability > 0.0 {
        let negativity = entanglement::negativity_value(&rho_ac, &[MODE_A])?;
        let (post_state, _) = rho_ac.normalized();
        Ok(OutcomeRecord { label: label.into(), probability, post_state, negativity })
    } else {
        Ok(OutcomeRecord { label: label.into(), probability: 0.0, post_state: rho_ac, negativity: f64::NAN })
    }
}

pub(crate) fn check_params(alpha: f64, t: f64, t_prime: f64, cutoff: usize, min_cutoff: usize) -> Result<()> {
    check_unit_interval("T", t)?;
    check_unit_interval("T_prime", t_prime)?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: ">= 0" });
    }
    if cutoff < min_cutoff {
        return Err(Error::InvalidCutoff(cutoff));
    }
    Ok(())
}

/// Register (A, B, C, D) with qubit A, C and bosonic B, D.
pub(crate) fn swap_register(cutoff: usize) -> Result<ModeRegister> {
    ModeRegister::new([
        (MODE_A, ModeSpec::Qubit),
        (MODE_B, ModeSpec::bosonic(cutoff)?),
        (MODE_C, ModeSpec::Qubit),
        (MODE_D, ModeSpec::bosonic(cutoff)?),
    ])
}

/// Runs one scheme with the shared parameter set.
pub fn run_scheme(
    scheme: Scheme,
    alpha: f64,
    t: f64,
    t_prime: f64,
    cutoff: usize,
    grid: &QuadratureGrid,
) -> Result<SwapResult> {
    match scheme {
        Scheme::Dv => dv_swap(t, t_prime, cutoff),
        Scheme::HeSpd => he_swap_spd(alpha, t, t_prime, cutoff),
        Scheme::HeHo => he_swap_homodyne(alpha, t, t_prime, cutoff, grid),
    }
}
