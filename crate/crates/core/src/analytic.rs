//! Closed-form success probabilities and negativities of the three swapping
//! schemes.
//!
//! Nothing here touches the simulator. Detector efficiency enters only through
//! the effective transmission τ = T·T′.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_unit_interval, Error, Result};

/// Which swapping protocol a point refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Vacuum/single-photon resources with a two-detector Bell measurement.
    Dv,
    /// Hybrid resources, single-photon detectors.
    HeSpd,
    /// Hybrid resources, on-off detectors plus homodyne detection.
    HeHo,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Dv, Scheme::HeSpd, Scheme::HeHo];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Dv => "dv",
            Scheme::HeSpd => "he-spd",
            Scheme::HeHo => "he-ho",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dv" => Ok(Scheme::Dv),
            "he-spd" | "he_spd" => Ok(Scheme::HeSpd),
            "he-ho" | "he_ho" => Ok(Scheme::HeHo),
            other => Err(Error::Config {
                key: "scheme".into(),
                message: format!("unknown scheme `{other}` (expected dv, he-spd or he-ho)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormPoint {
    pub scheme: Scheme,
    pub alpha: f64,
    pub t: f64,
    pub t_prime: f64,
    /// Total success probability.
    pub p: f64,
    /// Negativity of the heralded two-qubit state.
    pub e: f64,
}

pub fn dv_probability(tau: f64) -> f64 {
    tau * (2.0 - tau) / 2.0
}

pub fn dv_negativity(tau: f64) -> f64 {
    let r = 1.0 - tau;
    ((1.0 + r * r).sqrt() - r) / (2.0 - tau)
}

pub fn he_spd_probability(alpha: f64, tau: f64) -> f64 {
    let a2 = alpha * alpha;
    2.0 * tau * a2 * (-2.0 * tau * a2).exp()
}

pub fn he_probability_homodyne(alpha: f64, tau: f64) -> f64 {
    let q = 1.0 - (-tau * alpha * alpha).exp();
    0.5 * q * q
}

/// Shared by both hybrid schemes.
pub fn he_negativity(alpha: f64, tau: f64) -> f64 {
    (-4.0 * (1.0 - tau) * alpha * alpha).exp()
}

pub fn closed_form(scheme: Scheme, alpha: f64, t: f64, t_prime: f64) -> Result<ClosedFormPoint> {
    check_unit_interval("T", t)?;
    check_unit_interval("T_prime", t_prime)?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: ">= 0" });
    }
    let tau = t * t_prime;
    let (p, e) = match scheme {
        Scheme::Dv => (dv_probability(tau), dv_negativity(tau)),
        Scheme::HeSpd => (he_spd_probability(alpha, tau), he_negativity(alpha, tau)),
        Scheme::HeHo => (he_probability_homodyne(alpha, tau), he_negativity(alpha, tau)),
    };
    Ok(ClosedFormPoint { scheme, alpha, t, t_prime, p, e })
}

/// Limit of the DV negativity as the transmission goes to zero, (√2 − 1)/2.
pub fn dv_loss_limit() -> f64 {
    (std::f64::consts::SQRT_2 - 1.0) / 2.0
}

/// Failure probability of the coherent-state Bell measurement with ideal
/// number-resolving detectors, (2 cosh 2α²)⁻¹.
pub fn cv_bsm_failure(alpha: f64) -> f64 {
    1.0 / (2.0 * (2.0 * alpha * alpha).cosh())
}
