use num_complex::Complex64 as C64;

use super::MODE_B;
use crate::error::{Error, Result};
use crate::fock::{make_cat, single_mode, Parity};
use crate::optics::{ElementKind, MeasurementElement};

/// λ = 2e^{−α²}, the overlap of the vacuum with the unnormalized even cat.
///
/// With the normalized |CS+⟩ the overlap would instead be
/// 2N₊e^{−α²} = (2/(1 + e^{−4α²}))^{1/2} e^{−α²}; the elements below use the
/// unnormalized value.
pub fn k_povm_lambda(alpha: f64) -> f64 {
    2.0 * (-alpha * alpha).exp()
}

/// The four rank-one elements K₁..K₄ on mode B:
///
/// K₁ = (|0⟩ − λ|CS−⟩)(⟨0| − λ⟨CS−|), K₂ = (|0⟩ + λ|CS−⟩)(…)†,
/// K₃ = (|0⟩ + λ|CS+⟩)(…)†, K₄ = (|0⟩ − λ|CS+⟩)(…)†.
///
/// K₄ flags the vacuum. The set is not normalized to a resolution of the
/// identity.
pub fn build_k_povm(alpha: f64, cutoff: usize) -> Result<Vec<MeasurementElement>> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "> 0" });
    }
    let reg = single_mode(MODE_B, cutoff)?;
    let a = C64::new(alpha, 0.0);
    let even = make_cat(&reg, MODE_B, a, Parity::Even)?;
    let odd = make_cat(&reg, MODE_B, a, Parity::Odd)?;
    let lambda = k_povm_lambda(alpha);
    let vector = |cat: &[C64], sign: f64| -> Vec<C64> {
        let mut v: Vec<C64> = cat.iter().map(|z| z * (sign * lambda)).collect();
        v[0] += 1.0;
        v
    };
    Ok([
        ("K1", vector(odd.amplitudes(), -1.0)),
        ("K2", vector(odd.amplitudes(), 1.0)),
        ("K3", vector(even.amplitudes(), 1.0)),
        ("K4", vector(even.amplitudes(), -1.0)),
    ]
    .into_iter()
    .map(|(label, v)| MeasurementElement::from_vector(label, MODE_B, ElementKind::PovmElement, v))
    .collect())
}
