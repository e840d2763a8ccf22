use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::beam_splitter::{apply_bs_rho, BeamSplitterParams};
use crate::error::{check_unit_interval, Error, Result};
use crate::fock::{tensor_rho, DensityOperator, ModeRegister, StateVector};

/// Converts a decoherence exponent γτ into the channel transmission e^{−γτ}.
pub fn gamma_tau_to_t(gamma_tau: f64) -> Result<f64> {
    if gamma_tau.is_nan() || gamma_tau < 0.0 {
        return Err(Error::OutOfRange { name: "gamma_tau", value: gamma_tau, expected: ">= 0" });
    }
    Ok((-gamma_tau).exp())
}

/// Pure-loss (amplitude damping) channel of transmission T on one bosonic mode,
/// in Kraus form A_k = (1−T)^{k/2} (k!)^{−1/2} T^{n̂/2} â^k.
///
/// ⟨n−k|A_k|n⟩ = √C(n,k) T^{(n−k)/2} (1−T)^{k/2}; since A_k only lowers the
/// photon number, Σ_k A_k†A_k = I holds exactly on the truncated space.
#[derive(Debug, Clone)]
pub struct LossChannel {
    transmission: f64,
    kraus: Vec<DMatrix<C64>>,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl LossChannel {
    pub fn new(t: f64, cutoff: usize) -> Result<Self> {
        check_unit_interval("T", t)?;
        let dim = cutoff + 1;
        let r = 1.0 - t;
        let kraus = (0..dim)
            .map(|k| {
                let mut a = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
                for n in k..dim {
                    let v = binomial(n, k).sqrt() * t.powf((n - k) as f64 / 2.0) * r.powf(k as f64 / 2.0);
                    a[(n - k, n)] = C64::new(v, 0.0);
                }
                a
            })
            .collect();
        Ok(Self { transmission: t, kraus })
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    pub fn kraus(&self) -> &[DMatrix<C64>] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    /// max |Σ A_k†A_k − I|.
    pub fn completeness_defect(&self) -> f64 {
        let dim = self.dim();
        let sum = self
            .kraus
            .iter()
            .fold(DMatrix::zeros(dim, dim), |acc: DMatrix<C64>, a| acc + a.adjoint() * a);
        (sum - DMatrix::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_mode(&self, register: &ModeRegister, mode: &str) -> Result<()> {
        let i = register.require_bosonic(mode)?;
        let dim = register.modes()[i].1.dim();
        if dim != self.dim() {
            return Err(Error::OperatorShape { expected: dim, got: self.dim() });
        }
        Ok(())
    }

    /// Σ_k A_k ρ A_k† on `mode`.
    pub fn apply(&self, rho: &DensityOperator, mode: &str) -> Result<DensityOperator> {
        self.check_mode(rho.register(), mode)?;
        if self.transmission == 1.0 {
            return Ok(rho.clone());
        }
        let mut out = rho.apply_mode_operator(mode, &self.kraus[0])?;
        for a in &self.kraus[1..] {
            out.add_assign(&rho.apply_mode_operator(mode, a)?)?;
        }
        Ok(out)
    }

    /// Kraus unravelling of a pure state: the unnormalized branches A_k|ψ⟩,
    /// with identically zero branches dropped. Σ_k |ψ_k⟩⟨ψ_k| equals the
    /// channel output.
    pub fn unravel(&self, state: &StateVector, mode: &str) -> Result<Vec<StateVector>> {
        self.check_mode(state.register(), mode)?;
        if self.transmission == 1.0 {
            return Ok(vec![state.clone()]);
        }
        let mut branches = Vec::with_capacity(self.kraus.len());
        for a in &self.kraus {
            let b = state.apply_mode_operator(mode, a)?;
            if b.norm_sqr() > 0.0 {
                branches.push(b);
            }
        }
        Ok(branches)
    }
}

/// Builds the loss channel sized for `mode`'s cutoff.
pub fn loss_channel(t: f64, register: &ModeRegister, mode: &str) -> Result<LossChannel> {
    let i = register.require_bosonic(mode)?;
    LossChannel::new(t, register.modes()[i].1.max_occupation())
}

/// Kraus-form loss on one mode of a density operator.
pub fn apply_loss(rho: &DensityOperator, mode: &str, channel: &LossChannel) -> Result<DensityOperator> {
    channel.apply(rho, mode)
}

/// Reference route for the same channel: couple `mode` to a vacuum
/// environment on a beam splitter of transmission T, then trace the
/// environment out.
pub fn apply_loss_by_dilation(rho: &DensityOperator, mode: &str, t: f64) -> Result<DensityOperator> {
    let i = rho.register().require_bosonic(mode)?;
    let spec = rho.register().modes()[i].1;
    let env_name = format!("{mode}#env");
    let env_reg = ModeRegister::new([(env_name.clone(), spec)])?;
    let env = StateVector::vacuum(&env_reg).to_density();
    let joint = tensor_rho(rho, &env)?;
    let mixed = apply_bs_rho(&joint, mode, &env_name, BeamSplitterParams::from_transmission(t)?)?;
    let keep: Vec<&str> = rho.register().names().collect();
    mixed.partial_trace(&keep)
}

#[cfg(test)]
pub(crate) fn one_mode(name: &str, cutoff: usize) -> Result<ModeRegister> {
    ModeRegister::new([(name, crate::fock::ModeSpec::bosonic(cutoff)?)])
}
