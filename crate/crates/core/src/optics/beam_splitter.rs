use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{check_unit_interval, Error, Result};
use crate::fock::kernel::{self, Block};
use crate::fock::{DensityOperator, ModeRegister, StateVector};
use crate::linalg;

/// Beam-splitter angles. The transmission T = cos²(θ/2) is derived once at
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterParams {
    theta: f64,
    phi: f64,
    transmission: f64,
}

impl BeamSplitterParams {
    pub fn new(theta: f64, phi: f64) -> Self {
        let c = (theta / 2.0).cos();
        Self { theta, phi, transmission: c * c }
    }

    /// The 50:50 splitter with φ = π used for every Bell measurement here.
    pub fn balanced() -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, std::f64::consts::PI)
    }

    /// Splitter of intensity transmission `t` (φ = π), as used for channel loss.
    pub fn from_transmission(t: f64) -> Result<Self> {
        check_unit_interval("T", t)?;
        let theta = 2.0 * t.sqrt().acos();
        Ok(Self { theta, phi: std::f64::consts::PI, transmission: t })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    /// Parameters of U(θ, φ)⁻¹ = U(θ, φ + π).
    pub fn inverse(&self) -> Self {
        Self { phi: self.phi + std::f64::consts::PI, ..*self }
    }
}

/// U(θ, φ) = exp[(θ/2)(e^{iφ} a†b − e^{−iφ} a b†)] on two truncated modes.
///
/// The generator conserves n_a + n_b, so U is built as one exactly
/// exponentiated block per total photon number. Blocks with N above either
/// cutoff are clipped to the representable states; they stay unitary.
///
/// With θ = π/2, φ = π: a† → (a† + b†)/√2 and b† → (b† − a†)/√2, so
/// |α⟩|β⟩ → |(α−β)/√2⟩|(α+β)/√2⟩.
#[derive(Debug, Clone)]
pub struct BeamSplitter {
    params: BeamSplitterParams,
    dims: (usize, usize),
    blocks: Vec<Block>,
}

impl BeamSplitter {
    pub fn new(params: BeamSplitterParams, dim_a: usize, dim_b: usize) -> Self {
        let max_a = dim_a - 1;
        let max_b = dim_b - 1;
        let phase = C64::from_polar(1.0, params.phi);
        let blocks = (0..=max_a + max_b)
            .map(|total| {
                let lo = total.saturating_sub(max_b);
                let hi = total.min(max_a);
                let basis: Vec<(usize, usize)> = (lo..=hi).map(|k| (k, total - k)).collect();
                let size = basis.len();
                // H = i·G is Hermitian; U = exp(θ/2 · G) = exp(−i·θ/2·H).
                let mut h = DMatrix::from_element(size, size, C64::new(0.0, 0.0));
                for p in 0..size.saturating_sub(1) {
                    let k = (lo + p) as f64;
                    let amp = ((k + 1.0) * (total as f64 - k)).sqrt();
                    // a†b: |k, N−k⟩ → |k+1, N−k−1⟩
                    h[(p + 1, p)] = C64::i() * phase * amp;
                    h[(p, p + 1)] = (C64::i() * phase * amp).conj();
                }
                let matrix = linalg::unitary_exp(&h, params.theta / 2.0);
                Block { basis, matrix }
            })
            .collect();
        Self { params, dims: (dim_a, dim_b), blocks }
    }

    pub fn params(&self) -> BeamSplitterParams {
        self.params
    }

    /// Dense (dim_a·dim_b)² matrix, row-major over (n_a, n_b).
    pub fn to_matrix(&self) -> DMatrix<C64> {
        let n = self.dims.0 * self.dims.1;
        let mut u = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
        for block in &self.blocks {
            for (r, &(ra, rb)) in block.basis.iter().enumerate() {
                for (c, &(ca, cb)) in block.basis.iter().enumerate() {
                    u[(ra * self.dims.1 + rb, ca * self.dims.1 + cb)] = block.matrix[(r, c)];
                }
            }
        }
        u
    }

    fn locate(&self, register: &ModeRegister, x: &str, y: &str) -> Result<(Vec<usize>, (usize, usize))> {
        let i = register.require_bosonic(x)?;
        let j = register.require_bosonic(y)?;
        if i == j {
            return Err(Error::DuplicateMode(x.to_string()));
        }
        let dims = register.dims();
        if (dims[i], dims[j]) != self.dims {
            return Err(Error::OperatorShape { expected: dims[i] * dims[j], got: self.dims.0 * self.dims.1 });
        }
        let strides = register.strides();
        Ok((kernel::fiber_bases(register, &[i, j]), (strides[i], strides[j])))
    }

    pub fn apply(&self, state: &StateVector, x: &str, y: &str) -> Result<StateVector> {
        let (bases, strides) = self.locate(state.register(), x, y)?;
        let mut out = state.clone();
        kernel::apply_blocks(out.amplitudes_mut(), &bases, strides, &self.blocks);
        Ok(out)
    }

    pub fn apply_rho(&self, rho: &DensityOperator, x: &str, y: &str) -> Result<DensityOperator> {
        let (bases, strides) = self.locate(rho.register(), x, y)?;
        let mut out = rho.clone();
        out.conjugate_in_place(|col| kernel::apply_blocks(col, &bases, strides, &self.blocks));
        Ok(out)
    }
}

fn splitter_for(register: &ModeRegister, x: &str, y: &str, params: BeamSplitterParams) -> Result<BeamSplitter> {
    let i = register.require_bosonic(x)?;
    let j = register.require_bosonic(y)?;
    let dims = register.dims();
    Ok(BeamSplitter::new(params, dims[i], dims[j]))
}

/// Applies U(θ, φ) to modes `x` (operator a) and `y` (operator b).
pub fn apply_bs(
    state: &StateVector,
    x: &str,
    y: &str,
    params: BeamSplitterParams,
) -> Result<StateVector> {
    splitter_for(state.register(), x, y, params)?.apply(state, x, y)
}

/// Density-operator overload of [`apply_bs`]: U ρ U†.
pub fn apply_bs_rho(
    rho: &DensityOperator,
    x: &str,
    y: &str,
    params: BeamSplitterParams,
) -> Result<DensityOperator> {
    splitter_for(rho.register(), x, y, params)?.apply_rho(rho, x, y)
}
