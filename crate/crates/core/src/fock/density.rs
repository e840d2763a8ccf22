use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::kernel;
use super::state::split_indices;
use super::{ModeRegister, StateVector};
use crate::error::{Error, Result};
use crate::linalg;

/// Mixed multi-mode state: a Hermitian matrix over the register's product basis.
///
/// Post-selected states are allowed to be unnormalized; the trace then carries
/// the success probability.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    register: ModeRegister,
    matrix: DMatrix<C64>,
}

impl DensityOperator {
    pub fn from_matrix(register: ModeRegister, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = register.total_dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::RegisterMismatch(format!(
                "{}x{} matrix for a register of dimension {dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { register, matrix })
    }

    pub fn from_pure(state: &StateVector) -> Self {
        state.to_density()
    }

    pub fn register(&self) -> &ModeRegister {
        &self.register
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// max |M − M†| elementwise.
    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.matrix)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Unit-trace copy together with the trace that was divided out.
    pub fn normalized(&self) -> (Self, f64) {
        let t = self.trace().re;
        let scaled = if t != 0.0 { self.matrix.map(|z| z / t) } else { self.matrix.clone() };
        (Self { register: self.register.clone(), matrix: scaled }, t)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { register: self.register.clone(), matrix: self.matrix.map(|z| z * factor) }
    }

    /// ⟨ψ|ρ|ψ⟩ for a state on the same register.
    pub fn expectation_in(&self, state: &StateVector) -> Result<f64> {
        if state.register() != &self.register {
            return Err(Error::RegisterMismatch("state and density registers differ".into()));
        }
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        Ok((v.adjoint() * &self.matrix * &v)[(0, 0)].re)
    }

    pub fn add_assign(&mut self, other: &DensityOperator) -> Result<()> {
        if other.register != self.register {
            return Err(Error::RegisterMismatch("cannot add densities on different registers".into()));
        }
        self.matrix += &other.matrix;
        Ok(())
    }

    /// `O ρ O†` for an operator acting on one mode.
    pub fn apply_mode_operator(&self, mode: &str, op: &DMatrix<C64>) -> Result<Self> {
        let i = self.register.index_of(mode)?;
        let dim = self.register.modes()[i].1.dim();
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::OperatorShape { expected: dim, got: op.nrows() });
        }
        let bases = kernel::fiber_bases(&self.register, &[i]);
        let stride = self.register.strides()[i];
        let mut matrix = self.matrix.clone();
        kernel::conjugate_by(&mut matrix, |col| kernel::apply_single(col, &bases, stride, op));
        Ok(Self { register: self.register.clone(), matrix })
    }

    pub(crate) fn conjugate_in_place<F>(&mut self, kernel_fn: F)
    where
        F: FnMut(&mut [C64]),
    {
        kernel::conjugate_by(&mut self.matrix, kernel_fn);
    }

    /// `tr_mode[(E_mode ⊗ I) ρ]`: the unnormalized state of the remaining modes
    /// conditioned on the POVM element `E` registering on `mode`.
    pub fn trace_out_with(&self, mode: &str, element: &DMatrix<C64>) -> Result<Self> {
        let i = self.register.index_of(mode)?;
        let dim = self.register.modes()[i].1.dim();
        if element.nrows() != dim || element.ncols() != dim {
            return Err(Error::OperatorShape { expected: dim, got: element.nrows() });
        }
        let rest = self.register.without(mode)?;
        let bases = kernel::fiber_bases(&self.register, &[i]);
        let stride = self.register.strides()[i];
        let r = bases.len();
        let mut out = DMatrix::from_element(r, r, C64::new(0.0, 0.0));
        for (ri, &bi) in bases.iter().enumerate() {
            for (rj, &bj) in bases.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for n in 0..dim {
                    for m in 0..dim {
                        let e = element[(n, m)];
                        if e != C64::new(0.0, 0.0) {
                            acc += e * self.matrix[(bi + m * stride, bj + n * stride)];
                        }
                    }
                }
                out[(ri, rj)] = acc;
            }
        }
        Self::from_matrix(rest, out)
    }

    /// Partial trace keeping the listed modes (in register order).
    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        let kept = self.register.subset(keep)?;
        let (keep_idx, rest_idx, _) = split_indices(&self.register, &kept)?;
        let d = kept.total_dim();
        let mut out = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        let total = self.register.total_dim();
        for j in 0..total {
            for i in 0..total {
                if rest_idx[i] == rest_idx[j] {
                    out[(keep_idx[i], keep_idx[j])] += self.matrix[(i, j)];
                }
            }
        }
        Self::from_matrix(kept, out)
    }
}

/// `ρ_a ⊗ ρ_b` on the concatenated register.
pub fn tensor_rho(a: &DensityOperator, b: &DensityOperator) -> Result<DensityOperator> {
    let register = a.register.concat(&b.register)?;
    DensityOperator::from_matrix(register, a.matrix.kronecker(&b.matrix))
}

/// Trace distance ½‖ρ − σ‖₁.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    if a.register != b.register {
        return Err(Error::RegisterMismatch("trace distance needs identical registers".into()));
    }
    let diff = &a.matrix - &b.matrix;
    Ok(0.5 * linalg::hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>())
}
