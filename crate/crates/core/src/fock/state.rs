use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::kernel;
use super::{DensityOperator, ModeRegister, ModeSpec};
use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Pure multi-mode state over a register's product basis.
///
/// `norm_deficit` records the probability mass an analytic constructor could
/// not represent below the Fock cutoff. Amplitudes are never renormalized to
/// hide it.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: ModeRegister,
    amplitudes: Vec<C64>,
    norm_deficit: f64,
}

/// Parity of a cat state: even (`+`) or odd (`−`) photon number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The four vacuum/single-photon Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VspBell {
    /// (|01⟩ + |10⟩)/√2
    PhiPlus,
    /// (|01⟩ − |10⟩)/√2
    PhiMinus,
    /// (|00⟩ + |11⟩)/√2
    PsiPlus,
    /// (|00⟩ − |11⟩)/√2
    PsiMinus,
}

impl StateVector {
    pub fn from_amplitudes(
        register: ModeRegister,
        amplitudes: Vec<C64>,
        norm_deficit: f64,
    ) -> Result<Self> {
        if amplitudes.len() != register.total_dim() {
            return Err(Error::RegisterMismatch(format!(
                "{} amplitudes for a register of dimension {}",
                amplitudes.len(),
                register.total_dim()
            )));
        }
        Ok(Self { register, amplitudes, norm_deficit: norm_deficit.max(0.0) })
    }

    pub fn vacuum(register: &ModeRegister) -> Self {
        let mut amplitudes = vec![ZERO; register.total_dim()];
        amplitudes[0] = C64::new(1.0, 0.0);
        Self { register: register.clone(), amplitudes, norm_deficit: 0.0 }
    }

    pub fn register(&self) -> &ModeRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_deficit(&self) -> f64 {
        self.norm_deficit
    }

    /// ⟨ψ|ψ⟩ of the stored (truncated) amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<C64> {
        Ok(self.amplitudes[self.register.flat_index(occupations)?])
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            register: self.register.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
            norm_deficit: self.norm_deficit,
        }
    }

    /// Unit-norm copy (the deficit is cleared, since it no longer applies).
    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        let mut out = self.scaled(C64::new(1.0 / n, 0.0));
        out.norm_deficit = 0.0;
        out
    }

    /// `(I ⊗ op ⊗ I)|ψ⟩` for an operator on one mode.
    pub fn apply_mode_operator(&self, mode: &str, op: &DMatrix<C64>) -> Result<Self> {
        let mut out = self.clone();
        out.apply_mode_operator_in_place(mode, op)?;
        Ok(out)
    }

    pub(crate) fn apply_mode_operator_in_place(
        &mut self,
        mode: &str,
        op: &DMatrix<C64>,
    ) -> Result<()> {
        let i = self.register.index_of(mode)?;
        let dim = self.register.modes()[i].1.dim();
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::OperatorShape { expected: dim, got: op.nrows() });
        }
        let bases = kernel::fiber_bases(&self.register, &[i]);
        let stride = self.register.strides()[i];
        kernel::apply_single(&mut self.amplitudes, &bases, stride, op);
        Ok(())
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    /// Mean occupation ⟨ψ|n̂|ψ⟩ of one mode (not divided by ⟨ψ|ψ⟩).
    pub fn mean_occupation(&self, mode: &str) -> Result<f64> {
        let i = self.register.index_of(mode)?;
        let dim = self.register.modes()[i].1.dim();
        let stride = self.register.strides()[i];
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(idx, a)| ((idx / stride) % dim) as f64 * a.norm_sqr())
            .sum())
    }

    /// Projects one mode onto a single-mode vector: returns `⟨v|_mode |ψ⟩` on
    /// the register without that mode.
    pub fn contract_mode(&self, mode: &str, vector: &[C64]) -> Result<Self> {
        let i = self.register.index_of(mode)?;
        let dim = self.register.modes()[i].1.dim();
        if vector.len() != dim {
            return Err(Error::OperatorShape { expected: dim, got: vector.len() });
        }
        let rest = self.register.without(mode)?;
        let stride = self.register.strides()[i];
        let bases = kernel::fiber_bases(&self.register, &[i]);
        // fiber_bases enumerates the remaining digits in row-major order, which
        // is exactly the flat order of `rest`.
        let amplitudes = bases
            .iter()
            .map(|&b| (0..dim).map(|n| vector[n].conj() * self.amplitudes[b + n * stride]).sum())
            .collect();
        Ok(Self { register: rest, amplitudes, norm_deficit: self.norm_deficit })
    }

    pub fn to_density(&self) -> DensityOperator {
        let v = nalgebra::DVector::from_column_slice(&self.amplitudes);
        DensityOperator::from_matrix(self.register.clone(), &v * v.adjoint())
            .expect("outer product matches register dimension")
    }

    /// `tr_{rest} |ψ⟩⟨ψ|` keeping the listed modes.
    pub fn reduced_density(&self, keep: &[&str]) -> Result<DensityOperator> {
        let kept = self.register.subset(keep)?;
        let (keep_idx, rest_idx, rest_dim) = split_indices(&self.register, &kept)?;
        let mut psi = DMatrix::from_element(kept.total_dim(), rest_dim, ZERO);
        for (flat, a) in self.amplitudes.iter().enumerate() {
            psi[(keep_idx[flat], rest_idx[flat])] = *a;
        }
        DensityOperator::from_matrix(kept, &psi * psi.adjoint())
    }
}

/// For every flat index of `full`, its index in `kept` and in the complement.
pub(crate) fn split_indices(
    full: &ModeRegister,
    kept: &ModeRegister,
) -> Result<(Vec<usize>, Vec<usize>, usize)> {
    let keep_pos: Vec<usize> =
        kept.names().map(|n| full.index_of(n)).collect::<Result<_>>()?;
    let dims = full.dims();
    let rest_pos: Vec<usize> = (0..dims.len()).filter(|i| !keep_pos.contains(i)).collect();
    let rest_dim: usize = rest_pos.iter().map(|&i| dims[i]).product();
    // Row-major strides of each mode inside the kept and the rest registers.
    let mut keep_stride = vec![0; dims.len()];
    let mut rest_stride = vec![0; dims.len()];
    let mut s = 1;
    for &i in keep_pos.iter().rev() {
        keep_stride[i] = s;
        s *= dims[i];
    }
    s = 1;
    for &i in rest_pos.iter().rev() {
        rest_stride[i] = s;
        s *= dims[i];
    }
    let total = full.total_dim();
    let mut keep_idx = Vec::with_capacity(total);
    let mut rest_idx = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    let (mut k, mut r) = (0usize, 0usize);
    for _ in 0..total {
        keep_idx.push(k);
        rest_idx.push(r);
        for pos in (0..dims.len()).rev() {
            digits[pos] += 1;
            k += keep_stride[pos];
            r += rest_stride[pos];
            if digits[pos] < dims[pos] {
                break;
            }
            k -= keep_stride[pos] * dims[pos];
            r -= rest_stride[pos] * dims[pos];
            digits[pos] = 0;
        }
    }
    Ok((keep_idx, rest_idx, rest_dim))
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Σ_{n > cutoff, n ∈ parity class} e^{−m} mⁿ/n!, summed from the first
/// omitted term outward. `parity = None` sums every n.
pub(crate) fn poisson_tail(mean: f64, cutoff: usize, parity: Option<Parity>) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut n = cutoff + 1;
    let mut term = (-mean + n as f64 * mean.ln() - ln_factorial(n)).exp();
    let mut sum = 0.0;
    loop {
        let counted = match parity {
            None => true,
            Some(Parity::Even) => n % 2 == 0,
            Some(Parity::Odd) => n % 2 == 1,
        };
        if counted {
            sum += term;
        }
        if (n as f64) > mean && term <= sum * 1e-18 + f64::MIN_POSITIVE {
            break;
        }
        n += 1;
        term *= mean / n as f64;
        if n > cutoff + 10_000 {
            break;
        }
    }
    sum
}

/// Truncated Fock amplitudes e^{−|α|²/2} αⁿ/√n! for n ≤ cutoff, and the
/// analytic tail mass beyond the cutoff.
pub(crate) fn coherent_amplitudes(alpha: C64, cutoff: usize) -> (Vec<C64>, f64) {
    let mut amps = Vec::with_capacity(cutoff + 1);
    let mut a = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    amps.push(a);
    for n in 1..=cutoff {
        a = a * alpha / (n as f64).sqrt();
        amps.push(a);
    }
    (amps, poisson_tail(alpha.norm_sqr(), cutoff, None))
}

/// Normalized cat N±(|β⟩ ± |−β⟩) with β = √2·α, its exact parity support, and
/// the analytic tail mass.
pub(crate) fn cat_amplitudes(alpha: C64, parity: Parity, cutoff: usize) -> Result<(Vec<C64>, f64)> {
    let beta = alpha * std::f64::consts::SQRT_2;
    let overlap = (-2.0 * beta.norm_sqr()).exp();
    let norm_sq_inv = match parity {
        Parity::Even => 2.0 + 2.0 * overlap,
        Parity::Odd => {
            if alpha.norm() == 0.0 {
                return Err(Error::OddCatAtZero);
            }
            2.0 - 2.0 * overlap
        }
    };
    let (coh, _) = coherent_amplitudes(beta, cutoff);
    let wanted = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let n_factor = norm_sq_inv.sqrt().recip();
    let amps = coh
        .iter()
        .enumerate()
        .map(|(n, c)| if n % 2 == wanted { c * (2.0 * n_factor) } else { ZERO })
        .collect();
    let tail = 4.0 * poisson_tail(beta.norm_sqr(), cutoff, Some(parity)) / norm_sq_inv;
    Ok((amps, tail))
}

fn single_mode_state(
    register: &ModeRegister,
    mode: usize,
    profile: &[C64],
    norm_deficit: f64,
) -> StateVector {
    let stride = register.strides()[mode];
    let mut amplitudes = vec![ZERO; register.total_dim()];
    for (n, a) in profile.iter().enumerate() {
        amplitudes[n * stride] = *a;
    }
    StateVector { register: register.clone(), amplitudes, norm_deficit }
}

/// Fock basis state. Modes not listed are in |0⟩.
pub fn make_fock(register: &ModeRegister, occupations: &[(&str, usize)]) -> Result<StateVector> {
    let mut occ = vec![0; register.len()];
    for &(name, n) in occupations {
        occ[register.index_of(name)?] = n;
    }
    let idx = register.flat_index(&occ)?;
    let mut amplitudes = vec![ZERO; register.total_dim()];
    amplitudes[idx] = C64::new(1.0, 0.0);
    Ok(StateVector { register: register.clone(), amplitudes, norm_deficit: 0.0 })
}

/// Truncated coherent state |α⟩ on one bosonic mode; other modes in vacuum.
pub fn make_coherent(register: &ModeRegister, mode: &str, alpha: C64) -> Result<StateVector> {
    let i = register.require_bosonic(mode)?;
    let (amps, tail) = coherent_amplitudes(alpha, register.modes()[i].1.max_occupation());
    Ok(single_mode_state(register, i, &amps, tail))
}

/// Cat state |CS±⟩ = N±(|√2α⟩ ± |−√2α⟩) on one bosonic mode.
pub fn make_cat(
    register: &ModeRegister,
    mode: &str,
    alpha: C64,
    parity: Parity,
) -> Result<StateVector> {
    let i = register.require_bosonic(mode)?;
    let (amps, tail) = cat_amplitudes(alpha, parity, register.modes()[i].1.max_occupation())?;
    Ok(single_mode_state(register, i, &amps, tail))
}

/// Hybrid qubit–coherent pair (|0⟩|α⟩ + |1⟩|−α⟩)/√2.
pub fn make_hybrid_pair(
    register: &ModeRegister,
    qubit_mode: &str,
    cv_mode: &str,
    alpha: C64,
) -> Result<StateVector> {
    let q = register.require_qubit(qubit_mode)?;
    let c = register.require_bosonic(cv_mode)?;
    let cutoff = register.modes()[c].1.max_occupation();
    let (plus, tail) = coherent_amplitudes(alpha, cutoff);
    let (minus, _) = coherent_amplitudes(-alpha, cutoff);
    let strides = register.strides();
    let mut amplitudes = vec![ZERO; register.total_dim()];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for n in 0..=cutoff {
        amplitudes[n * strides[c]] = plus[n] * h;
        amplitudes[strides[q] + n * strides[c]] = minus[n] * h;
    }
    Ok(StateVector { register: register.clone(), amplitudes, norm_deficit: tail })
}

/// Vacuum/single-photon Bell state on two modes (qubit or bosonic).
pub fn make_vsp_bell(
    register: &ModeRegister,
    mode1: &str,
    mode2: &str,
    which: VspBell,
) -> Result<StateVector> {
    let i = register.index_of(mode1)?;
    let j = register.index_of(mode2)?;
    if i == j {
        return Err(Error::DuplicateMode(mode1.to_string()));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (first, second, sign) = match which {
        VspBell::PhiPlus => ((0, 1), (1, 0), 1.0),
        VspBell::PhiMinus => ((0, 1), (1, 0), -1.0),
        VspBell::PsiPlus => ((0, 0), (1, 1), 1.0),
        VspBell::PsiMinus => ((0, 0), (1, 1), -1.0),
    };
    let strides = register.strides();
    let mut amplitudes = vec![ZERO; register.total_dim()];
    amplitudes[first.0 * strides[i] + first.1 * strides[j]] += C64::new(h, 0.0);
    amplitudes[second.0 * strides[i] + second.1 * strides[j]] += C64::new(sign * h, 0.0);
    Ok(StateVector { register: register.clone(), amplitudes, norm_deficit: 0.0 })
}

/// `|a⟩ ⊗ |b⟩` on the concatenated register.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let register = a.register.concat(&b.register)?;
    let mut amplitudes = Vec::with_capacity(register.total_dim());
    for x in &a.amplitudes {
        amplitudes.extend(b.amplitudes.iter().map(|y| x * y));
    }
    let kept = (1.0 - a.norm_deficit) * (1.0 - b.norm_deficit);
    Ok(StateVector { register, amplitudes, norm_deficit: 1.0 - kept })
}

/// Inner product ⟨a|b⟩.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.register != b.register {
        return Err(Error::RegisterMismatch("overlap needs identical registers".into()));
    }
    Ok(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).sum())
}

/// Register holding a single bosonic mode, handy for one-mode states.
pub fn single_mode(name: &str, cutoff: usize) -> Result<ModeRegister> {
    ModeRegister::new([(name, ModeSpec::bosonic(cutoff)?)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn fock_basis_states() {
        let r = single_mode("B", 4).unwrap();
        let v = make_fock(&r, &[("B", 0)]).unwrap();
        assert_eq!(v.amplitudes()[0], c(1.0));
        assert_eq!(v.norm_deficit(), 0.0);

        let r2 = ModeRegister::new([
            ("B", ModeSpec::Bosonic { cutoff: 4 }),
            ("D", ModeSpec::Bosonic { cutoff: 4 }),
        ])
        .unwrap();
        let v = make_fock(&r2, &[("B", 1), ("D", 0)]).unwrap();
        assert_eq!(v.amplitude(&[1, 0]).unwrap(), c(1.0));
        assert_eq!(v.amplitudes()[5], c(1.0));

        let err = make_fock(&r, &[("B", 5)]).unwrap_err();
        assert!(err.to_string().contains("occupation out of range"));
    }

    #[test]
    fn coherent_vacuum_and_overlap() {
        let r = single_mode("B", 10).unwrap();
        let v = make_coherent(&r, "B", c(0.0)).unwrap();
        assert_eq!(v.amplitudes()[0], c(1.0));
        assert_eq!(v.norm_deficit(), 0.0);

        let plus = make_coherent(&r, "B", c(0.5)).unwrap();
        let minus = make_coherent(&r, "B", c(-0.5)).unwrap();
        let ov = overlap(&plus, &minus).unwrap();
        assert_abs_diff_eq!(ov.re, (-0.5f64).exp(), epsilon = 1e-9);
        assert_abs_diff_eq!(ov.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coherent_mean_photon_number() {
        let r = single_mode("B", 12).unwrap();
        let v = make_coherent(&r, "B", c(0.3)).unwrap();
        assert_abs_diff_eq!(v.mean_occupation("B").unwrap(), 0.09, epsilon = 1e-9);
    }

    #[test]
    fn coherent_deficit_is_the_tail_mass() {
        let r = single_mode("B", 3).unwrap();
        let alpha = c(1.2);
        let v = make_coherent(&r, "B", alpha).unwrap();
        // Brute-force tail: 1 − Σ_{n≤3} Poisson(1.44).
        let m: f64 = 1.44;
        let head: f64 = (0..=3)
            .map(|n| (-m).exp() * m.powi(n) / (1..=n).map(|k| k as f64).product::<f64>())
            .sum();
        assert_abs_diff_eq!(v.norm_deficit(), 1.0 - head, epsilon = 1e-14);
        assert_abs_diff_eq!(v.norm_sqr() + v.norm_deficit(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn qubit_target_rejected() {
        let r = ModeRegister::new([("A", ModeSpec::Qubit)]).unwrap();
        assert!(matches!(make_coherent(&r, "A", c(0.1)), Err(Error::ModeKind { .. })));
    }

    #[test]
    fn odd_cat_tends_to_single_photon() {
        let r = single_mode("B", 12).unwrap();
        let cat = make_cat(&r, "B", c(1e-3), Parity::Odd).unwrap();
        let one = make_fock(&r, &[("B", 1)]).unwrap();
        assert!(overlap(&one, &cat).unwrap().norm_sqr() >= 1.0 - 1e-5);
        assert!(matches!(make_cat(&r, "B", c(0.0), Parity::Odd), Err(Error::OddCatAtZero)));
    }

    #[test]
    fn even_cat_parity_and_vacuum_amplitude() {
        let r = single_mode("B", 12).unwrap();
        let alpha: f64 = 0.5;
        let cat = make_cat(&r, "B", c(alpha), Parity::Even).unwrap();
        for (n, a) in cat.amplitudes().iter().enumerate() {
            if n % 2 == 1 {
                assert_eq!(*a, C64::new(0.0, 0.0));
            }
        }
        let n_plus = (2.0 + 2.0 * (-4.0 * alpha * alpha).exp()).powf(-0.5);
        let expected = 2.0 * n_plus * (-alpha * alpha).exp();
        assert_abs_diff_eq!(cat.amplitudes()[0].re, expected, epsilon = 1e-9);
        assert_abs_diff_eq!(cat.norm_sqr() + cat.norm_deficit(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cats_of_opposite_parity_are_orthogonal() {
        let r = single_mode("B", 12).unwrap();
        let even = make_cat(&r, "B", c(0.6), Parity::Even).unwrap();
        let odd = make_cat(&r, "B", c(0.6), Parity::Odd).unwrap();
        assert_eq!(overlap(&even, &odd).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn vsp_bell_states() {
        let r = ModeRegister::new([("A", ModeSpec::Qubit), ("C", ModeSpec::Qubit)]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = make_vsp_bell(&r, "A", "C", VspBell::PhiPlus).unwrap();
        assert_eq!(phi.amplitudes(), &[c(0.0), c(h), c(h), c(0.0)]);
        let psi = make_vsp_bell(&r, "A", "C", VspBell::PsiMinus).unwrap();
        assert_eq!(psi.amplitudes(), &[c(h), c(0.0), c(0.0), c(-h)]);
    }

    #[test]
    fn hybrid_pair_reduced_purity() {
        let r = ModeRegister::new([
            ("A", ModeSpec::Qubit),
            ("B", ModeSpec::Bosonic { cutoff: 25 }),
        ])
        .unwrap();
        let alpha: f64 = 2.0;
        let v = make_hybrid_pair(&r, "A", "B", c(alpha)).unwrap();
        let rho = v.reduced_density(&["A"]).unwrap();
        let purity = (rho.matrix() * rho.matrix()).trace().re;
        assert_abs_diff_eq!(purity, (1.0 + (-4.0 * alpha * alpha).exp()) / 2.0, epsilon = 1e-8);
        assert!(make_hybrid_pair(&r, "B", "A", c(alpha)).is_err());
    }

    #[test]
    fn hybrid_pair_qubit_coherence() {
        let r = ModeRegister::new([
            ("A", ModeSpec::Qubit),
            ("B", ModeSpec::Bosonic { cutoff: 12 }),
        ])
        .unwrap();
        let v = make_hybrid_pair(&r, "A", "B", c(0.5)).unwrap();
        let rho = v.reduced_density(&["A"]).unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0, 1)].re, (-0.5f64).exp() / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.matrix()[(0, 1)].re, 0.30327, epsilon = 1e-5);
    }

    #[test]
    fn tensor_dimensions_and_duplicates() {
        let pair_reg = |q: &str, b: &str| {
            ModeRegister::new([(q, ModeSpec::Qubit), (b, ModeSpec::Bosonic { cutoff: 5 })]).unwrap()
        };
        let ab = make_hybrid_pair(&pair_reg("A", "B"), "A", "B", c(0.3)).unwrap();
        let cd = make_hybrid_pair(&pair_reg("C", "D"), "C", "D", c(0.3)).unwrap();
        let all = tensor(&ab, &cd).unwrap();
        assert_eq!(all.amplitudes().len(), 2 * 6 * 2 * 6);
        assert!(matches!(tensor(&ab, &ab), Err(Error::DuplicateMode(_))));

        let r = single_mode("B", 3).unwrap();
        let r2 = single_mode("D", 3).unwrap();
        let vv = tensor(&StateVector::vacuum(&r), &StateVector::vacuum(&r2)).unwrap();
        assert_eq!(vv.amplitude(&[0, 0]).unwrap(), c(1.0));
    }

    #[test]
    fn overlap_register_mismatch() {
        let a = StateVector::vacuum(&single_mode("B", 3).unwrap());
        let b = StateVector::vacuum(&single_mode("D", 3).unwrap());
        assert!(overlap(&a, &b).is_err());
    }

    #[test]
    fn contract_mode_projects() {
        let r = ModeRegister::new([("A", ModeSpec::Qubit), ("C", ModeSpec::Qubit)]).unwrap();
        let phi = make_vsp_bell(&r, "A", "C", VspBell::PhiPlus).unwrap();
        let rest = phi.contract_mode("A", &[c(1.0), c(0.0)]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(rest.amplitudes(), &[c(0.0), c(h)]);
        assert_eq!(rest.register().names().collect::<Vec<_>>(), vec!["C"]);
    }
}
