//! Negativity of Bell, Werner and hybrid states.

use hyswap::entanglement::{negativity, negativity_value, DEFAULT_EIGEN_TOLERANCE};
use hyswap::fock::{make_hybrid_pair, make_vsp_bell, DensityOperator, ModeRegister, ModeSpec, VspBell};
use hyswap::C64;
use nalgebra::DMatrix;

pub fn run_example() -> hyswap::Result<()> {
    let ac = ModeRegister::new([("A", ModeSpec::Qubit), ("C", ModeSpec::Qubit)])?;
    let bell = make_vsp_bell(&ac, "A", "C", VspBell::PhiPlus)?.to_density();
    let report = negativity(&bell, &["A"], DEFAULT_EIGEN_TOLERANCE)?;
    println!("Bell state: E = {:.12}, negative eigenvalues {:?}", report.value, report.negative_eigenvalues);

    println!("Werner p -> E (oracle max(0, (3p-1)/2))");
    for p in [0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
        let m = bell.matrix().map(|z| z * p) + DMatrix::identity(4, 4).map(|z: C64| z * ((1.0 - p) / 4.0));
        let w = DensityOperator::from_matrix(ac.clone(), m)?;
        println!("  {p:.3} -> {:.6}  ({:.6})", negativity_value(&w, &["A"])?, ((3.0 * p - 1.0) / 2.0).max(0.0));
    }

    println!("hybrid pair (|0>|a> + |1>|-a>)/sqrt2: E vs sqrt(1 - e^(-4a^2))");
    for alpha in [0.3, 0.7, 1.2] {
        let reg = ModeRegister::new([("A", ModeSpec::Qubit), ("B", ModeSpec::bosonic(16)?)])?;
        let rho = make_hybrid_pair(&reg, "A", "B", C64::new(alpha, 0.0))?.to_density();
        println!("  a = {alpha}: {:.9}  ({:.9})", negativity_value(&rho, &["A"])?, (1.0 - (-4.0 * alpha * alpha).exp()).sqrt());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
