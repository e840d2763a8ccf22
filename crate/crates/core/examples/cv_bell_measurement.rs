//! Coherent-state Bell measurement failure and the four-element POVM.

use hyswap::analytic::cv_bsm_failure;
use hyswap::fock::{make_cat, single_mode, Parity};
use hyswap::protocols::{build_k_povm, cv_bsm_failure_prob, k_povm_lambda};
use hyswap::C64;

pub fn run_example() -> hyswap::Result<()> {
    println!("alpha  P_fail(sim)     (2cosh 2a^2)^-1");
    for (alpha, cutoff) in [(0.2, 10), (0.5, 12), (1.0, 20), (2.0, 30), (3.0, 40)] {
        println!("{alpha:<5}  {:.10}  {:.10}", cv_bsm_failure_prob(alpha, cutoff)?, cv_bsm_failure(alpha));
    }

    let alpha = 0.8;
    let reg = single_mode("B", 16)?;
    let k = build_k_povm(alpha, 16)?;
    println!("lambda = 2e^(-a^2) = {:.6}", k_povm_lambda(alpha));
    for parity in [Parity::Even, Parity::Odd] {
        let cat = make_cat(&reg, "B", C64::new(alpha, 0.0), parity)?;
        let probs: Vec<String> = k
            .iter()
            .map(|e| Ok(format!("{} {:.4}", e.label(), e.probability(&cat)?)))
            .collect::<hyswap::Result<_>>()?;
        println!("{parity:?} cat: {}", probs.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
