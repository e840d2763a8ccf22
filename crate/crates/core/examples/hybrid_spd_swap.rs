//! Hybrid qubit–coherent swapping with single-photon detectors, including
//! detector inefficiency.

use hyswap::analytic::{closed_form, Scheme};
use hyswap::protocols::{dv_swap, he_swap_spd};

pub fn run_example() -> hyswap::Result<()> {
    let cutoff = 12;
    let r = he_swap_spd(0.3, 1.0, 1.0, cutoff)?;
    println!("a = 0.3, T = 1: p = {:.6}, E = {:.9}", r.total_success_probability, r.averaged_negativity);
    for (label, e) in r.per_outcome_negativities() {
        println!("  outcome {label}: E = {e:.9}");
    }

    let he = he_swap_spd(0.3, 0.5, 0.7, cutoff)?;
    let dv = dv_swap(0.5, 0.7, cutoff)?;
    println!(
        "T = 0.5, T' = 0.7: hybrid E = {:.4} (closed {:.4}), DV E = {:.4} (closed {:.4})",
        he.averaged_negativity,
        closed_form(Scheme::HeSpd, 0.3, 0.5, 0.7)?.e,
        dv.averaged_negativity,
        closed_form(Scheme::Dv, 0.3, 0.5, 0.7)?.e
    );

    // Detector efficiency enters only through T·T'.
    let a = he_swap_spd(0.5, 0.8, 0.6, cutoff)?;
    let b = he_swap_spd(0.5, 0.48, 1.0, cutoff)?;
    println!(
        "(T, T') = (0.8, 0.6) vs (0.48, 1): dp = {:.1e}, dE = {:.1e}",
        (a.total_success_probability - b.total_success_probability).abs(),
        (a.averaged_negativity - b.averaged_negativity).abs()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
