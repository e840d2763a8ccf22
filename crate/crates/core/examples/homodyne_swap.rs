//! Hybrid swapping with on-off detectors and homodyne detection, and the
//! feed-forward phase that undoes the outcome-dependent rotation.

use hyswap::analytic::{closed_form, Scheme};
use hyswap::entanglement::negativity_value;
use hyswap::optics::QuadratureGrid;
use hyswap::protocols::{feed_forward_correction, he_swap_homodyne, homodyne_conditional_state, scan_feed_forward};

pub fn run_example() -> hyswap::Result<()> {
    let (alpha, cutoff) = (0.3, 12);
    for x in [-1.0, 0.5] {
        let (rho, density) = homodyne_conditional_state(alpha, 1.0, 1.0, cutoff, x)?;
        let c = rho.matrix()[(3, 0)] / rho.matrix()[(0, 0)];
        let fixed = feed_forward_correction(&rho, "C", alpha, 1.0, x)?;
        println!(
            "x = {x:+.1}: density {density:.3e}, <11|rho|00>/<00|rho|00> phase {:+.4} (4ax = {:+.4}), after correction {:+.1e}",
            c.arg(),
            4.0 * alpha * x,
            (fixed.matrix()[(3, 0)] / fixed.matrix()[(0, 0)]).arg()
        );
    }

    let grid = QuadratureGrid::default();
    for t in [1.0, 0.5] {
        let r = he_swap_homodyne(alpha, t, 1.0, cutoff, &grid)?;
        let cf = closed_form(Scheme::HeHo, alpha, t, 1.0)?;
        println!(
            "T = {t}: p = {:.7} (closed {:.7}), E = {:.6} (closed {:.6}), E of the outcome state {:.6}",
            r.total_success_probability,
            cf.p,
            r.averaged_negativity,
            cf.e,
            negativity_value(&r.per_outcome[0].post_state, &["A"])?
        );
    }

    let coarse = QuadratureGrid::new(6.0, 81)?;
    let ks: Vec<f64> = (0..=8).map(|i| 2.0 + 0.25 * i as f64).collect();
    let scan = scan_feed_forward(alpha, 0.5, 1.0, 10, &coarse, &ks)?;
    println!("feed-forward coefficient scan at T = 0.5 (nominal {:.4}):", scan.nominal_coefficient);
    for (k, e) in scan.coefficients.iter().zip(&scan.negativities) {
        println!("  kappa = {k:.2}: E = {e:.6}");
    }
    println!("best kappa {:.2}", scan.best_coefficient);
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
