//! Swapping vacuum/single-photon entanglement through lossy channels.

use hyswap::analytic;
use hyswap::protocols::dv_swap;

pub fn run_example() -> hyswap::Result<()> {
    let r = dv_swap(1.0, 1.0, 4)?;
    for o in &r.per_outcome {
        println!("T = 1, outcome {}: p = {:.4}, E = {:.6}", o.label, o.probability, o.negativity);
    }
    println!("heralded state for 10 (basis 00, 01, 10, 11):");
    let m = r.outcome("10").expect("accepted outcome").post_state.matrix().clone();
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:+.3}", m[(i, j)].re)).collect();
        println!("  [{}]", row.join(" "));
    }

    println!("1-T      p_sim     p_closed  E_sim     E_closed");
    for k in [0, 2, 4, 6, 8] {
        let t = 1.0 - k as f64 / 10.0;
        let r = dv_swap(t, 1.0, 4)?;
        println!(
            "{:.1}  {:.7} {:.7} {:.7} {:.7}",
            1.0 - t,
            r.total_success_probability,
            analytic::dv_probability(t),
            r.averaged_negativity,
            analytic::dv_negativity(t)
        );
    }
    println!("T -> 0: E = {:.6} (limit {:.6})", dv_swap(1e-6, 1.0, 2)?.averaged_negativity, analytic::dv_loss_limit());
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
