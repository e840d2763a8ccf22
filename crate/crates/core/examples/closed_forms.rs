//! Closed-form success probabilities and negativities for the three schemes.

use hyswap::analytic::{closed_form, Scheme};

pub fn run_example() -> hyswap::Result<()> {
    for t_prime in [1.0, 0.7] {
        println!("T' = {t_prime}");
        println!("  1-T   dv(p, E)            he-spd a=0.3 (p, E)  he-ho a=0.3 (p, E)");
        for k in [0, 2, 5, 8] {
            let t = 1.0 - k as f64 / 10.0;
            let cells: Vec<String> = Scheme::ALL
                .iter()
                .map(|&s| closed_form(s, 0.3, t, t_prime).map(|c| format!("{:.5} {:.5}", c.p, c.e)))
                .collect::<hyswap::Result<_>>()?;
            println!("  {:.1}   {}", 1.0 - t, cells.join("   "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
