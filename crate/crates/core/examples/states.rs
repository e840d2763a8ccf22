//! Truncated coherent, cat and hybrid states, and what truncation costs.

use hyswap::fock::{make_cat, make_coherent, make_hybrid_pair, single_mode, ModeRegister, ModeSpec, Parity};
use hyswap::C64;

pub fn run_example() -> hyswap::Result<()> {
    let alpha = C64::new(0.7, 0.0);
    for cutoff in [4, 8, 12] {
        let reg = single_mode("b", cutoff)?;
        let coh = make_coherent(&reg, "b", alpha)?;
        let even = make_cat(&reg, "b", alpha, Parity::Even)?;
        println!(
            "cutoff {cutoff:>2}: |a=0.7> keeps {:.12}, deficit {:.2e}; even cat deficit {:.2e}, <n> = {:.6}",
            coh.norm_sqr(),
            coh.norm_deficit(),
            even.norm_deficit(),
            even.mean_occupation("b")?
        );
    }

    // Odd cats have no vacuum component and only odd photon numbers.
    let reg = single_mode("b", 8)?;
    let odd = make_cat(&reg, "b", alpha, Parity::Odd)?;
    let amps: Vec<String> = odd.amplitudes().iter().map(|z| format!("{:.4}", z.re)).collect();
    println!("odd cat amplitudes: [{}]", amps.join(", "));

    let pair_reg = ModeRegister::new([("A", ModeSpec::Qubit), ("B", ModeSpec::bosonic(12)?)])?;
    let pair = make_hybrid_pair(&pair_reg, "A", "B", alpha)?;
    let rho_a = pair.reduced_density(&["A"])?;
    println!(
        "hybrid pair: qubit coherence <0|rho_A|1> = {:.6} (e^(-2a^2) / 2 = {:.6})",
        rho_a.matrix()[(0, 1)].re,
        (-2.0 * 0.49f64).exp() / 2.0
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
