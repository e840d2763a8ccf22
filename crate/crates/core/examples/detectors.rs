//! Number-resolving, on-off and single-photon detectors, ideal and lossy.

use hyswap::fock::{make_coherent, single_mode};
use hyswap::optics::{completeness_defect, onoff_elements, pnr_elements, spd_elements, with_inefficiency};
use hyswap::C64;

pub fn run_example() -> hyswap::Result<()> {
    let reg = single_mode("b", 14)?;
    let alpha: f64 = 0.7;
    let coh = make_coherent(&reg, "b", C64::new(alpha, 0.0))?;

    for t_prime in [1.0, 0.7] {
        let onoff = with_inefficiency(&onoff_elements(&reg, "b")?, t_prime)?;
        let click = onoff[1].probability(&coh)?;
        println!(
            "T' = {t_prime}: P(click) = {click:.10}, 1 - exp(-T' a^2) = {:.10}",
            1.0 - (-t_prime * alpha * alpha).exp()
        );
        let spd = with_inefficiency(&spd_elements(&reg, "b")?, t_prime)?;
        let probs: Vec<String> =
            spd.iter().map(|e| Ok(format!("{}: {:.6}", e.label(), e.probability(&coh)?))).collect::<hyswap::Result<_>>()?;
        println!("         SPD {}  (completeness defect {:.1e})", probs.join(", "), completeness_defect(&spd));
    }

    let pnr = pnr_elements(&reg, "b", 3)?;
    let labels: Vec<&str> = pnr.iter().map(|e| e.label()).collect();
    println!("PNR up to 3 photons: elements {labels:?}, completeness defect {:.1e}", completeness_defect(&pnr));
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
