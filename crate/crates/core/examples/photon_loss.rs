//! Pure-loss channel: Kraus form, beam-splitter dilation, and unravelling.

use hyswap::fock::{make_coherent, make_fock, single_mode, trace_distance, DensityOperator};
use hyswap::optics::{apply_loss_by_dilation, gamma_tau_to_t, LossChannel};
use hyswap::C64;

pub fn run_example() -> hyswap::Result<()> {
    let t = gamma_tau_to_t(0.5)?;
    let reg = single_mode("b", 8)?;
    let channel = LossChannel::new(t, 8)?;
    println!("gamma*tau = 0.5 -> T = {t:.6}; Kraus completeness defect {:.1e}", channel.completeness_defect());

    let two = make_fock(&reg, &[("b", 2)])?.to_density();
    let out = channel.apply(&two, "b")?;
    let diag: Vec<String> = (0..3).map(|n| format!("{:.6}", out.matrix()[(n, n)].re)).collect();
    println!("|2> after loss: P(0,1,2) = [{}]", diag.join(", "));
    println!("binomial       : [{:.6}, {:.6}, {:.6}]", (1.0 - t).powi(2), 2.0 * t * (1.0 - t), t * t);

    let coh = make_coherent(&reg, "b", C64::new(0.8, 0.0))?.to_density();
    let kraus = channel.apply(&coh, "b")?;
    let dilated = apply_loss_by_dilation(&coh, "b", t)?;
    println!("Kraus vs dilation on |0.8>: trace distance {:.2e}", trace_distance(&kraus, &dilated)?);

    // The same channel as an ensemble of pure branches.
    let branches = channel.unravel(&make_fock(&reg, &[("b", 2)])?, "b")?;
    let mut sum: Option<DensityOperator> = None;
    for b in &branches {
        let d = b.to_density();
        match sum.as_mut() {
            Some(s) => s.add_assign(&d)?,
            None => sum = Some(d),
        }
    }
    println!("{} branches; sum differs from the channel by {:.2e}", branches.len(), trace_distance(&sum.expect("non-empty"), &out)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
