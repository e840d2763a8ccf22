//! Balanced beam splitter on Fock and coherent inputs.

use hyswap::fock::{make_coherent, make_fock, overlap, single_mode, tensor, ModeRegister, ModeSpec, StateVector};
use hyswap::optics::{apply_bs, BeamSplitter, BeamSplitterParams};
use hyswap::C64;

fn show(label: &str, v: &StateVector) -> hyswap::Result<()> {
    let mut terms = Vec::new();
    for (idx, amp) in v.amplitudes().iter().enumerate() {
        if amp.norm() > 1e-12 {
            let occ = v.register().occupations(idx);
            terms.push(format!("{:+.4}|{},{}>", amp.re, occ[0], occ[1]));
        }
    }
    println!("{label:>10} -> {}", terms.join(" "));
    Ok(())
}

pub fn run_example() -> hyswap::Result<()> {
    let reg = ModeRegister::new([("a", ModeSpec::bosonic(3)?), ("b", ModeSpec::bosonic(3)?)])?;
    let bs = BeamSplitterParams::balanced();
    for (label, occ) in [("|1,0>", vec![("a", 1)]), ("|0,1>", vec![("b", 1)]), ("|1,1>", vec![("a", 1), ("b", 1)])] {
        show(label, &apply_bs(&make_fock(&reg, &occ)?, "a", "b", bs)?)?;
    }

    // |a>|b> -> |(a-b)/sqrt2>|(a+b)/sqrt2>, up to truncation.
    let cutoff = 12;
    let coherent = |name: &str, z: C64| -> hyswap::Result<StateVector> { make_coherent(&single_mode(name, cutoff)?, name, z) };
    let a = C64::new(0.6, 0.0);
    let out = apply_bs(&tensor(&coherent("a", a)?, &coherent("b", a)?)?, "a", "b", bs)?;
    let want = tensor(&coherent("a", C64::new(0.0, 0.0))?, &coherent("b", a * std::f64::consts::SQRT_2)?)?;
    let fid = overlap(&want, &out)?.norm_sqr() / (out.norm_sqr() * want.norm_sqr());
    println!("BS|0.6,0.6> vs |0, 0.6*sqrt2>: 1 - F = {:.2e}", 1.0 - fid);

    let u = BeamSplitter::new(BeamSplitterParams::from_transmission(0.3)?, 5, 5).to_matrix();
    let defect = (u.adjoint() * &u - nalgebra::DMatrix::identity(25, 25)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("T = 0.3 splitter on 5x5 levels: max |U^dag U - I| = {defect:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
