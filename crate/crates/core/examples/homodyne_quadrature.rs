//! Quadrature wavefunctions and the integration grid standing in for the
//! homodyne continuum.

use hyswap::fock::{make_coherent, single_mode};
use hyswap::optics::{homodyne_vector, QuadratureGrid};
use hyswap::C64;

pub fn run_example() -> hyswap::Result<()> {
    let reg = single_mode("b", 16)?;
    let coh = make_coherent(&reg, "b", C64::new(0.5, 0.0))?;
    let grid = QuadratureGrid::default();
    for theta in [0.0, std::f64::consts::FRAC_PI_2] {
        let mut total = 0.0;
        let mut mean = 0.0;
        for (x, w) in grid.iter() {
            let e = homodyne_vector(&reg, "b", x, theta)?;
            let p = coh.contract_mode("b", e.vector().expect("rank one"))?.amplitudes()[0].norm_sqr();
            total += w * p;
            mean += w * p * x;
        }
        println!("theta = {theta:.4}: integral {total:.12}, <x_theta> = {mean:.8}");
    }
    println!("expected <x_0> = sqrt2 * 0.5 = {:.8}", std::f64::consts::SQRT_2 * 0.5);

    for (x_max, points) in [(6.0, 201), (9.0, 301)] {
        let g = QuadratureGrid::new(x_max, points)?;
        println!(
            "grid x_max = {x_max}, {points} points: completeness defect n<=8 {:.1e}, n<=12 {:.1e}",
            g.completeness_defect(8, 0.0),
            g.completeness_defect(12, 0.0)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_example()
}
