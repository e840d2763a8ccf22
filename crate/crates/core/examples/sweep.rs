//! Runs the sweep in `fig2.toml` (or a config given on the command line) and
//! prints the CSV to stdout.

use std::path::PathBuf;

use hyswap::sweep::{run_sweep, write_csv, SweepConfig};

fn default_config() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fig2.toml"))
}

pub fn run_example() -> hyswap::Result<()> {
    run_config(default_config())
}

fn run_config(path: PathBuf) -> hyswap::Result<()> {
    let config = SweepConfig::from_path(path)?;
    let rows = run_sweep(&config)?;
    write_csv(&rows, std::io::stdout().lock())?;
    let worst_e = rows.iter().map(|r| r.err_e).filter(|e| !e.is_nan()).fold(0.0, f64::max);
    let worst_p = rows.iter().map(|r| r.err_p).fold(0.0, f64::max);
    eprintln!("{} rows; max |dp| = {worst_p:.2e}, max |dE| = {worst_e:.2e}", rows.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> hyswap::Result<()> {
    run_config(std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(default_config))
}
