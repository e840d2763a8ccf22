use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyswap::analytic::Scheme;
use hyswap::optics::QuadratureGrid;
use hyswap::protocols::run_scheme;
use hyswap::sweep::{default_cutoff, evaluate_point, format_number, run_sweep, write_csv, SweepConfig, CSV_HEADER};
use hyswap::verify::{run_criterion, Criterion, VerifyOptions};

#[derive(Parser)]
#[command(name = "hyswap", version, about = "Entanglement swapping with hybrid and single-photon resources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point and print a CSV row.
    Point {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long = "Tp", default_value_t = 1.0)]
        t_prime: f64,
        /// Defaults to $HYSWAP_CUTOFF, else 12.
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, default_value_t = QuadratureGrid::DEFAULT_X_MAX)]
        x_max: f64,
        #[arg(long, default_value_t = QuadratureGrid::DEFAULT_POINTS)]
        points: usize,
        /// Print each accepted outcome's probability and negativity instead.
        #[arg(long)]
        per_outcome: bool,
    },
    /// Run a sweep config and write CSV to its output_path (or stdout).
    Sweep {
        config: PathBuf,
        /// Overrides output_path from the config; "-" for stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance suite; the report goes to stderr.
    Verify {
        #[arg(long)]
        cutoff: Option<usize>,
    },
}

fn run(cli: Cli) -> hyswap::Result<bool> {
    match cli.command {
        Command::Point { scheme, alpha, t, t_prime, cutoff, x_max, points, per_outcome } => {
            let cutoff = match cutoff {
                Some(c) => c,
                None => default_cutoff()?,
            };
            let grid = QuadratureGrid::new(x_max, points)?;
            if per_outcome {
                let result = run_scheme(scheme, alpha, t, t_prime, cutoff, &grid)?;
                println!("outcome,probability,negativity");
                for o in &result.per_outcome {
                    println!("{},{},{}", o.label, format_number(o.probability), format_number(o.negativity));
                }
                return Ok(true);
            }
            let row = evaluate_point(scheme, alpha, t, t_prime, cutoff, &grid)?;
            println!("{CSV_HEADER}\n{}", row.to_csv());
            Ok(true)
        }
        Command::Sweep { config, output } => {
            let cfg = SweepConfig::from_path(&config)?;
            let rows = run_sweep(&cfg)?;
            match output.or(cfg.output_path) {
                Some(p) if p.as_os_str() != "-" => write_csv(&rows, std::io::BufWriter::new(std::fs::File::create(p)?))?,
                _ => write_csv(&rows, std::io::stdout().lock())?,
            }
            Ok(true)
        }
        Command::Verify { cutoff } => {
            let mut options = VerifyOptions::default();
            if let Some(c) = cutoff {
                options.cutoff = c;
            } else {
                options.cutoff = default_cutoff()?;
            }
            let mut stderr = std::io::stderr().lock();
            let mut all = true;
            for c in Criterion::ALL {
                let report = run_criterion(c, &options);
                all &= report.passed;
                writeln!(stderr, "{report}")?;
            }
            writeln!(stderr, "{}", if all { "all criteria passed" } else { "verification FAILED" })?;
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
