//! Parameter sweeps: config parsing, point evaluation and CSV output.
//!
//! A sweep config is a TOML document:
//!
//! ```toml
//! schemes = ["dv", "he-spd", "he-ho"]
//! alpha_values = [0.3, 0.7]
//! T_prime = 1.0
//! cutoff = 12
//! parallelism = 4
//! output_path = "fig2.csv"
//! loss = { start = 0.0, stop = 1.0, step = 0.05 }   # 1 − T; or T_values = [...]
//! homodyne.x_max = 6.0
//! homodyne.points = 201
//! ```

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use toml::{Table, Value};

use crate::analytic::{closed_form, Scheme};
use crate::error::{Error, Result};
use crate::fock::DEFAULT_CUTOFF;
use crate::optics::QuadratureGrid;
use crate::protocols::run_scheme;

pub const CUTOFF_ENV: &str = "HYSWAP_CUTOFF";

pub const CSV_HEADER: &str = "scheme,alpha,T,T_prime,cutoff,p_sim,E_sim,p_closed,E_closed,err_p,err_E";

/// Cutoff used when none is given: `HYSWAP_CUTOFF` if set, else 12.
pub fn default_cutoff() -> Result<usize> {
    match std::env::var(CUTOFF_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Config {
            key: CUTOFF_ENV.into(),
            message: format!("expected a positive integer, got `{s}`"),
        }),
        Err(_) => Ok(DEFAULT_CUTOFF),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub schemes: Vec<Scheme>,
    pub alpha_values: Vec<f64>,
    pub t_values: Vec<f64>,
    pub t_prime: f64,
    pub cutoff: usize,
    pub x_max: f64,
    pub points: usize,
    pub output_path: Option<PathBuf>,
    pub parallelism: usize,
}

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config { key: key.into(), message: message.into() }
}

fn as_f64(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        other => Err(config_err(key, format!("expected a number, got {}", other.type_str()))),
    }
}

fn as_usize(key: &str, v: &Value) -> Result<usize> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        other => Err(config_err(key, format!("expected a non-negative integer, got {other}"))),
    }
}

fn as_f64_list(key: &str, v: &Value) -> Result<Vec<f64>> {
    let items = v.as_array().ok_or_else(|| config_err(key, "expected a list of numbers"))?;
    if items.is_empty() {
        return Err(config_err(key, "list must not be empty"));
    }
    items.iter().map(|x| as_f64(key, x)).collect()
}

fn as_table<'a>(key: &str, v: &'a Value) -> Result<&'a Table> {
    v.as_table().ok_or_else(|| config_err(key, "expected a table"))
}

fn reject_unknown(table: &Table, prefix: &str, allowed: &[&str]) -> Result<()> {
    match table.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(config_err(&format!("{prefix}{k}"), "unknown key")),
        None => Ok(()),
    }
}

/// Values of 1 − T from a start/stop/step range, inclusive of `stop` when it
/// lies on the grid; returned as transmissions T.
fn loss_range(table: &Table) -> Result<Vec<f64>> {
    reject_unknown(table, "loss.", &["start", "stop", "step"])?;
    let get = |k: &str| -> Result<f64> {
        let key = format!("loss.{k}");
        as_f64(&key, table.get(k).ok_or_else(|| config_err(&key, "missing"))?)
    };
    let (start, stop, step) = (get("start")?, get("stop")?, get("step")?);
    if !(step > 0.0) {
        return Err(config_err("loss.step", "must be positive"));
    }
    if stop < start {
        return Err(config_err("loss.stop", "must not be below loss.start"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n)
        .map(|i| {
            let t = 1.0 - (start + i as f64 * step);
            // Keep 0.95 as 0.95 rather than 0.9500000000000001.
            (t * 1e12).round() / 1e12
        })
        .collect())
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| config_err("<document>", e.message()))?;
        reject_unknown(
            &table,
            "",
            &[
                "schemes",
                "scheme",
                "alpha_values",
                "T_values",
                "loss",
                "T_prime",
                "cutoff",
                "homodyne",
                "output_path",
                "parallelism",
            ],
        )?;

        let schemes = match (table.get("schemes"), table.get("scheme")) {
            (Some(_), Some(_)) => return Err(config_err("scheme", "give either `scheme` or `schemes`")),
            (Some(v), None) | (None, Some(v)) => {
                let key = if table.contains_key("schemes") { "schemes" } else { "scheme" };
                let items: Vec<Value> = match v {
                    Value::String(_) => vec![v.clone()],
                    Value::Array(a) => a.clone(),
                    _ => return Err(config_err(key, "expected a scheme name or a list of them")),
                };
                if items.is_empty() {
                    return Err(config_err(key, "list must not be empty"));
                }
                items
                    .iter()
                    .map(|s| {
                        let name = s.as_str().ok_or_else(|| config_err(key, "scheme names are strings"))?;
                        name.parse::<Scheme>().map_err(|e| match e {
                            Error::Config { message, .. } => config_err(key, message),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            (None, None) => return Err(config_err("schemes", "missing")),
        };

        let alpha_values = match table.get("alpha_values") {
            Some(v) => as_f64_list("alpha_values", v)?,
            None if schemes.iter().all(|s| *s == Scheme::Dv) => vec![0.0],
            None => return Err(config_err("alpha_values", "missing")),
        };
        if let Some(a) = alpha_values.iter().find(|a| !(**a >= 0.0 && a.is_finite())) {
            return Err(config_err("alpha_values", format!("{a} is not a finite value >= 0")));
        }

        let t_values = match (table.get("T_values"), table.get("loss")) {
            (Some(_), Some(_)) => return Err(config_err("loss", "give either `T_values` or `loss`, not both")),
            (Some(v), None) => as_f64_list("T_values", v)?,
            (None, Some(v)) => loss_range(as_table("loss", v)?)?,
            (None, None) => return Err(config_err("T_values", "missing (or give a `loss` range)")),
        };
        if let Some(t) = t_values.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(config_err("T_values", format!("{t} is outside [0, 1]")));
        }

        let t_prime = table.get("T_prime").map(|v| as_f64("T_prime", v)).transpose()?.unwrap_or(1.0);
        if !(0.0..=1.0).contains(&t_prime) {
            return Err(config_err("T_prime", format!("{t_prime} is outside [0, 1]")));
        }

        let cutoff = match table.get("cutoff") {
            Some(v) => as_usize("cutoff", v)?,
            None => default_cutoff()?,
        };
        if cutoff < 2 {
            return Err(config_err("cutoff", "must be at least 2"));
        }

        let (mut x_max, mut points) = (QuadratureGrid::DEFAULT_X_MAX, QuadratureGrid::DEFAULT_POINTS);
        if let Some(v) = table.get("homodyne") {
            let h = as_table("homodyne", v)?;
            reject_unknown(h, "homodyne.", &["x_max", "points"])?;
            if let Some(v) = h.get("x_max") {
                x_max = as_f64("homodyne.x_max", v)?;
            }
            if let Some(v) = h.get("points") {
                points = as_usize("homodyne.points", v)?;
            }
        }
        QuadratureGrid::new(x_max, points).map_err(|e| match e {
            Error::EmptyGrid => config_err("homodyne.points", "must be at least 1"),
            _ => config_err("homodyne.x_max", "must be positive"),
        })?;

        let output_path = match table.get("output_path") {
            Some(Value::String(s)) => Some(PathBuf::from(s)),
            Some(_) => return Err(config_err("output_path", "expected a string")),
            None => None,
        };

        let parallelism = match table.get("parallelism") {
            Some(v) => as_usize("parallelism", v)?,
            None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        };
        if parallelism == 0 {
            return Err(config_err("parallelism", "must be at least 1"));
        }

        Ok(Self { schemes, alpha_values, t_values, t_prime, cutoff, x_max, points, output_path, parallelism })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    /// Grid points in output order: scheme, then α, then T.
    pub fn points(&self) -> Vec<(Scheme, f64, f64)> {
        let mut out = Vec::with_capacity(self.schemes.len() * self.alpha_values.len() * self.t_values.len());
        for &s in &self.schemes {
            for &a in &self.alpha_values {
                for &t in &self.t_values {
                    out.push((s, a, t));
                }
            }
        }
        out
    }

    pub fn grid(&self) -> Result<QuadratureGrid> {
        QuadratureGrid::new(self.x_max, self.points)
    }
}

/// One CSV row: simulated and closed-form values at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRow {
    pub scheme: Scheme,
    pub alpha: f64,
    pub t: f64,
    pub t_prime: f64,
    pub cutoff: usize,
    pub p_sim: f64,
    /// NaN when the point never succeeds (T = 0 or T′ = 0).
    pub e_sim: f64,
    pub p_closed: f64,
    pub e_closed: f64,
    pub err_p: f64,
    pub err_e: f64,
}

impl PointRow {
    pub fn to_csv(&self) -> String {
        [
            self.scheme.as_str().to_string(),
            format_number(self.alpha),
            format_number(self.t),
            format_number(self.t_prime),
            self.cutoff.to_string(),
            format_number(self.p_sim),
            format_number(self.e_sim),
            format_number(self.p_closed),
            format_number(self.e_closed),
            format_number(self.err_p),
            format_number(self.err_e),
        ]
        .join(",")
    }
}

/// Rounds to 12 significant digits and prints the shortest string that reads
/// back as that rounded value.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn evaluate_point(
    scheme: Scheme,
    alpha: f64,
    t: f64,
    t_prime: f64,
    cutoff: usize,
    grid: &QuadratureGrid,
) -> Result<PointRow> {
    let sim = run_scheme(scheme, alpha, t, t_prime, cutoff, grid)?;
    let cf = closed_form(scheme, alpha, t, t_prime)?;
    let (p_sim, e_sim) = (sim.total_success_probability, sim.averaged_negativity);
    Ok(PointRow {
        scheme,
        alpha,
        t,
        t_prime,
        cutoff,
        p_sim,
        e_sim,
        p_closed: cf.p,
        e_closed: cf.e,
        err_p: (p_sim - cf.p).abs(),
        err_e: (e_sim - cf.e).abs(),
    })
}

/// Evaluates every point on a pool of `config.parallelism` threads; rows come
/// back in config order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<PointRow>> {
    let grid = config.grid()?;
    let points = config.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| config_err("parallelism", e.to_string()))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(s, a, t)| evaluate_point(s, a, t, config.t_prime, config.cutoff, &grid))
            .collect()
    })
}

pub fn write_csv<W: Write>(rows: &[PointRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}
