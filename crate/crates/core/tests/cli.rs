use std::path::PathBuf;
use std::process::{Command, Output};

fn hyswap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyswap")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Header and rows of CSV output as column-name lookups.
fn parse_csv(text: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_owned).collect();
    lines
        .map(|l| header.iter().cloned().zip(l.split(',').map(str::to_owned)).collect())
        .collect()
}

fn field(row: &[(String, String)], name: &str) -> f64 {
    row.iter().find(|(k, _)| k == name).unwrap().1.parse().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn example_config(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn point_dv_lossless() {
    let rows = parse_csv(&stdout(&hyswap(&["point", "--scheme", "dv", "--T", "1.0", "--cutoff", "4"])));
    assert_eq!(rows.len(), 1);
    assert!((field(&rows[0], "p_sim") - 0.5).abs() < 1e-10);
    assert!((field(&rows[0], "E_sim") - 1.0).abs() < 1e-10);
    assert!(field(&rows[0], "err_p") < 1e-10 && field(&rows[0], "err_E") < 1e-10);
}

#[test]
fn point_hybrid_headline() {
    let args = ["point", "--scheme", "he-spd", "--alpha", "0.3", "--T", "0.5", "--Tp", "0.7"];
    let rows = parse_csv(&stdout(&hyswap(&args)));
    assert!((field(&rows[0], "E_sim") - 0.791).abs() < 1e-3);
}

#[test]
fn point_homodyne() {
    let rows = parse_csv(&stdout(&hyswap(&["point", "--scheme", "he-ho", "--alpha", "0.3", "--T", "1"])));
    assert!((field(&rows[0], "p_sim") - 0.003704).abs() < 1e-6);
    assert!((field(&rows[0], "p_sim") - field(&rows[0], "p_closed")).abs() < 1e-10);
    assert!((field(&rows[0], "E_sim") - 1.0).abs() < 2e-3);
}

#[test]
fn point_per_outcome() {
    let args = ["point", "--scheme", "he-spd", "--alpha", "0.3", "--T", "0.5", "--per-outcome"];
    let text = stdout(&hyswap(&args));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "outcome,probability,negativity");
    assert_eq!(lines.len(), 3);
    for l in &lines[1..] {
        let e: f64 = l.split(',').nth(2).unwrap().parse().unwrap();
        assert!((e - (-0.18f64).exp()).abs() < 1e-9);
    }
}

#[test]
fn bad_arguments_fail() {
    assert!(!hyswap(&["point", "--scheme", "dv", "--bogus", "1"]).status.success());
    assert!(!hyswap(&["point", "--scheme", "teleport", "--T", "1"]).status.success());
    let out = hyswap(&["point", "--scheme", "dv", "--T", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic() {
    let cfg = scratch("small.toml");
    std::fs::write(
        &cfg,
        "schemes = [\"dv\", \"he-spd\", \"he-ho\"]\nalpha_values = [0.5]\nT_values = [1.0, 0.6]\n\
         T_prime = 0.8\ncutoff = 8\nparallelism = 3\nhomodyne.points = 41\n",
    )
    .unwrap();
    let a = stdout(&hyswap(&["sweep", cfg.to_str().unwrap()]));
    let b = stdout(&hyswap(&["sweep", cfg.to_str().unwrap(), "-o", "-"]));
    assert_eq!(a, b);
    assert_eq!(parse_csv(&a).len(), 6);

    let file = scratch("small.csv");
    stdout(&hyswap(&["sweep", cfg.to_str().unwrap(), "-o", file.to_str().unwrap()]));
    assert_eq!(std::fs::read_to_string(file).unwrap(), a);
}

#[test]
fn efficiency_sweep_matches_closed_forms() {
    let text = stdout(&hyswap(&["sweep", &example_config("fig3.toml"), "-o", "-"]));
    let rows = parse_csv(&text);
    // 3 schemes × 2 amplitudes × 21 loss values
    assert_eq!(rows.len(), 126);
    let mut checked = 0;
    for row in &rows {
        let err_e = field(row, "err_E");
        assert!(field(row, "err_p") < 1e-6);
        if !err_e.is_nan() {
            assert!(err_e < 1e-6, "{row:?}");
            checked += 1;
        }
    }
    assert!(checked >= 120);
}

#[test]
fn malformed_config_names_the_key() {
    let cfg = scratch("bad.toml");
    std::fs::write(&cfg, "schemes = [\"dv\"]\nalpha_values = [0.3]\nT_values = [1.0]\nhomodyne.spacing = 0.1\n").unwrap();
    let out = hyswap(&["sweep", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("homodyne.spacing"));
}

#[test]
fn verify_passes() {
    let out = hyswap(&["verify"]);
    let report = String::from_utf8_lossy(&out.stderr);
    assert!(out.status.success(), "{report}");
    assert_eq!(report.lines().filter(|l| l.starts_with("[PASS]")).count(), 11);
}
