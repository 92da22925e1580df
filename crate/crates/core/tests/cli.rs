use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levy-spectral"))
        .args(args)
        .env("LEVY_SPECTRAL_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn csv(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn stable_theta_is_constant() {
    let (header, rows) = csv(&run(&["theta", "stable:alpha=1.5", "--lambda", "0.1:10:100"]));
    assert_eq!(header, ["lambda", "K", "theta"]);
    assert_eq!(rows.len(), 100);
    for r in &rows {
        assert!((r[2] - std::f64::consts::FRAC_PI_6).abs() < 1e-6, "{r:?}");
    }
}

#[test]
fn brownian_theta_vanishes() {
    let (_, rows) = csv(&run(&["theta", "stable:alpha=2", "--lambda", "0.1:10:20"]));
    assert!(rows.iter().all(|r| r[2].abs() < 1e-10));
}

#[test]
fn brownian_plus_poisson_has_negative_phase() {
    let (_, rows) = csv(&run(&["theta", "bmpoisson:rate=9", "--lambda", "0.1:8:200"]));
    assert!(rows.iter().any(|r| r[2] < 0.0));
}

#[test]
fn brownian_eigenfunction_is_sine() {
    let (header, rows) = csv(&run(&["eigfun", "stable:alpha=2", "--lambda", "1", "--x", "-10:10:401"]));
    assert_eq!(header, ["x", "F", "G", "sine_envelope"]);
    assert_eq!(rows.len(), 401);
    for r in &rows {
        assert!((r[1] - r[0].abs().sin()).abs() < 1e-8, "{r:?}");
    }
}

#[test]
fn eigenfunction_vanishes_at_origin_and_scales() {
    let (_, one) = csv(&run(&["eigfun", "stable:alpha=1.5", "--lambda", "1", "--x", "0:6:13"]));
    let (_, two) = csv(&run(&["eigfun", "stable:alpha=1.5", "--lambda", "2", "--x", "0:3:13"]));
    assert!(one[0][1].abs() < 1e-6);
    for (a, b) in one.iter().zip(&two) {
        assert!((a[1] - b[1]).abs() < 1e-6, "F_1({}) = {}, F_2({}) = {}", a[0], a[1], b[0], b[1]);
    }
}

#[test]
fn brownian_hitting_tail() {
    let (header, rows) = csv(&run(&["hitting", "stable:alpha=2", "--t", "1", "--x", "1"]));
    assert_eq!(header, ["t", "x", "tail"]);
    assert!((rows[0][2] - 0.520500).abs() < 1e-6);
}

#[test]
fn density_vanishes_at_origin() {
    let (header, rows) = csv(&run(&["density", "stable:alpha=1.5", "--t", "1", "--x", "0", "--y", "1"]));
    assert_eq!(header, ["t", "x", "y", "killed", "free"]);
    assert!(rows[0][3].abs() < 1e-8);
}

#[test]
fn density_grid_is_dominated() {
    let (_, rows) = csv(&run(&["density", "mix:alpha=1.5,beta=1", "--t", "0.5", "--x", "-2:2:5", "--y", "0.5:2:4"]));
    assert_eq!(rows.len(), 20);
    for r in &rows {
        assert!(r[3] >= -1e-8 && r[3] <= r[4] + 1e-8, "{r:?}");
    }
}

#[test]
fn transform_odd_column_is_closed_form() {
    let (header, rows) = csv(&run(&["transform", "stable:alpha=1.5", "--xi", "1", "--lambda", "0.5:2:4"]));
    assert_eq!(header, ["lambda", "even", "odd"]);
    for r in &rows {
        assert!((r[2] - r[0] / (r[0] * r[0] + 1.0)).abs() < 1e-12);
        assert!(r[1] > 0.0);
    }
}

#[test]
fn validate_stable_passes() {
    let out = run(&["validate", "stable:alpha=1.5"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["theta", "stable:alpha=3", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(run(&["theta", "stable:alpha=1.5", "--lambda", "oops"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["theta", "stable:alpha=1.5", "--lambda", "-1"]).status.code(), Some(1));
    assert_eq!(
        run(&["hitting", "bmpoisson:rate=9", "--t", "1", "--x", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["hitting", "stable:alpha=1.5", "--t", "1", "--x", "1", "--abs-tol", "1e-300", "--rel-tol", "1e-300"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn advisory_flag_downgrades_assumption() {
    let out = run(&["density", "bmpoisson:rate=9", "--advisory", "--t", "1", "--x", "1", "--y", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["eigfun", "rel:alpha=1.5,m=1", "--lambda", "1.3", "--x", "0:4:9"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let path = std::env::temp_dir().join(format!("levy-spectral-cli-{}.csv", std::process::id()));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let c = run(&with_out);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(path).ok();
}
