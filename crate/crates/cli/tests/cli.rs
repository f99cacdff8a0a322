use std::process::{Command, Output};

use wrightsol::table::{read_csv, read_csv_path, Cell};

fn wrightsol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wrightsol"))
        .args(args)
        .output()
        .expect("run binary")
}

const SOLVE: [&str; 13] = [
    "solve",
    "--alpha",
    "1.5",
    "--n",
    "2",
    "--phi",
    "gaussian:1,0,1",
    "--psi",
    "zero",
    "--f",
    "zero",
    "--xgrid",
    "-2:2:41",
];

fn solve_args() -> Vec<&'static str> {
    let mut a = SOLVE.to_vec();
    a.extend(["--ygrid", "0.25,0.5,1"]);
    a
}

#[test]
fn solve_writes_the_full_grid() {
    let out = wrightsol(&solve_args());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let t = read_csv(&mut text.as_bytes()).unwrap();
    assert_eq!(t.columns, ["x", "y", "u", "err_est", "flag"]);
    assert_eq!(t.rows.len(), 123);
    // y outer, x inner.
    assert_eq!(t.rows[0][0].as_f64(), Some(-2.0));
    assert_eq!(t.rows[41][1].as_f64(), Some(0.5));
    assert!(t.rows.iter().all(|r| r[4] == Cell::Text("ok".into())));
    // Symmetric data give a symmetric solution.
    let u = |i: usize| t.rows[i][2].as_f64().unwrap();
    for i in 0..41 {
        assert!((u(i) - u(40 - i)).abs() < 1e-9);
    }
}

#[test]
fn output_file_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    let mut args = solve_args();
    let p = path.to_str().unwrap();
    args.extend(["--output", p]);
    assert_eq!(wrightsol(&args).status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let table = read_csv_path(&path).unwrap();
    // Re-rendering what was read reproduces the file byte for byte.
    assert_eq!(table.to_string(wrightsol::Format::Csv).unwrap(), text);
}

#[test]
fn repeated_runs_are_identical() {
    let a = wrightsol(&[
        "wright", "--sigma", "0.3", "--beta", "0.7", "--z-re", "-8:8:17", "--z-im", "-2,0,2",
    ]);
    let b = wrightsol(&[
        "wright", "--sigma", "0.3", "--beta", "0.7", "--z-re", "-8:8:17", "--z-im", "-2,0,2",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 1 + 17 * 3);
}

#[test]
fn inadmissible_growth_is_a_usage_error() {
    let out = wrightsol(&[
        "solve",
        "--alpha",
        "1.5",
        "--n",
        "2",
        "--phi",
        "expgrow:0.2",
        "--xgrid",
        "0",
        "--ygrid",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("growth") && err.contains("2e-1"), "{err}");
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["solve", "--bogus"],
        vec!["validate", "nope"],
        vec!["solve", "--alpha", "2", "--n", "2", "--xgrid", "0", "--ygrid", "1"],
        vec!["solve", "--alpha", "1.5", "--n", "2", "--xgrid", "0:1", "--ygrid", "1"],
        vec![
            "fundsol", "--alpha", "1.5", "--n", "2", "--b", "0", "--dx", "0", "--dy", "0",
        ],
        vec!["wright", "--sigma", "1.5", "--beta", "1", "--z-re", "0"],
        vec![],
    ] {
        assert_eq!(wrightsol(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(wrightsol(&["--help"]).status.code(), Some(0));
    assert_eq!(wrightsol(&["--version"]).status.code(), Some(0));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"command": "fundsol", "parameters": {"alpha": 2, "n": 2, "b": 0.5, "dx": "0,1", "dy": 1, "validation": true}, "format": "json-lines"}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let base = wrightsol(&["--config", c]);
    assert_eq!(base.status.code(), Some(0), "{}", String::from_utf8_lossy(&base.stderr));
    let text = String::from_utf8(base.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("{\"dx\":0.0,\"dy\":1.0,"));
    let over = wrightsol(&["--config", c, "fundsol", "--dx", "0.25", "--format", "csv"]);
    let t = read_csv(&mut over.stdout.as_slice()).unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.rows[0][0].as_f64(), Some(0.25));
    assert_eq!(wrightsol(&["--config", c, "selfsim"]).status.code(), Some(1));
}

#[test]
fn validation_reports_and_exit_status() {
    let out = wrightsol(&["validate", "fresnel"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("fresnel: PASS") && text.contains("overall: PASS"),
        "{text}"
    );
}

#[test]
fn selfsim_and_genwright_tables() {
    let out = wrightsol(&[
        "selfsim", "--alpha", "1.5", "--beta", "4", "--d", "-1", "--b", "0.2", "--j", "3", "--x", "0.5,1", "--y", "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let t = read_csv(&mut out.stdout.as_slice()).unwrap();
    assert_eq!(t.columns, ["x", "y", "t", "u", "flag"]);
    assert_eq!(t.rows.len(), 2);
    let out = wrightsol(&[
        "genwright",
        "--mu",
        "1",
        "--a",
        "1",
        "--nu",
        "1",
        "--b",
        "1",
        "--z-re",
        "1",
    ]);
    let t = read_csv(&mut out.stdout.as_slice()).unwrap();
    // Σ 1/(k!)² = I₀(2).
    assert!((t.rows[0][2].as_f64().unwrap() - 2.279_585_302_336_067).abs() < 1e-14);
}
