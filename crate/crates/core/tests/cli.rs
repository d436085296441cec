use std::path::Path;
use std::process::{Command, Output};

use swipt_mpe::analytic::QuadratureOptions;
use swipt_mpe::cli::{load_config, read_csv, Metric, SweepVariable};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swipt-mpe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SWEEP: &str = "\
[scenario]
preset = mmwave
[sweep]
variable = p_t
start = 0.1
stop = 20
steps = 6
metrics = p_s, p_o, p_e, p_J, joint_mpe
";

#[test]
fn preset_list() {
    let out = run(&["preset", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mmwave") && text.contains("uhf"));

    let out = run(&["preset", "uhf"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("preset = uhf"));
}

#[test]
fn sweep_csv_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "fig6.cfg", SWEEP);
    let csv = dir.path().join("out.csv");
    let out = run(&["sweep", "--config", &cfg, "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&csv).unwrap();
    let table = read_csv(&text).unwrap();
    assert_eq!(table.columns, ["p_t", "p_s", "p_o", "p_e", "p_J", "joint_mpe"]);
    assert_eq!(table.rows.len(), 6);
    assert!(table.comments[0].starts_with("swipt-mpe "));
    assert!(table.comments.iter().any(|c| c == "seed: none"));

    // re-evaluate at the stored grid points and compare the formatted cells
    let config = load_config(Path::new(&cfg)).unwrap();
    let opts = QuadratureOptions::default();
    let data_lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    for (row, line) in table.rows.iter().zip(data_lines) {
        let x = row[0].unwrap();
        let (p, th) = SweepVariable::PT.apply(x, &config.scenario.params, &config.sweep.thresholds);
        let cells: Vec<String> = std::iter::once(format!("{x:.11e}"))
            .chain(
                Metric::ALL
                    .iter()
                    .map(|m| format!("{:.11e}", m.analytic(&p, &th, &opts).unwrap())),
            )
            .collect();
        assert_eq!(cells.join(","), line);
    }
}

#[test]
fn sweep_with_monte_carlo_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "mc.cfg",
        "[scenario]\npreset = uhf\n[sweep]\nvariable = tau\nstart = 0.1\nstop = 1\nsteps = 2\nmetrics = p_s\n",
    );
    let csv = dir.path().join("mc.csv");
    let out = run(&[
        "sweep", "--config", &cfg, "--out", csv.to_str().unwrap(), "--trials", "2000", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = read_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(table.columns, ["tau", "p_s", "p_s_mc", "p_s_ci"]);
    assert_eq!(table.rows.len(), 2);
    assert!(table.comments.iter().any(|c| c == "seed: 9"));
    for row in &table.rows {
        let (a, mc, ci) = (row[1].unwrap(), row[2].unwrap(), row[3].unwrap());
        assert!((a - mc).abs() <= 3.0 * ci, "{a} {mc} {ci}");
    }
}

#[test]
fn config_errors_exit_two_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("[scenario]\nalpha = 1.9\n", "alpha must exceed 2"),
        ("[scenario]\npreset = mmwave\nd0 = five\n", "line 3: d0"),
        ("[sweep]\neps = -2 dBW\n", "eps"),
        ("[mc]\nwarp = 9\n", "line 2: warp"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let cfg = write(dir.path(), &format!("bad{i}.cfg"), text);
        let out = run(&["sweep", "--config", &cfg, "--out", dir.path().join("x.csv").to_str().unwrap()]);
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(out.status.code(), Some(2), "{text}: {err}");
        assert!(err.contains(needle), "{text}: {err}");
    }
    let out = run(&["sweep", "--config", "/nonexistent/x.cfg", "--out", "x.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "ok.cfg", "[sweep]\nsteps = 2\nmetrics = p_s\n");
    let out = run(&["sweep", "--config", &cfg, "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["sweep"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--scenario", "lte", "--out", "x"]).status.code(), Some(2));
    assert_eq!(run(&["preset"]).status.code(), Some(2));
}

#[test]
fn validate_small_run_passes_and_tamper_fails() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let args = |extra: &[&'static str]| {
        let mut a = vec!["validate", "--scenario", "mmwave", "--trials", "100", "--seed", "3"];
        a.extend_from_slice(extra);
        a
    };
    let mut ok = args(&["--out"]);
    let path = json.to_str().unwrap().to_string();
    ok.push(&path);
    let out = run(&ok);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    for m in ["p_s", "p_o", "p_e", "p_J"] {
        let points = report["metrics"][m].as_array().unwrap();
        assert_eq!(points.len(), 10);
        for key in ["x", "analytic", "mc", "ci", "pass"] {
            assert!(points[0].get(key).is_some(), "{m} lacks {key}");
        }
    }

    let mut bad = args(&["--tamper", "0.5", "--out"]);
    bad.push(&path);
    assert_eq!(run(&bad).status.code(), Some(1));
}
