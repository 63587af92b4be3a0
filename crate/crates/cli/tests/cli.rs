use std::path::Path;
use std::process::{Command, Output};

fn hardylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardylab"))
        .args(args)
        .env_remove("HARDYLAB_JOBS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

// second line, column `col` of a one-row CSV
fn field(csv: &str, col: &str) -> String {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let idx = r.headers().unwrap().iter().position(|h| h == col).unwrap();
    r.records().next().unwrap().unwrap()[idx].to_string()
}

#[test]
fn constants_examples() {
    let o = hardylab(&["constants", "--case", "hardy", "--n", "4", "--p", "2", "--beta", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "constant"), "1");
    assert_eq!(field(&stdout(&o), "beta_range"), "(-inf, 2)");

    let o = hardylab(&["constants", "--case", "c_even", "--n", "9", "--l", "2", "--beta", "0", "--p", "2"]);
    let c: f64 = field(&stdout(&o), "constant").parse().unwrap();
    // (p^2 / (5 * 9) * p^2 / (1 * 13))^p
    assert!((c - (16.0f64 / 585.0).powi(2)).abs() < 1e-18);
    assert!((c - 7.4805e-4).abs() < 1e-8);

    let o = hardylab(&["constants", "--case", "critical_odd", "--n", "6", "--l", "1", "--p", "2"]);
    assert_eq!(field(&stdout(&o), "constant"), "0.0625");
    assert_eq!(field(&stdout(&o), "source"), "critical higher-order Rellich inequality, odd order");

    let o = hardylab(&["constants", "--case", "c_odd", "--n", "9", "--l", "1", "--beta", "-1", "--p", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["beta_range"], "(-11, 3)");
}

#[test]
fn constants_reject_invalid_parameters() {
    let o = hardylab(&["constants", "--case", "hardy", "--n", "4", "--p", "2", "--beta", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hardy"));
    assert_eq!(code(&hardylab(&["constants", "--case", "nonsense", "--n", "4", "--p", "2"])), 2);
}

#[test]
fn verify_passes_and_skips_invalid_cells() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"schema": "1", "cases": ["HARDY_SUB", "ONETWO"], "grid": {"n": [4], "p": [2], "beta": [0, 2], "b": [0, 1]},
            "corpus": ["bump:R=1,m=4"]}"#,
    );
    let out = dir.path().join("report.csv");
    let o = hardylab(&["verify", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["case", "n", "p", "beta", "b", "l", "corpus_id", "lhs", "rhs", "constant", "slack", "residual", "quad_error", "status"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    // beta = n - p is outside the Hardy range: recorded, not dropped
    let skipped: Vec<_> = rows.iter().filter(|r| r[13].starts_with("skipped: ")).collect();
    assert_eq!(skipped.len(), 4);
    assert!(skipped.iter().all(|r| &r[3] == "2" && r[7].is_empty()));
    for r in rows.iter().filter(|r| &r[13] == "pass") {
        let (lhs, c, rhs, slack): (f64, f64, f64, f64) = (r[7].parse().unwrap(), r[9].parse().unwrap(), r[8].parse().unwrap(), r[10].parse().unwrap());
        assert!((c * rhs - lhs - slack).abs() <= 1e-12 * lhs.max(c * rhs));
        assert!(!r[11].is_empty());
    }
}

#[test]
fn perturbed_constant_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "f.json",
        r#"{"schema": "1", "cases": "identity", "grid": {"n": [4], "p": [2], "beta": [0], "b": [0]},
            "corpus": ["bump:R=1,m=4"], "perturb_constant": 1e-3}"#,
    );
    let o = hardylab(&["verify", "--config", &cfg]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().skip(1).any(|l| l.ends_with(",fail")));
}

#[test]
fn bad_configs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_config(dir.path(), "u.json", r#"{"schema": "1", "cases": "all", "colour": "red"}"#);
    let schema = write_config(dir.path(), "s.json", r#"{"schema": "2"}"#);
    let garbage = write_config(dir.path(), "g.json", "not json");
    let beta = write_config(dir.path(), "b.json", r#"{"schema": "1", "grid": {"beta": ["n/2"]}}"#);
    for cfg in [unknown, schema, garbage, beta] {
        let o = hardylab(&["verify", "--config", &cfg]);
        assert_eq!(code(&o), 2, "{cfg}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(code(&hardylab(&["verify", "--config", "/nonexistent/config.json"])), 2);
    assert_eq!(code(&hardylab(&["identity", "--case", "AQ"])), 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "d.json",
        r#"{"schema": "1", "cases": ["HARDY_SUB", "CRIT_HARDY", "RELLICH_EVEN"], "grid": {"n": [5, 8], "p": [1.5, 2], "beta": [0, "(n-p)/2"], "b": [0, 1], "l": [1, 2]}}"#,
    );
    let run = |jobs: &str, format: &str| {
        let o = hardylab(&["verify", "--config", &cfg, "--jobs", jobs, "--format", format]);
        assert!(code(&o) <= 1);
        o.stdout
    };
    let a = run("1", "csv");
    assert!(a.len() > 1000);
    assert_eq!(a, run("1", "csv"));
    assert_eq!(a, run("3", "csv"));
    assert_eq!(run("2", "json"), run("2", "json"));
}

#[test]
fn identity_alias_matches_verify() {
    let args = ["--n", "3", "--p", "2", "--beta", "0", "--b", "0,1", "--corpus", "bump:R=1,m=4;composite:a=0.25,b=1,m=2"];
    let id = hardylab(&[&["identity"][..], &args].concat());
    let ver = hardylab(&[&["verify", "--case", "identity"][..], &args].concat());
    assert_eq!(code(&id), 0);
    assert_eq!(id.stdout, ver.stdout);
    assert_eq!(stdout(&id).lines().count(), 1 + 3 * 2 * 2);
}

#[test]
fn sharpness_sweeps() {
    let o = hardylab(&["sharpness", "--family", "hardy", "--n", "4", "--p", "2", "--b", "1"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let gaps: Vec<f64> = r.records().map(|r| r.unwrap()[5].parse().unwrap()).collect();
    assert_eq!(gaps.len(), 3);
    assert!(gaps.windows(2).all(|w| w[1] < w[0]) && gaps[2] > 0.0);

    let o = hardylab(&["sharpness", "--family", "critical", "--n", "3", "--p", "2", "--scales", "0.2,0.02"]);
    assert_eq!(code(&o), 0);
    let q: f64 = stdout(&o).lines().nth(2).unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert!((q - 0.25).abs() < 0.05);

    // increasing scales break the sweep contract
    assert_eq!(code(&hardylab(&["sharpness", "--family", "hardy", "--n", "4", "--p", "2", "--scales", "1e-3,1e-1"])), 2);
}

#[test]
fn mow_checks() {
    let o = hardylab(&["mow", "--n", "5", "--beta", "0,-1,3", "--k-max", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    // per beta: 2 profiles and a coefficient row per k, then radial and pointwise rows
    assert_eq!(text.lines().filter(|l| l.contains(",pass")).count(), 2 * (3 * 3 + 2));
    assert!(text.lines().any(|l| l.starts_with("all,5,3,") && l.contains("skipped")));
}
