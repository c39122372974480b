use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, Output};

use qss_core::closed_form::{e1_flip, e1_flip_nparty};
use tempfile::TempDir;

fn qss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_config(dir: &TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn damping_config(dir: &TempDir, gamma: f64, scheme: &str) -> String {
    write_config(
        dir,
        &format!("damping_{gamma}_{scheme}.json"),
        &format!(
            r#"{{"parties": 3, "noise": {{"kind": "damping", "uniform": {{"gamma": {gamma}}}}},
                "qec": {{"scheme": "{scheme}"}}, "evaluation": {{"mode": "exact"}}}}"#
        ),
    )
}

fn read_csv(path: &Path) -> Vec<HashMap<String, String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| {
            header
                .iter()
                .cloned()
                .zip(rec.unwrap().iter().map(String::from))
                .collect()
        })
        .collect()
}

fn num(row: &HashMap<String, String>, col: &str) -> f64 {
    row[col].parse().unwrap_or_else(|_| panic!("{col} = {:?}", row[col]))
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn run_reports_exact_errors() {
    let dir = TempDir::new().unwrap();
    let out = qss(&["run", "--config", &damping_config(&dir, 0.0, "none")]);
    assert!(out.status.success());
    assert_eq!(json(&out)["error_exact"].as_f64().unwrap(), 0.0);

    let out = qss(&["run", "--config", &damping_config(&dir, 0.1, "none")]);
    let e = json(&out)["error_exact"].as_f64().unwrap();
    assert!((e - 0.104_661_382_674_013).abs() < 1e-9);
}

#[test]
fn monte_carlo_run_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "mc.json",
        r#"{"parties": 4, "noise": {"kind": "pauli", "uniform": {"p": 0.1}},
            "evaluation": {"mode": "monte_carlo", "trials": 5000, "seed": 11}}"#,
    );
    let a = qss(&["run", "--config", &cfg]);
    let b = qss(&["run", "--config", &cfg]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["trials"].as_u64(), Some(5000));
}

#[test]
fn malformed_configs_exit_2_with_a_location() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "bad.json",
        "{\n  \"parties\": 3,\n  \"noise\": {\"kind\": \"damping\", \"uniform\": {\"gamma\": 0.1}},\n  \"colour\": 1\n}",
    );
    let out = qss(&["run", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let cfg = write_config(
        &dir,
        "range.json",
        r#"{"parties": 3, "noise": {"kind": "damping", "per_hop": [{"gamma": 0.1}, {"gamma": 1.5}, {"gamma": 0.1}]}}"#,
    );
    let out = qss(&["run", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("per_hop[1]"));

    let out = qss(&["run", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flip_sweep_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "flip.json",
        r#"{"parties": 3, "noise": {"kind": "pauli", "uniform": {"p": 0.0}}}"#,
    );
    let csv_path = dir.path().join("sweep.csv");
    let out = qss(&[
        "sweep", "--config", &cfg, "--vary", "p", "--from", "0", "--to", "1", "--steps", "11", "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_csv(&csv_path);
    assert_eq!(rows.len(), 11);
    assert_eq!(num(&rows[0], "error_exact"), 0.0);
    assert_eq!(num(&rows[0], "error_analytic"), 0.0);
    assert_eq!(rows[0]["error_mc"], "");
    for row in &rows {
        let p = num(row, "value");
        assert!((num(row, "error_exact") - e1_flip(p).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn repetition_beats_no_encoding_along_a_damping_sweep() {
    let dir = TempDir::new().unwrap();
    let mut curves = Vec::new();
    for scheme in ["none", "repetition"] {
        let out = qss(&[
            "sweep", "--config", &damping_config(&dir, 0.0, scheme), "--vary", "gamma", "--from", "0", "--to", "1",
            "--steps", "21",
        ]);
        assert!(out.status.success());
        let mut r = csv::Reader::from_reader(out.stdout.as_slice());
        let errs: Vec<f64> = r.records().map(|rec| rec.unwrap()[7].parse().unwrap()).collect();
        curves.push(errs);
    }
    for (i, (rep, none)) in curves[1].iter().zip(&curves[0]).enumerate().take(20).skip(1) {
        assert!(rep < none, "point {i}");
    }
}

#[test]
fn sweep_spec_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let cfg = damping_config(&dir, 0.1, "none");
    for args in [
        vec!["--vary", "p", "--from", "0", "--to", "1"],
        vec!["--vary", "gamma", "--from", "1", "--to", "0"],
        vec!["--vary", "gamma", "--from", "0", "--to", "1", "--steps", "1"],
        vec!["--vary", "delta", "--from", "0", "--to", "1"],
    ] {
        let mut full = vec!["sweep", "--config", cfg.as_str()];
        full.extend(args.iter().copied());
        assert_eq!(qss(&full).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn party_sweep_with_monte_carlo() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "flip.json",
        r#"{"parties": 3, "noise": {"kind": "pauli", "uniform": {"p": 0.2}}}"#,
    );
    let out = qss(&[
        "sweep", "--config", &cfg, "--vary", "n", "--from", "3", "--to", "5", "--mc", "--trials", "4000", "--seed", "3",
    ]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    for (row, n) in rows.iter().zip(3..) {
        let exact: f64 = row[7].parse().unwrap();
        let mc: f64 = row[8].parse().unwrap();
        let se: f64 = row[9].parse().unwrap();
        assert!((exact - e1_flip_nparty(0.2, n).unwrap()).abs() < 1e-9);
        assert!((mc - exact).abs() <= 5.0 * se);
        assert_eq!(&row[10], "4000");
    }
}

fn figure_dir(id: &str) -> TempDir {
    let dir = TempDir::new().unwrap();
    let out = qss(&["figure", id, "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

#[test]
fn fig2_curves_follow_the_flip_law() {
    let dir = figure_dir("fig2");
    let manifest = read_csv(&dir.path().join("fig2_manifest.csv"));
    let exact: Vec<_> = manifest.iter().filter(|m| m["evaluation"] == "exact").collect();
    assert_eq!(exact.len(), 4);
    for m in exact {
        let n: usize = m["n_parties"].parse().unwrap();
        let rows = read_csv(&dir.path().join(&m["file"]));
        assert_eq!(rows.len(), 101);
        for row in &rows {
            let p = num(row, "value");
            assert!((num(row, "error_exact") - e1_flip_nparty(p, n).unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn fig3_repetition_improves_below_one_half() {
    let dir = figure_dir("fig3");
    let none = read_csv(&dir.path().join("fig3_n3_none_exact.csv"));
    let rep = read_csv(&dir.path().join("fig3_n3_repetition_exact.csv"));
    for (a, b) in none.iter().zip(&rep) {
        let p = num(a, "value");
        let (e0, e1) = (num(a, "error_exact"), num(b, "error_exact"));
        if p > 0.0 && p < 0.5 {
            assert!(e1 < e0, "p = {p}");
        }
    }
}

#[test]
fn fig5_ordering_at_p_one_tenth() {
    let dir = figure_dir("fig5");
    let at = |file: &str| num(&read_csv(&dir.path().join(file))[10], "error_exact");
    let none = at("fig5_n3_none_exact.csv");
    let rep = at("fig5_n3_repetition_exact.csv");
    let five = at("fig5_n3_five_qubit_per_hop_exact.csv");
    assert!(five > none && none > rep, "{five} {none} {rep}");
}

#[test]
fn fig1_and_fig6_manifests_list_every_file() {
    for (id, families) in [("fig1", 6), ("fig6", 4)] {
        let dir = figure_dir(id);
        let manifest = read_csv(&dir.path().join(format!("{id}_manifest.csv")));
        assert_eq!(manifest.iter().filter(|m| m["evaluation"] == "exact").count(), families);
        for m in &manifest {
            assert!(dir.path().join(&m["file"]).exists());
        }
    }
}

#[test]
fn unknown_figure_exits_2() {
    assert_eq!(qss(&["figure", "fig7"]).status.code(), Some(2));
}

#[test]
fn tables() {
    let out = qss(&["tables", "--gamma", "0.3"]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 24);
    assert_eq!((&rows[1][0], &rows[1][1], &rows[1][2]), ("0", "I", "1"));
    assert!((rows[1][3].parse::<f64>().unwrap() - 0.3).abs() < 1e-12);

    let out = qss(&["tables", "--gamma", "0"]);
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert!(r.records().all(|rec| rec.unwrap()[3].parse::<f64>().unwrap() == 0.0));

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t2.csv");
    let out = qss(&["tables", "--gammas", "0.1,0.2,0.3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let rows = read_csv(&path);
    assert_eq!((rows[2]["prep"].as_str(), rows[2]["op"].as_str(), rows[2]["secret"].as_str()), ("0", "sigma_y", "0"));
    assert!((num(&rows[2], "closed_form") - 0.37).abs() < 1e-12);

    assert_eq!(qss(&["tables", "--gammas", "0.1,0.2"]).status.code(), Some(2));
    assert_eq!(qss(&["tables", "--gamma", "1.5"]).status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    let out = qss(&["validate"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 7);

    let out = qss(&["validate", "--tolerance", "1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed checks"));

    let out = qss(&["validate", "--only", "tables", "--gamma", "0.7"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);

    assert_eq!(qss(&["validate", "--only", "everything"]).status.code(), Some(2));
}

#[test]
fn ssqi_reports() {
    let dir = TempDir::new().unwrap();
    let out = qss(&["ssqi", "--config", &damping_config(&dir, 0.0, "none"), "--theta", "1.2", "--phi", "0.4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["fidelity_without_qec"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["fidelity_with_qec"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let out = qss(&["ssqi", "--config", &damping_config(&dir, 0.2, "repetition"), "--theta", "2.0", "--phi", "1.0"]);
    let v = json(&out);
    assert!(v["fidelity_with_qec"].as_f64() > v["fidelity_without_qec"].as_f64());
    assert_eq!(v["qec_effective"], v["fidelity_improves"]);

    let cfg = damping_config(&dir, 0.1, "none");
    assert_eq!(qss(&["ssqi", "--config", &cfg, "--theta", "3.5", "--phi", "0"]).status.code(), Some(2));
    assert_eq!(qss(&["ssqi", "--config", &cfg, "--theta", "1", "--phi", "6.3"]).status.code(), Some(2));
}
