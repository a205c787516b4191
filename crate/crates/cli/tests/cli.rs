use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn config(name: &str) -> String {
    configs().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn count_prints_and_appends_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("counts.csv");
    let csv_arg = csv.display().to_string();
    let f = config("one_plus_2pow.json");
    for r in ["10", "20"] {
        let o = run(&["count", "--fn", &f, "--r", r, "--a", "0", "--out", &csv_arg]);
        assert_eq!(o.status.code(), Some(0));
        let expect = if r == "10" { "2\n" } else { "4\n" };
        assert_eq!(String::from_utf8_lossy(&o.stdout), expect);
    }
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,n_zero,n_pole,N_zero,N_pole,ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("10.00000000,2,0,"));
    assert!(lines[2].starts_with("20.00000000,4,0,"));
    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("counts.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "count");
    assert_eq!(manifest["seed"], 0);
    assert_eq!(manifest["tolerances"]["winding_tol"], 1e-6);
    assert_eq!(manifest["config"]["fn"]["type"], "exp_sum");
}

#[test]
fn poles_with_inf_target() {
    let o = run(&["count", "--fn", &config("geometric.json"), "--r", "20", "--a", "inf"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "7\n");
}

#[test]
fn symdiff_of_the_pair() {
    let o = run(&["symdiff", "--F", &config("F45.json"), "--G", &config("G9.json"), "--T", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["D"], serde_json::json!([22]));
    assert_eq!(v["verdict"], "distinct");
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope - 1.1403).abs() < 0.12, "{slope}");
}

#[test]
fn config_errors_exit_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"type":"exp_sum","terms":[{"lambda":0,"a":[1,0]},{"lambda":"ln2","a":[1,0]}]}"#).unwrap();
    let o = run(&["count", "--fn", &bad.display().to_string(), "--r", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.terms[1].lambda"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--fn", &config("zeta.json"), "--grid", "5:50"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("points.json");
    let list: Vec<[f64; 2]> = (0..12).map(|k| [(k as f64 * 0.37).sin(), (k as f64 * 0.91).cos()]).collect();
    fs::write(&pts, serde_json::to_string(&list).unwrap()).unwrap();
    let pts = pts.display().to_string();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "2"].iter().enumerate() {
        let out = dir.path().join(format!("cartan{i}.json"));
        let o = run(&[
            "cartan", "--points", &pts, "--h", "0.5", "--samples", "2000", "--seed", "11", "--threads", threads, "--out",
            &out.display().to_string(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let v: Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert!((v["total_radius"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["violations"], 0);
    let disk = &v["disks"][0];
    assert!(disk[0].as_array().unwrap().len() == 2 && disk[1].is_number());

    let a = run(&["table", "--fn", &config("one_plus_2pow.json"), "--grid", "5:50:8log"]);
    let b = run(&["table", "--fn", &config("one_plus_2pow.json"), "--grid", "5:50:8log"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 9);
}

#[test]
fn identities_and_operators() {
    let f = config("one_plus_2pow.json");
    let j = run(&["jensen", "--fn", &config("F45.json"), "--r", "3"]);
    assert_eq!(j.status.code(), Some(0));
    assert!(stdout_json(&j)["residual"].as_f64().unwrap() < 1e-7);
    let p = run(&["poisson", "--fn", &f, "--r", "5", "--s", "1+2i"]);
    assert_eq!(p.status.code(), Some(0));
    let l = run(&["lambda", "--fn", &f, "--tau", "0.1", "--s", "40,0"]);
    let v = stdout_json(&l)["value"].clone();
    assert!((v[0].as_f64().unwrap() - 1.0).abs() < 1e-10 && v[1].as_f64().unwrap().abs() < 1e-10);
    let e = run(&["eval", "--fn", &f, "--s", "0"]);
    assert_eq!(stdout_json(&e)["value"], serde_json::json!([2.0, 0.0]));
    let z = run(&["zeros", "--fn", &f, "--r", "10"]);
    let recs = stdout_json(&z)["records"].as_array().unwrap().len();
    assert_eq!(recs, 2);
}

#[test]
fn product_and_translation() {
    let dir = tempfile::tempdir().unwrap();
    let zeros = dir.path().join("zeros.json");
    fs::write(&zeros, "[[1,1],[-2,0.5],[0,-3]]").unwrap();
    let o = run(&["product", "--zeros", &zeros.display().to_string(), "--s", "2,2", "--samples", "500", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!((v["holds"].as_bool(), v["violations"].as_u64()), (Some(true), Some(0)));

    let o = run(&[
        "translation", "--fn", &config("one_plus_2pow_3pow.json"), "--eps", "0.1", "--end", "1000", "--window", "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let omegas: Vec<f64> = v["omegas"].as_array().unwrap().iter().map(|w| w.as_f64().unwrap()).collect();
    assert!(!omegas.is_empty() && omegas.windows(2).all(|w| w[0] < w[1]));
    assert!(v["max_gap"].as_f64().unwrap() <= 200.0);
}

#[test]
fn catalog_lists_every_entry() {
    let v = stdout_json(&run(&["catalog"]));
    let keys: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap()).collect();
    assert!(keys.contains(&"zeta") && keys.contains(&"exp_exp_neg"));
    let meta = v.as_array().unwrap().iter().find(|e| e["key"] == "exp_exp_neg").unwrap();
    assert_eq!((meta["evaluable"].as_bool(), meta["declared_order"].as_str()), (Some(false), Some("infinite")));
}

#[test]
fn verify_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("suite");
    let o = run(&["verify", "--grid", "5:50:8log", "--out", &out.display().to_string()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let summary: Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    let csv = fs::read_to_string(out.join("one_plus_2pow.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("r,n_zero,n_pole,N_zero,N_pole,ratio"));
    assert!(out.join("manifest.json").exists());
}
