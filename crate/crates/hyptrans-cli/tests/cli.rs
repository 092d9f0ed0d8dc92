use std::process::{Command, Output};

fn hyptrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyptrans"))
        .args(args)
        .env_remove("HYPTRANS_QUAD_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--format", "json", "verify", "F-I-CP", "--points", "3", "--seed", "9"];
    let (first, second) = (hyptrans(&args), hyptrans(&args));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["seed"], 9);
    assert_eq!(doc["tolerances"]["rel_tol"], 1e-6);
    let report = &doc["reports"][0];
    assert_eq!(report["identity_id"], "F-I-CP");
    assert_eq!(report["pass_count"], 3);
    assert_eq!(report["points"].as_array().unwrap().len(), 3);
    assert!(report.get("elapsed").is_none());
}

#[test]
fn other_seed_other_points() {
    let a = hyptrans(&["--format", "json", "verify", "F-I-CP", "--points", "2", "--seed", "1"]);
    let b = hyptrans(&["--format", "json", "verify", "F-I-CP", "--points", "2", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn failing_verification_exits_one() {
    let o = hyptrans(&["--format", "json", "verify", "F-I-CP", "--points", "2", "--rtol", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let points = doc["reports"][0]["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert!(points.iter().all(|p| p["pass"] == false));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hyptrans(&["verify", "NOPE"]).status.code(), Some(2));
    assert_eq!(hyptrans(&["list", "--family", "gauss"]).status.code(), Some(2));
    assert_eq!(hyptrans(&["verify-all", "--family", "gauss"]).status.code(), Some(2));
    assert_eq!(hyptrans(&["transmute", "d+"]).status.code(), Some(2));
    assert_eq!(hyptrans(&["verify", "F-I-CP", "--points", "0"]).status.code(), Some(2));
    assert_eq!(hyptrans(&["verify", "F-I-CP", "--fix", "q=1"]).status.code(), Some(2));
    assert_eq!(hyptrans(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quad_tol_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_hyptrans"))
        .args(["verify", "F-I-CP", "--points", "1"])
        .env("HYPTRANS_QUAD_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let good = Command::new(env!("CARGO_BIN_EXE_hyptrans"))
        .args(["--format", "json", "verify", "F-I-CP", "--points", "1"])
        .env("HYPTRANS_QUAD_TOL", "1e-9")
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&good.stdout).unwrap();
    assert_eq!(doc["tolerances"]["quad_tol"], 1e-9);
}

#[test]
fn csv_has_one_row_per_point() {
    let o = hyptrans(&["--format", "csv", "verify", "F-II-AP", "--points", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "identity_id,family,point,a,b,c,mu,nu,d,e,x,lhs,rhs,rel_err,err_est,mode,pass,error"
    );
    assert_eq!(lines.filter(|l| l.starts_with("F-II-AP,frac-ii,")).count(), 4);
}

#[test]
fn list_filters_by_family() {
    let o = hyptrans(&["--format", "csv", "list", "--family", "stieltjes"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 25);
    let all = hyptrans(&["--format", "csv", "list"]);
    assert_eq!(stdout(&all).lines().count(), 60);
    let frac = hyptrans(&["--format", "csv", "list", "--family", "fractional"]);
    assert_eq!(stdout(&frac).lines().count(), 9);
}

#[test]
fn stieltjes_at_integer_mu_passes_absolutely() {
    let o = hyptrans(&["--format", "json", "verify", "S-CP-W1toW5", "--points", "3", "--fix", "mu=1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for p in doc["reports"][0]["points"].as_array().unwrap() {
        assert_eq!(p["mode"], "absolute");
        assert_eq!(p["rhs"], 0.0);
        assert!(p["lhs"].as_f64().unwrap().abs() <= 1e-8);
    }
}

#[test]
fn transmute_report() {
    let o = hyptrans(&["--format", "json", "transmute", "a-,b-,c-", "--points", "4", "--mu", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &doc["report"];
    assert_eq!(r["pass"], true);
    assert_eq!(r["kernel"].as_array().unwrap().len(), 4);
    assert!(r["kernel"].as_array().unwrap().iter().all(|k| k["mu"] == 1.5));
}

#[test]
fn export_catalog_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let o = hyptrans(&["export-catalog", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["count"], 59);
    assert_eq!(doc["identities"].as_array().unwrap().len(), 59);
    let missing = hyptrans(&["export-catalog", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn table_summary_line() {
    let o = hyptrans(&["verify-all", "--family", "karp-sitnik", "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2/2 identities pass (4/4 points)"), "{}", stdout(&o));
}
