use std::fs;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env_remove("HECKE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn show_classes_matches_diagrams() {
    let o = hecke(&["show", "classes", "C~2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{q0,q2},{q1}"), "{}", stdout(&o));
    let o = hecke(&["show", "classes", "BC~2"]);
    assert!(stdout(&o).contains("{q0},{q1},{q2}"));
    let o = hecke(&["show", "classes", "--system", "A2", "--format", "json"]);
    assert_eq!(json(&o)["classes"], serde_json::json!([[0, 1, 2]]));
}

#[test]
fn show_rootdata_lists_positive_roots() {
    let o = hecke(&["show", "rootdata", "BC2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["weyl_order"], 8);
}

#[test]
fn show_spherical_expansions() {
    let o = hecke(&["show", "spherical", "A1", "--grid", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["functions"].as_array().unwrap().len(), 2);
}

#[test]
fn numeric_table_for_the_tree() {
    let o = hecke(&["table", "BC1", "--grid", "2", "--eval", "q0=2,q1=2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["routes_agree"], true);
    let entry = |l: i32, m: i32, n: i32| {
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["lambda"] == serde_json::json!([l]) && e["mu"] == serde_json::json!([m]) && e["nu"] == serde_json::json!([n]))
            .cloned()
            .unwrap()
    };
    // λ₁ is a distance-two step in the (3,3)-regular tree: 1/(q(q+1)).
    assert_eq!(entry(1, 1, 0)["value"], "1/6");
    assert_eq!(entry(1, 1, 1)["value"], "1/6");
    assert_eq!(entry(1, 1, 2)["value"], "2/3");
}

#[test]
fn symbolic_table_formats() {
    let o = hecke(&["table", "A2", "--grid", "1"]);
    let v = json(&o);
    assert_eq!(v["schema"], "hecke-table/1");
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["routes_agree"] == true));
    assert!(v["entries"][0].get("value").is_none());

    let o = hecke(&["table", "A2", "--grid", "1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("lambda,mu,nu,c_symmetric"));
    assert_eq!(text.lines().count(), v["entries"].as_array().unwrap().len() + 1);

    let o = hecke(&["table", "A2", "--grid", "1", "--format", "pretty"]);
    assert!(stdout(&o).contains("routes agree: true"));
}

#[test]
fn table_cache_is_reused_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = hecke(&["table", "C2", "--grid", "1", "--cache-dir", d]);
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let stamp = fs::metadata(&files[0]).unwrap().modified().unwrap();
    let b = hecke(&["table", "C2", "--grid", "1", "--cache-dir", d]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::metadata(&files[0]).unwrap().modified().unwrap(), stamp);

    // Output options are not part of the key.
    let _ = hecke(&["table", "C2", "--grid", "1", "--cache-dir", d, "--format", "csv"]);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);

    fs::write(&files[0], "{ not json").unwrap();
    let c = hecke(&["table", "C2", "--grid", "1", "--cache-dir", d]);
    assert_eq!(c.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&c.stderr).contains("warning"));
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn table_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = hecke(&["table", "BC1", "--grid", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["system"], "BC1");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "positivity", "C2", "--grid", "2"][..],
        &["verify", "building", "tree:q0=2,q1=3,r=6", "--against", "BC1"],
        &["verify", "satake", "G2", "--grid", "1"],
        &["verify", "routes", "BC2", "--grid", "1"],
        &["verify", "bernstein", "C2", "--grid", "1"],
        &["verify", "generation", "A2", "--grid", "2"],
        &["verify", "hecke", "BC1", "--length", "4"],
        &["verify", "building", "thin:A2,r=8", "--grid", "1"],
    ] {
        let o = hecke(args);
        assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, stdout(&o));
        assert!(stdout(&o).contains("all checks passed"));
    }
}

#[test]
fn verify_json_report() {
    let o = hecke(&["verify", "all", "A2", "--grid", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "hecke-verify/1");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0 && c["count"].as_u64().unwrap() > 0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["table", "X9"][..],
        &["table", "C2", "--eval", "q0=2,q2=3,q1=2"],
        &["table", "C2", "--eval", "q0=2"],
        &["table", "C2", "--eval", "q0=-1,q1=2"],
        &["verify", "building", "tree:q0=2"],
        &["verify", "building", "tree:q0=2,q1=3,r=6", "--against", "C2"],
        &["verify", "positivity", "C2", "--against", "C2"],
        &["show", "classes", "C2", "--format", "csv"],
        &["frobnicate"],
        &[],
    ] {
        let o = hecke(args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
    }
}
