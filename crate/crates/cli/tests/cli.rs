use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monohecke")).args(args).env_remove("MONOHECKE_CACHE_DIR").env("RUST_LOG", "off").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn group_summary() {
    let out = run(&["group", "--type", "B3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["order"], 48);
    assert_eq!(v["nu"], 9);
    assert_eq!(v["degrees"], serde_json::json!([2, 4, 6]));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [&["group"][..], &["group", "--type", "Z9"], &["group", "--type", "A2", "--lattice", "weird"], &["kl", "--type", "A2", "--n", "2", "--lambda", "1"], &["identities", "--type", "A1", "--only", "nonsense"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn cells_and_jring_of_a2() {
    let v = json(&run(&["cells", "--type", "A2"]));
    assert_eq!(v["two_sided_cells"].as_array().unwrap().len(), 3);
    let v = json(&run(&["jring", "--type", "A2", "--n", "2", "--lattice", "sc", "--algebra", "matrix", "--lambda", "1,0"]));
    assert!(!v["hstar"].as_array().unwrap().is_empty());
    let csv = run(&["cells", "--type", "A2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("index,label,a"));
}

#[test]
fn axioms_report_passes() {
    for alg in ["hecke", "w-lambda", "extended", "corner", "matrix", "orbit"] {
        let out = run(&["axioms", "--type", "A1", "--lattice", "sc", "--n", "2", "--lambda", "1", "--algebra", alg]);
        assert!(out.status.success(), "{alg}");
    }
}

#[test]
fn reps_table() {
    let v = json(&run(&["reps", "--type", "A2", "--group", "reflection"]));
    let dims: Vec<i64> = v["representations"].as_array().unwrap().iter().map(|r| r["dim"].as_i64().unwrap()).collect();
    let mut dims = dims;
    dims.sort();
    assert_eq!(dims, [1, 1, 2]);
    assert_eq!(v["special_per_cell"].as_array().unwrap().len(), 3);
}

#[test]
fn identities_exit_code_follows_checks() {
    let out = run(&["identities", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failing: Vec<&str> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failing, ["psi flat compatibility"]);
    let out = run(&["identities", "--type", "A2", "--only", "tau duality", "--only", "hom parity"]);
    assert!(out.status.success());
    let list = json(&run(&["identities", "--list"]));
    assert!(list.as_array().unwrap().len() > 30);
}

#[test]
fn cache_reuses_successful_output() {
    let dir = std::env::temp_dir().join(format!("monohecke-cache-{}", std::process::id()));
    let go = || Command::new(env!("CARGO_BIN_EXE_monohecke")).args(["kl", "--type", "B2"]).env("MONOHECKE_CACHE_DIR", &dir).env("RUST_LOG", "off").output().unwrap();
    let first = go();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    assert_eq!(go().stdout, first.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
