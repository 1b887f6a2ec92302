use std::path::PathBuf;
use std::process::{Command, Output};

fn repo(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn weightcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weightcat")).args(args).env_remove("WEIGHTCAT_BOUND").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validates_the_shipped_model() {
    let o = weightcat(&["validate", &repo("models/ell.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("symmetry involutivity"));
}

#[test]
fn rejects_a_zero_rank() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(repo("models/arrow.json")).unwrap().replacen("\"rank\": 1", "\"rank\": 0", 1);
    std::fs::write(&path, text).unwrap();
    let o = weightcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank must be positive"));
}

#[test]
fn analyze_reports_the_numerical_ideal() {
    let o = weightcat(&["analyze", &repo("models/ell.json"), "--obj", "one+h1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("dim numerical ideal") && l.trim_end().ends_with('1')), "{out}");
    assert!(out.lines().any(|l| l.contains("dim End") && l.trim_end().ends_with('3')), "{out}");
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let o = weightcat(&["verify", &repo("models/ell.json"), "--scenario", "prop-9.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("prop-9.9"));
}

#[test]
fn missing_files_are_io_errors() {
    assert_eq!(weightcat(&["validate", "/nonexistent/model.json"]).status.code(), Some(3));
    let o = weightcat(&["complex", "ell", "--file", "/nonexistent/cx.json", "--length"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_operation_is_a_usage_error() {
    assert_eq!(weightcat(&["complex", "ell", "--file", &repo("models/complexes/alpha.json")]).status.code(), Some(2));
    assert_eq!(weightcat(&["verify", "ell"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = weightcat(&["verify", "arrow", "--scenario", "prop-6.1", "--scenario", "prop-3.5", "--seed", "5", "--report", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.contains("\"seed\": 5"));
}

#[test]
fn the_arrow_model_is_green() {
    let o = weightcat(&["verify", &repo("models/arrow.json"), "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn the_ell_model_fails_only_the_functor_scenarios() {
    // both functor fixtures have kb_trace 3 on ell, so they are not numerical there
    let o = weightcat(&["verify", &repo("models/ell.json"), "--all"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failing: Vec<&str> = out
        .lines()
        .filter(|l| l.contains(" FAIL") && !l.starts_with("overall"))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    assert_eq!(failing, ["prop-6.2", "prop-6.6"]);
}

#[test]
fn minimizes_and_truncates_a_file() {
    let o = weightcat(&["complex", "ell", "--file", &repo("models/complexes/split_unit.json"), "--minimize", "--truncate", "-1", "--length"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[-1, 0]"), "{out}");
}

#[test]
fn bound_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_weightcat"))
        .args(["functor", "ell", "--pi", "--file", &repo("models/complexes/alpha.json")])
        .env("WEIGHTCAT_BOUND", "3")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("model ell  seed 0  bound 3"));
}
