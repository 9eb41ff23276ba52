use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_meshforge"));
    c.env_remove("MESHFORGE_CAP").env_remove("MESHFORGE_JOBS");
    c
}

fn alg(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/presentations").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--json", p]);
    let o = run(&full);
    let text = std::fs::read_to_string(&path).unwrap();
    (serde_json::from_str(&text).unwrap(), o.status.code().unwrap())
}

#[test]
fn nf_of_yy_in_corner_algebra() {
    let o = run(&["nf", alg("r_f4.alg").to_str().unwrap(), "y*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "- x*x - x*y - y*x");
}

#[test]
fn rad11_vanishes_rad10_does_not() {
    let o = run(&["radzero", alg("lambda_f4.alg").to_str().unwrap(), "11"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    let o = run(&["radzero", alg("lambda_f4.alg").to_str().unwrap(), "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("false"));
}

#[test]
fn admissible_theta() {
    let o = run(&["admissible", "--theta", "0,1,-1,0,0,1,0,-1,0", "--field", "Q"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "admissible=true"));
    let o = run(&["admissible", "--theta", "t1=1, t2=-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("coefficient of xxxx is 1"));
}

#[test]
fn lemma_json_report() {
    let (v, code) = json_of(&["verify", "f4-lemma", "--field", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "meshforge-report/1");
    assert_eq!(v["status"], "pass");
    let entries = v["entries"].as_array().unwrap();
    let words = entries.iter().find(|e| e["id"] == "basis.words").unwrap();
    assert_eq!(words["status"], "pass");
    assert_eq!(words["residual"].as_str().unwrap().split(' ').count(), 12);
    assert!(entries.iter().all(|e| e["timing_ms"].is_null()));
    assert!(entries.iter().any(|e| e["id"] == "identity.yyyy"));
}

#[test]
fn dimension_over_other_fields_and_orders() {
    for args in [
        vec!["dim", "--field", "F3"],
        vec!["dim", "--precedence", "ab5,a5,ab4,a4,ab2,a3,ab3,a2,ab1,a1"],
    ] {
        let mut full = args.clone();
        let p = alg("lambda_f4.alg");
        full.push(p.to_str().unwrap());
        let o = run(&full);
        assert_eq!(stdout(&o).trim(), "156 [6, 10, 14, 18, 20, 20, 20, 18, 14, 10, 6]", "{args:?}");
    }
}

#[test]
fn cap_from_environment_still_escalates() {
    let o = bin()
        .env("MESHFORGE_CAP", "3")
        .args(["dim", alg("r_f4.alg").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "12 [1, 2, 3, 3, 2, 1]");
}

#[test]
fn oracle_agrees() {
    let (v, code) = json_of(&["oracle", alg("lambda_f4.alg").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["facts"]["dim"], "156");
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for (k, jobs) in ["1", "1", "3"].iter().enumerate() {
        let path = dir.path().join(format!("{k}.json"));
        let o = run(&["iso-check", "--field", "F5", "--samples", "3", "--seed", "9", "--jobs", jobs, "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        outs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
    let v: Value = serde_json::from_slice(&outs[0]).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn text_and_json_carry_the_same_checks() {
    let args = ["verify", "f4-corner", "--field", "F2"];
    let text = stdout(&run(&args));
    let (v, _) = json_of(&args);
    for e in v["entries"].as_array().unwrap() {
        let line = format!(
            "{} {} {} | residual: {}",
            e["status"].as_str().unwrap().to_uppercase(),
            e["id"].as_str().unwrap(),
            e["label"].as_str().unwrap(),
            e["residual"].as_str().unwrap()
        );
        assert!(text.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn theorem_char2_symbolic() {
    let (v, code) = json_of(&["verify", "f4-theorem", "--field", "F2"]);
    assert_eq!(code, 0);
    assert_eq!(v["facts"]["substitution.source"], "written");
    let ids: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    for k in 1..=9 {
        assert!(ids.contains(&format!("rel.{k}").as_str()));
    }
}

#[test]
fn ground_solver_over_f5() {
    let o = run(&["solve-sub", "--field", "F5", "--theta", "0,1,-1,0,0,1,0,-1,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn nakayama_reports_a_bijection() {
    let (v, _) = json_of(&["nakayama"]);
    let e = v["entries"].as_array().unwrap().iter().find(|e| e["id"] == "nu.bijective").unwrap().clone();
    assert_eq!(e["status"], "pass");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "f4-nothing"]).status.code(), Some(2));
    assert_eq!(run(&["admissible", "--theta", "1,2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "algebra bad\nvertices 0\narrow a: 0 -> 7\nrelations:\n").unwrap();
    let o = run(&["dim", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}
