use std::process::{Command, Output};

use serde_json::Value;

fn qk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qk"))
        .args(args)
        .env_remove("QK_JOBS")
        .output()
        .expect("qk runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = qk(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, code)
}

#[test]
fn count_examples() {
    let (v, code) = json(&["count", "--n", "2", "--field", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 90);
    assert_eq!(v["closed_form"], 90);
    assert_eq!(v["match"], true);

    let (v, _) = json(&["count", "--n", "0", "--field", "7"]);
    assert_eq!(v["count"], 2);

    let (v, code) = json(&["count", "--n", "6", "--q", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], Value::Null);
    assert_eq!(v["closed_form"], 9u64.pow(12) + 9u64.pow(6));

    let (v, _) = json(&["count", "--n", "1", "--field", "2^2"]);
    assert_eq!(v["count"], 20);
    let (v, _) = json(&["count", "--n", "1", "--field", "4"]);
    assert_eq!(v["field"], "2^2");
}

#[test]
fn count_beyond_the_guard_falls_back_to_formulas() {
    let (v, code) = json(&["count", "--n", "6", "--field", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], Value::Null);
    assert!(v["note"].as_str().unwrap().contains("not enumerated"));
}

#[test]
fn verify_examples() {
    let (v, code) = json(&["verify", "homogeneous", "--n", "1", "--field", "3"]);
    assert_eq!(code, 0);
    assert_eq!((v["orbit_size"].clone(), v["stab_size"].clone(), v["group_order"].clone()), (12.into(), 2.into(), 24.into()));
    assert_eq!(v["pass"], true);

    let (v, code) = json(&["verify", "spin", "--n", "2", "--field", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["idempotents"], 20);
    assert_eq!(v["quadric_points"], 20);

    let (v, code) = json(&["verify", "recursion", "--n", "6", "--q", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);

    let (v, code) = json(&["verify", "similitude", "--n", "1", "--field", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["orbit_size"], 24);
}

#[test]
fn transport_examples() {
    let (v, code) = json(&["transport", "--n", "1", "--field", "3", "--point", "0,1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["word"].as_array().unwrap().len(), 2);
    assert_eq!(v["dickson"], 0);
    assert_eq!(v["verified"], true);

    let (v, code) = json(&["transport", "--n", "1", "--field", "2", "--all"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], 6);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 6);
    assert_eq!(v["all_verified"], true);

    let out = qk(&["transport", "--n", "1", "--field", "3", "--point", "0,1,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not on the quadric"));

    let (v, code) = json(&["transport", "--n", "1", "--field", "Q", "--point", "1,-1,2,2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verified"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["count", "--n", "2", "--field", "6"],
        vec!["count", "--n", "2", "--q", "12"],
        vec!["count", "--n", "2"],
        vec!["verify", "homogeneous", "--n", "0", "--field", "3"],
        vec!["verify", "spin", "--n", "1", "--field", "Q"],
        vec!["verify", "homogeneous", "--n", "4", "--field", "7"],
        vec!["transport", "--n", "1", "--field", "3"],
        vec!["transport", "--n", "1", "--field", "3", "--point", "0,1,0"],
        vec!["count", "--n", "1", "--field", "3", "--jobs", "0"],
    ] {
        assert_eq!(qk(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["transport", "--n", "2", "--field", "3", "--all"];
    let one = qk(&[&args[..], &["--jobs", "1"]].concat());
    let four = qk(&[&args[..], &["--jobs", "4"]].concat());
    let again = qk(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_qk"))
        .args(["count", "--n", "2", "--field", "5"])
        .env("QK_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, qk(&["count", "--n", "2", "--field", "5"]).stdout);
}

#[test]
fn csv_and_table_project_the_record() {
    let out = qk(&["count", "--n", "2", "--field", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,field,count,closed_form,recursive,match,strata.open,strata.closed"));
    assert_eq!(lines.next(), Some("2,3,90,90,90,true,54,36"));

    let out = qk(&["transport", "--n", "1", "--field", "3", "--all", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 13);

    let out = qk(&["verify", "spin", "--n", "1", "--field", "2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("check"));
    assert!(text.contains("spin_projective"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qk(&["verify", "spin", "--n", "1", "--field", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["equal"], true);
}
