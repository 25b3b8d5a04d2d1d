use std::process::{Command, Output};

use serde_json::Value;

fn frobkern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobkern"))
        .args(args)
        .env_remove("FROBKERN_SEED")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = frobkern(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn block_query() {
    let v = json_ok(&["block", "--p", "3", "--r", "2", "--lambda", "5"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["block"]["i"], 0);
    assert_eq!(v["result"]["block"]["s"], 1);
    let v = json_ok(&["block", "--p", "3", "--r", "2", "--lambda", "8"]);
    assert_eq!(v["result"]["block"], "steinberg");
}

#[test]
fn block_members_and_type() {
    let v = json_ok(&["block-members", "--p", "3", "--r", "2", "--i", "0", "--s", "0"]);
    assert_eq!(v["result"]["members"], serde_json::json!([0, 1, 3, 4, 6, 7]));
    let v = json_ok(&["classify-block", "--p", "3", "--r", "2", "--lambda", "0"]);
    assert_eq!(v["result"]["type"], "wild");
    let v = json_ok(&["classify-block", "--p", "3", "--r", "2", "--steinberg"]);
    assert_eq!(v["result"]["type"], "finite");
}

#[test]
fn period_query_lists_hypotheses() {
    let v = json_ok(&["period", "--p", "3", "--r", "2", "--lambda", "0"]);
    assert_eq!(v["result"]["period"], 6);
    let h: Vec<&str> = v["hypotheses"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(h.contains(&"good-prime"));
    assert_eq!(v["verified_by_oracle"], false);
}

#[test]
fn period_checked_by_oracle() {
    let v = json_ok(&["period", "--p", "3", "--r", "1", "--lambda", "1", "--check"]);
    assert_eq!(v["result"]["period"], 2);
    assert_eq!(v["verified_by_oracle"], true);
}

#[test]
fn cohom_methods_agree() {
    for method in ["closed-form", "enumeration", "resolution"] {
        let v = json_ok(&["cohom", "--p", "3", "--r", "2", "--n", "6", "--method", method]);
        assert_eq!(v["result"]["dim"], 7, "{method}");
        assert_eq!(v["result"]["method"], method);
    }
}

#[test]
fn small_queries() {
    assert_eq!(json_ok(&["depth", "--p", "3", "--lambda", "5"])["result"]["depth"]["finite"], 2);
    assert_eq!(
        json_ok(&["depth", "--p", "5", "--cartan", "2,-1;-1,2", "--weight", "4,4"])["result"]["depth"]["finite"],
        2
    );
    assert_eq!(json_ok(&["ph", "--d", "1", "--r", "2"])["result"]["ph"], 2);
    assert_eq!(json_ok(&["ph", "--p", "3", "--r", "1", "--lambda", "2"])["result"]["ph"], "projective");
    assert_eq!(json_ok(&["complexity", "--p", "3", "--r", "2", "--lambda", "4"])["result"]["complexity"], 3);
    assert_eq!(
        json_ok(&["heller-orbit", "--p", "3", "--lambda", "1", "--n", "-1", "--check"])["result"]["weight"],
        -5
    );
    let v = json_ok(&["heart-weights", "--p", "3", "--r", "2", "--lambda", "6", "--check"]);
    assert_eq!(v["result"]["weights"], serde_json::json!([1, 4]));
    assert_eq!(v["verified_by_oracle"], true);
    let v = json_ok(&["classify-component", "--p", "3", "--context", "grt", "--evidence", "generic"]);
    assert_eq!(v["result"]["shapes"].as_array().unwrap().len(), 3);
}

#[test]
fn deterministic_output() {
    let args = ["verify", "blocks", "--p", "3", "--seed", "7"];
    let strip = |v: Value| {
        let mut v = v;
        for r in v["result"]["reports"].as_array_mut().unwrap() {
            r["wall_ms"] = Value::Null;
        }
        v
    };
    assert_eq!(strip(json_ok(&args)), strip(json_ok(&args)));
    let q = ["heart-weights", "--p", "3", "--r", "2", "--lambda", "7", "--check"];
    assert_eq!(frobkern(&q).stdout, frobkern(&q).stdout);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_frobkern"))
        .args(["period", "--p", "3", "--lambda", "0", "--check"])
        .env("FROBKERN_SEED", "12345")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn user_errors_exit_one() {
    assert_eq!(frobkern(&["block", "--p", "4", "--lambda", "0"]).status.code(), Some(1));
    assert_eq!(frobkern(&["block", "--p", "3", "--r", "2", "--lambda", "9"]).status.code(), Some(1));
    assert_eq!(frobkern(&["verify", "nonsense", "--p", "3"]).status.code(), Some(1));
    assert_eq!(frobkern(&["period", "--p", "3"]).status.code(), Some(1));
    let out = frobkern(&["heller-orbit", "--p", "3", "--r", "2", "--lambda", "0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("depth-equals-r"));
    let out = frobkern(&["period", "--p", "3", "--r", "1", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    let v = json_ok(&["verify", "cohom", "--p", "3", "--r", "2"]);
    assert_eq!(v["result"]["passed"], true);
    let v = json_ok(&["verify", "verma-period", "--p", "3"]);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["verified_by_oracle"], true);
}

#[test]
fn budget_flags_partial_report() {
    let v = json_ok(&["verify", "graded-orbit", "--p", "3", "--budget-ms", "0"]);
    assert_eq!(v["result"]["partial"], true);
    assert_eq!(v["verified_by_oracle"], false);
}

#[test]
fn text_format() {
    let out = frobkern(&["period", "--p", "3", "--r", "2", "--lambda", "5", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "period: 2"), "{text}");
}

#[test]
fn module_dump_and_inspect() {
    let dir = std::env::temp_dir().join(format!("frobkern-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verma.json");
    let path_s = path.to_str().unwrap();
    json_ok(&["module", "--kind", "verma", "--p", "3", "--lambda", "0", "--dump", path_s]);
    let v = json_ok(&["inspect", "--load", path_s]);
    assert_eq!(v["result"]["dim"], 3);
    assert_eq!(v["result"]["top"], serde_json::json!({ "0": 1 }));
    assert_eq!(v["result"]["socle"], serde_json::json!({ "1": 1 }));
    assert_eq!(v["result"]["projective"], false);

    let path = dir.join("ga.json");
    let path_s = path.to_str().unwrap();
    json_ok(&["module", "--kind", "ga-regular", "--p", "3", "--r", "2", "--dump", path_s]);
    let v = json_ok(&["inspect", "--load", path_s]);
    assert_eq!(v["result"]["dim"], 9);
    assert_eq!(v["result"]["projective"], true);

    std::fs::write(dir.join("bad.json"), "{\"p\": 3}").unwrap();
    assert_eq!(frobkern(&["inspect", "--load", dir.join("bad.json").to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
