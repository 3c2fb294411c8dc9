use std::process::{Command, Output};

use serde_json::Value;

fn gw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gw"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = gw(&all);
    (
        out.status.code().unwrap(),
        serde_json::from_slice(&out.stdout).unwrap(),
    )
}

#[test]
fn eval_reports_order_as_string() {
    let (code, doc) = json(&["eval", "derived(wr(E(2,1),A(5)))"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["order"], "34587645138205409280");
    assert_eq!(doc["result"]["degree"], "120");
    assert_eq!(doc["result"]["perfect"], true);
    assert_eq!(doc["result"]["expr"], "derived(wr(E(2,1), A(5)))");
}

#[test]
fn eval_text_output() {
    let out = gw(&["eval", "S(4)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order     24"), "{text}");
    assert!(text.contains("perfect   false"), "{text}");
}

#[test]
fn count_modes() {
    let (code, doc) = json(&["count", "prod(C(2),C(2))", "-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["value"], "3");
    assert_eq!(doc["result"]["mode"], "formula");
    let (_, doc) = json(&["count", "prod(C(2),C(2))", "-n", "2", "--brute-force"]);
    assert_eq!(doc["result"]["mode"], "brute_force");
    assert_eq!(doc["result"]["value"], "3");
    let (_, doc) = json(&["count", "A(5)", "-n", "3", "-m", "5"]);
    assert_eq!(doc["result"]["value"], "1");
    assert_eq!(doc["result"]["witness"]["index"], "5");
    let (_, doc) = json(&[
        "count",
        "S(4)",
        "-n",
        "2",
        "-m",
        "3",
        "--witness",
        "gens(4; (0 1 2), (0 1)(2 3))",
    ]);
    assert_eq!(doc["result"]["mode"], "witness_lower_bound");
    assert_eq!(doc["result"]["value"], "0");
}

#[test]
fn invariants_with_primes() {
    let (_, doc) = json(&["invariants", "prod(C(6),C(4))", "--primes", "2,3"]);
    assert_eq!(
        doc["result"]["abelian_invariants"],
        serde_json::json!(["2", "12"])
    );
    assert_eq!(doc["result"]["p_ranks"]["2"], "2");
    assert_eq!(doc["result"]["p_ranks"]["3"], "1");
}

#[test]
fn subgroups_listing_is_ordered_by_index() {
    let (_, doc) = json(&["subgroups", "S(3)", "-m", "3"]);
    let idx: Vec<&str> = doc["result"]["subgroups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["index"].as_str().unwrap())
        .collect();
    assert_eq!(idx, vec!["1", "2", "3", "3", "3"]);
}

#[test]
fn enumeration_guard_is_structured() {
    let (code, doc) = json(&["subgroups", "S(8)", "-m", "20"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["kind"], "enumeration_guard");
    assert_eq!(doc["error"]["details"]["oracle_bound"], "5000");
    assert_eq!(doc["error"]["details"]["low_index_bound"], "12");
}

#[test]
fn guard_flags_are_honoured() {
    let (code, doc) = json(&["eval", "S(20)", "--guard-order", "2^40"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["details"]["guard"], "guard-order");
    let (code, doc) = json(&["eval", "C(30)", "--guard-degree", "10"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["details"]["guard"], "guard-degree");
    let (code, _) = json(&[
        "count",
        "A(5)",
        "-n",
        "2",
        "--brute-force",
        "--oracle-bound",
        "10",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_carry_position() {
    let (code, doc) = json(&["eval", "b0(C(4))"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(doc["error"]["details"]["column"], "4");
    let out = gw(&["eval", "E(4,1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("requires a prime p"));
}

#[test]
fn verify_checks_exit_status() {
    let (code, doc) = json(&[
        "verify",
        "stagewise-gap",
        "--S",
        "A(5)",
        "--p",
        "2",
        "--stages",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "pass");
    let last = doc["result"]["assertions"]
        .as_array()
        .unwrap()
        .last()
        .unwrap()
        .clone();
    assert_eq!(last["actual"], "576460752303423487");

    let (code, doc) = json(&[
        "verify",
        "simple-power",
        "--S",
        "S(4)",
        "--k",
        "1",
        "-m",
        "2",
        "--n-max",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "fail");

    let (code, doc) = json(&[
        "verify",
        "perfect-product",
        "--factor",
        "A(5)",
        "--factor",
        "S(3)",
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "not_perfect");
    assert_eq!(doc["error"]["details"]["index"], "1");

    let (code, doc) = json(&["verify", "rank-formula", "--G", "E(2,3)", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["assertions"][0]["actual"], "7");

    let (code, _) = json(&[
        "verify",
        "stagewise-gap",
        "--S",
        "A(5)",
        "--p",
        "2",
        "--stages",
        "",
    ]);
    assert_eq!(code, 0);
    let (code, doc) = json(&["verify", "rank-formula", "--p", "2"]);
    assert_eq!(code, 2);
    assert!(doc["message"].as_str().unwrap().contains("--G"));
}

#[test]
fn hensel_root_and_precision_env() {
    let (code, doc) = json(&["hensel", "root", "1 + t", "-n", "3", "--prec", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"]["coefficients"],
        serde_json::json!(["1", "1/3", "-1/9"])
    );
    let out = Command::new(env!("CARGO_BIN_EXE_gw"))
        .args(["hensel", "root", "1 + t", "-n", "2", "--json"])
        .env("GW_PRECISION", "5")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["precision"], "5");
    let (code, doc) = json(&["hensel", "root", "2 + t", "-n", "2"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "hensel_precondition");
}

#[test]
fn classes_from_file() {
    let dir = std::env::temp_dir().join(format!("gw-classes-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("samples.txt");
    std::fs::write(&file, "# two samples\n8*t^5\n-3/2*t^-1 + 1\n").unwrap();
    let path = file.to_str().unwrap();
    let (code, doc) = json(&[
        "classes",
        "-n",
        "2",
        "--reps",
        "1,-1,2,-2,3,-3,6,-6",
        "--samples",
        path,
    ]);
    assert_eq!(code, 0);
    let reps: Vec<(&str, &str)> = doc["result"]["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            (
                s["representative"]["i"].as_str().unwrap(),
                s["representative"]["b"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(reps, vec![("1", "2"), ("1", "-6")]);

    let (code, doc) = json(&["classes", "-n", "2", "--reps", "1,4", "--samples", path]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "equivalent_representatives");

    let (code, doc) = json(&["classes", "-n", "2", "--reps", "1,2", "--samples", path]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "fail");
    std::fs::remove_dir_all(&dir).unwrap();
}
