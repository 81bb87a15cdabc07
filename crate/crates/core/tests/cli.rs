use std::process::Command;

use markov_dedekind::cli::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::{json, Value};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("markov-dedekind").chain(args.iter().copied()))
}

fn cli_json(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

#[test]
fn sums_print_exact_rationals() {
    let out = cli(&["rsum", "3", "1", "2"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "-2/9\n"));
    assert_eq!(cli(&["dsum", "3", "1"]).stdout, "1/18\n");
    assert_eq!(cli(&["dsum", "5", "2"]).stdout, "0\n");
    assert_eq!(cli(&["dsum", "5", "-1"]).stdout, "-1/5\n");
    assert_eq!(cli(&["defect", "2", "5", "29"]).stdout, "0\n");
    assert_eq!(cli_json(&["rsum", "3", "1", "2", "--json"]), json!({ "value": "-2/9" }));
    assert_eq!(cli_json(&["--json", "dsum", "1", "1"]), json!({ "value": "0" }));
}

#[test]
fn undefined_sums_exit_with_domain_error() {
    let out = cli(&["rsum", "4", "2", "1"]);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert!(out.stderr.contains("gcd(4, 2) = 2"), "{}", out.stderr);
    assert!(out.stdout.is_empty());

    let out = cli(&["defect", "2", "3", "4"]);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert!(out.stderr.contains("pairwise coprime"), "{}", out.stderr);

    assert_eq!(cli(&["dsum", "0", "1"]).code, EXIT_DOMAIN);
    assert_eq!(cli(&["markov", "check", "0", "1", "1"]).code, EXIT_DOMAIN);
    assert_eq!(cli(&["oracle", "--f", "3", "--max", "501"]).code, EXIT_DOMAIN);
    assert_eq!(cli(&["markov", "list", "--max", "0"]).code, EXIT_DOMAIN);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["rsum", "3", "1"]).code, EXIT_USAGE);
    assert_eq!(cli(&["rsum", "3", "1", "x"]).code, EXIT_USAGE);
    assert_eq!(cli(&["solve", "--f", "3", "--max", "5", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);

    let out = cli(&["solve", "--f", "a + 2b", "--max", "5"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("position 5"), "{}", out.stderr);
    assert!(out.stderr.contains("       ^"), "{}", out.stderr);

    let out = cli(&["oracle", "--f", "a^-1", "--max", "5"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("exponent"), "{}", out.stderr);
}

#[test]
fn arbitrary_precision_arguments() {
    let big = "1000000000000000000000000000000000000007";
    let out = cli(&["rsum", big, "1", "1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let out = cli(&["markov", "check", "1", "1", big]);
    assert!(out.stdout.contains("markov equation: false"));
}

#[test]
fn markov_list_and_check() {
    let out = cli(&["markov", "list", "--max", "30"]);
    assert_eq!(out.stdout, "[1, 1, 1]\n[1, 1, 2]\n[1, 2, 5]\n[1, 5, 13]\n[2, 5, 29]\n");

    let v = cli_json(&["markov", "list", "--max", "5", "--json"]);
    assert_eq!(v, json!({ "bound": 5, "count": 3, "triples": [[1, 1, 1], [1, 1, 2], [1, 2, 5]] }));

    let v = cli_json(&["markov", "check", "3", "3", "3", "--json"]);
    assert_eq!(
        v,
        json!({ "triple": [3, 3, 3], "is_markov": false, "markov_condition": true, "pairwise_coprime": false })
    );
    let out = cli(&["markov", "check", "5", "13", "194"]);
    assert_eq!(
        out.stdout,
        "[5, 13, 194]\nmarkov equation: true\nmarkov condition: true\npairwise coprime: true\n"
    );
}

#[test]
fn verify_equivalence_report() {
    let v = cli_json(&["verify", "equivalence", "--max", "30", "--sample", "200", "--json"]);
    assert_eq!(v["bound"], 30);
    assert_eq!(v["counts"], json!({ "eq1": 5, "cond2": 5, "dzero": 5 }));
    assert_eq!(v["triples"], json!([[1, 1, 1], [1, 1, 2], [1, 2, 5], [1, 5, 13], [2, 5, 29]]));
    assert_eq!(v["counterexamples"], json!([]));
    assert_eq!(v["evaluated"], 205);
    assert_eq!(v["passed"], true);

    let out = cli(&["verify", "equivalence", "--max", "5"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.ends_with("counterexamples: 0\nresult: PASS\n"), "{}", out.stdout);
}

#[test]
fn solve_json_schema() {
    let v = cli_json(&["solve", "--f", "3", "--max", "5", "--json"]);
    let perms = json!([[1, 1, 1], [1, 1, 2], [1, 2, 1], [1, 2, 5], [1, 5, 2], [2, 1, 1], [2, 1, 5], [2, 5, 1], [5, 1, 2], [5, 2, 1]]);
    assert_eq!(v["f"], "3");
    assert_eq!(v["bound"], 5);
    assert_eq!(v["verdict"], "SolutionsAreMarkov");
    assert_eq!(v["solutions"], perms);
    assert_eq!(v["branches"], json!({ "k1": perms, "k3": [] }));

    let v = cli_json(&["solve", "--f", "1", "--max", "6", "--json"]);
    assert_eq!(v["verdict"], "SolutionsAre3Markov");
    assert_eq!(v["solutions"], json!([[3, 3, 3], [3, 3, 6], [3, 6, 3], [6, 3, 3]]));
    assert_eq!(v["branches"]["k3"], json!([[1, 1, 1], [1, 1, 2], [1, 2, 1], [2, 1, 1]]));

    let v = cli_json(&["solve", "--f", "3 + a*b", "--max", "50", "--json"]);
    assert_eq!(v["verdict"], "ProvablyEmpty");
    assert_eq!(v["f"], "a*b + 3");
    assert_eq!(v["solutions"], json!([]));
}

#[test]
fn oracle_agrees_with_solve() {
    for f in ["3", "1", "a", "-a + 4", "b*c - 2"] {
        let fast = cli_json(&["solve", "--f", f, "--max", "20", "--json"]);
        let slow = cli_json(&["oracle", "--f", f, "--max", "20", "--json"]);
        assert_eq!(fast["solutions"], slow["solutions"], "f = {f}");
        assert_eq!(fast["f"], slow["f"]);
    }
    let out = cli(&["oracle", "--f", "1", "--max", "3"]);
    assert_eq!(out.stdout, "f = 1\nbound: 3\nsolutions: 1\n[3, 3, 3]\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "equivalence", "--max", "40", "--sample", "100", "--seed", "9", "--json"];
    assert_eq!(cli(&args), cli(&args));
    let args = ["solve", "--f", "c - a*b + 2", "--max", "100"];
    assert_eq!(cli(&args), cli(&args));
}

#[test]
fn binary_round_trip() {
    let out = Command::new(env!("CARGO_BIN_EXE_markov-dedekind"))
        .args(["rsum", "3", "1", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-2/9\n");

    let out = Command::new(env!("CARGO_BIN_EXE_markov-dedekind"))
        .args(["rsum", "4", "2", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("gcd(4, 2)"));
}
