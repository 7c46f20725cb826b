//! The `topos-lens` binary: verdicts, exit codes and JSON output.

use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topos-lens"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const DATA: &str = "examples/data";

fn data(file: &str) -> String {
    format!("{DATA}/{file}")
}

#[test]
fn kripke_excluded_middle_fails_at_the_root() {
    let o = bin(&["check-kripke", "--model", &data("two_chain.json"), "--formula", &data("lem.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("w0 ⊩ P \\/ ~P: false"));
    let o = bin(&["check-kripke", "--model", &data("two_chain.json"), "--formula", &data("lem.txt"), "--world", "w1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sheaf_checks_at_opens() {
    let o = bin(&["check-sheaf", "--model", &data("sierpinski.json"), "--formula", &data("lem.txt"), "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "{x,y} ⊩ P \\/ ~P: false\n");
    let o = bin(&["check-sheaf", "--model", &data("sierpinski.json"), "--formula", &data("lem.txt"), "--open", "x"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["check-sheaf", "--model", &data("khalimsky_sign.json"), "--formula", &data("not_not_trichotomy.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["check-sheaf", "--model", &data("khalimsky_sign.json"), "--formula", &data("trichotomy.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn zariski_stage_files() {
    let o = bin(&["check-zar", "--stage", &data("dual_numbers.json"), "--formula", &data("field_property.txt"), "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = bin(&["check-zar", "--stage", &data("dual_numbers.json"), "--formula", &data("eps_invertible.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["check-zar", "--stage", &data("split_quadratic.json"), "--formula", &data("square_root_of_one.txt")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn derive_prints_the_value() {
    let o = bin(&["derive", "--poly", "x^3", "--at", "2", "--order", "2", "--quiet"]);
    assert_eq!(stdout(&o), "12\n");
    let o = bin(&["--json", "derive", "--poly", "3x^2 - 2x + 1/2", "--at", "1/3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "0");
    assert_eq!(v["pass"], true);
    assert_eq!(bin(&["derive", "--poly", "x^", "--at", "1"]).status.code(), Some(2));
}

#[test]
fn translate_matches_golden_files() {
    let golden = std::fs::read_to_string(format!("{}/tests/golden/exists_clause.eff.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let o = bin(&["translate", "--topos", "eff", "--formula", &data("exists_clause.txt")]);
    assert_eq!(stdout(&o), golden);
    let golden = std::fs::read_to_string(format!("{}/tests/golden/field_property.zar.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let o = bin(&["translate", "--topos", "zar", "--formula", &data("field_property.txt")]);
    assert_eq!(stdout(&o), golden);
    let o = bin(&["translate", "--topos", "zar", "--formula", &data("prime_or_not.txt")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn realizers_by_name_and_bounded_search() {
    let o = bin(&["check-eff", "--realizer", "prime_or_not", "--formula", &data("prime_or_not.txt"), "--bound", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["check-eff", "--realizer", "next_prime", "--formula", &data("prime_or_not.txt"), "--bound", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("refuted"));
    let o = bin(&["check-eff", "--realizer", "no_such", "--formula", &data("prime_or_not.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["search-eff", "--formula", &data("zero_test.txt"), "--max-index", "50", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("evidence, not proof"));
}

#[test]
fn every_demo_passes_and_is_stable() {
    let first = bin(&["demo", "all"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(stdout(&first), stdout(&bin(&["demo", "all"])));
    let listed = stdout(&bin(&["demo", "--list"]));
    for name in ["field-property", "lem-sierpinski", "next-prime", "trichotomy", "church-turing", "markov"] {
        assert!(listed.contains(name), "{name}");
    }
    let one = stdout(&bin(&["demo", "field-property"]));
    assert!(one.contains("zariski reading:") && one.contains("forced"));
    assert_eq!(bin(&["demo", "no-such-demo"]).status.code(), Some(2));
}

#[test]
fn corpus_report_as_json() {
    let o = bin(&["--json", "--seed", "3", "corpus", "--target", "kripke", "--models", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["seed"], 3);
    assert_eq!(v["result"]["failures"].as_array().unwrap().len(), 0);
    assert!(v["result"]["classical"].as_array().unwrap().iter().all(|c| !c["refuted_by"].as_array().unwrap().is_empty()));
}

#[test]
fn missing_files_are_errors() {
    let o = bin(&["check-kripke", "--model", "nowhere.json", "--formula", &data("lem.txt")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere.json"));
}
