use std::process::{Command, Output};

use serde_json::Value;

fn rootforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut full = args.to_vec();
    full.extend(["--out", "json"]);
    let out = rootforge(&full);
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v: Value = serde_json::from_str(&text).expect("valid json");
    (out.status.code().expect("exit code"), v, text)
}

#[test]
fn roots_degree_three() {
    let (code, v, _) = json(&["roots", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["results"]["psi_count"], 72);
    assert_eq!(v["results"]["psi_type"], "E6");
    assert_eq!(v["results"]["neg1_count"], 27);
}

#[test]
fn roots_edge_cases() {
    let (_, v, _) = json(&["roots", "--degree", "9"]);
    assert_eq!(v["results"]["psi_count"], 0);
    let (_, v, _) = json(&["roots", "--quadric"]);
    assert_eq!(v["results"]["psi_type"], "A1");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["roots", "--degree", "10"],
        vec!["roots"],
        vec!["cupcheck", "B3"],
        vec!["cupcheck", "D4", "--primes", "4"],
        vec!["chain", "D4", "--from", "1,0,0,0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(rootforge(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_one_with_payload() {
    let out = Command::new(env!("CARGO_BIN_EXE_rootforge"))
        .args(["embed", "E7", "A1", "--out", "json"])
        .env("ROOTFORGE_MAX_RANK", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"]["message"].as_str().unwrap().contains("exceeds"));
}

#[test]
fn failed_chain_exits_one() {
    let (code, v, _) = json(&["chain", "D4", "--from", "1,1,1,2", "--to", "1,0,0,0"]);
    assert_eq!(code, 1);
    assert!(v.get("error").is_some());
}

#[test]
fn cupcheck_examples() {
    let (code, v, _) = json(&["cupcheck", "D4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["bad_primes"], serde_json::json!([2]));
    assert_eq!(v["results"]["attribution"]["2"], serde_json::json!(["cartan-determinant:component-0", "cup:n=3:component-0"]));
    let (_, v, _) = json(&["cupcheck", "--type", "A4"]);
    assert_eq!(v["results"]["bad_primes"], serde_json::json!([5]));
    let (code, v, _) = json(&["cupcheck", "E8", "--primes", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["bad_primes"], serde_json::json!([2, 3, 5]));
}

#[test]
fn explicit_bad_prime_list_still_passes() {
    // Non-very-good primes are reported but carry no verdict.
    let (code, v, _) = json(&["cupcheck", "D4", "--primes", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["characteristics"][0]["overall"], false);
}

#[test]
fn cycle_and_d4_and_embed() {
    let (code, v, _) = json(&["cycle", "D4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["components"][0]["fundamental_cycle"], serde_json::json!([1, 1, 1, 2]));
    assert_eq!(v["results"]["components"][0]["n"], 5);
    for field in ["F2", "F4", "f4"] {
        let (code, _, _) = json(&["d4", "--field", field]);
        assert_eq!(code, 0, "{field}");
    }
    let (code, v, _) = json(&["embed", "E6", "D4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["orbits"], 1);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [vec!["roots", "--degree", "5"], vec!["cupcheck", "A3"], vec!["d4"]] {
        let (_, v, text) = json(&args);
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text);
    }
}

#[test]
fn csv_tables() {
    let out = rootforge(&["roots", "--degree", "7", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,class"));
    assert_eq!(text.lines().filter(|l| l.starts_with("(-2)")).count(), 2);
    let out = rootforge(&["cupcheck", "D4", "--primes", "2", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2,3,3,3,2,false"));
}

#[test]
fn seed_changes_only_the_sample() {
    let (c1, a, _) = json(&["verify-paper", "--seed", "1"]);
    let (c2, b, _) = json(&["verify-paper", "--seed", "2"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a["verdicts"].as_array().unwrap().len(), 11);
    assert_eq!(a["results"]["cup-surjective-very-good"], b["results"]["cup-surjective-very-good"]);
}
