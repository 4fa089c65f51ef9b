use std::process::{Command, Output};

use pfusion_core::catalog::save_group;
use pfusion_core::{FiniteGroup, Permutation};

fn pfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfusion"))
        .args(args)
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
fn analyze_quaternion_example_json() {
    let out = pfusion(&["analyze", "--group", "Q8:C3", "--prime", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 24);
    assert_eq!(v["nilpotency"]["p_nilpotent"], false);
    assert_eq!(v["fusion"]["condition_a"], true);
    assert_eq!(v["fusion"]["condition_b"], false);
    assert_eq!(v["fusion"]["witness_b"]["subgroup"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_cyclic_class_holds_for_quaternion_example() {
    let out = pfusion(&[
        "analyze", "--group", "Q8:C3", "--prime", "2", "--class", "cyclicp", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["fusion"]["condition_a"], true);
    assert_eq!(v["fusion"]["condition_b"], true);
}

#[test]
fn analyze_text_and_full_scan() {
    let out = pfusion(&["analyze", "--group", "A4", "--prime", "3", "--full"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3-nilpotent      true"), "{text}");
    assert!(text.contains("complement order 4"), "{text}");
}

#[test]
fn analyze_group_file_and_generators() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let s3 = FiniteGroup::generate(
        3,
        &[
            Permutation::parse_cycles("(0 1 2)", 3).unwrap(),
            Permutation::parse_cycles("(0 1)", 3).unwrap(),
        ],
    )
    .unwrap();
    save_group("S3", &s3, &path).unwrap();
    let from_file = pfusion(&[
        "analyze", "--group", path.to_str().unwrap(), "--prime", "3", "--format", "json",
    ]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(json(&from_file)["nilpotency"]["p_nilpotent"], false);

    let from_gens = pfusion(&[
        "analyze", "--generators", "(0 1 2)", "(0 1)", "--degree", "3", "--prime", "2",
        "--format", "json",
    ]);
    assert_eq!(from_gens.status.code(), Some(0));
    assert_eq!(json(&from_gens)["nilpotency"]["p_nilpotent"], true);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"name\": \"x\", \"degree\": 3, \"generators\": [[0, 0, 1]]}").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "--group", bad.to_str().unwrap(), "--prime", "2"],
        vec!["analyze", "--group", "NoSuchGroup", "--prime", "2"],
        vec!["analyze", "--group", "S3", "--prime", "4"],
        vec!["analyze", "--group", "S3", "--prime", "2", "--class", "bogus"],
        vec!["analyze", "--generators", "(0 1", "--degree", "3", "--prime", "2"],
        vec!["verify", "--max-order", "12", "--claim", "nonsense"],
        vec!["verify", "--max-order", "1000"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let out = pfusion(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_passes_and_reports_json() {
    let out = pfusion(&["verify", "--max-order", "24", "--primes", "2,3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["totals"]["fail"], 0);
    let cells = v["cells"].as_array().unwrap();
    assert!(cells.iter().any(|c| c["claim"] == "example_quaternion" && c["verdict"] == "pass"));
    for c in cells {
        for key in ["claim", "group", "prime", "verdict"] {
            assert!(c.get(key).is_some(), "{c}");
        }
    }
}

#[test]
fn verify_single_claim_text() {
    let out = pfusion(&["verify", "--max-order", "12", "--claim", "theorem_b"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("theorem_b"));
    assert!(!text.contains("corollary_1"));
}

#[test]
fn catalog_list_is_filtered() {
    let out = pfusion(&["catalog", "--list", "--max-order", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"Q8:C3"));
    assert!(names.contains(&"S4"));
    assert!(!names.contains(&"A5"));
    assert!(v.as_array().unwrap().iter().all(|e| e["order"].as_u64().unwrap() <= 24));
}

#[test]
fn verify_exits_one_on_failure() {
    let out = pfusion(&[
        "verify", "--max-order", "12", "--claim", "theorem_b", "--inject-fault", "S3@3",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["totals"]["fail"], 1);
}
