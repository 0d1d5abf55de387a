use std::process::{Command, Output};

use negaxor::machines::MachineKind;
use negaxor::numeral::Radix;
use negaxor::Transducer;

fn negaxor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negaxor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = negaxor(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn convert_examples() {
    assert_eq!(
        stdout(&["convert", "-14", "--base", "2", "--negabase"]),
        "110110\n"
    );
    assert_eq!(
        stdout(&["convert", "0", "--base", "5", "--negabase"]),
        "0\n"
    );
    assert_eq!(
        stdout(&["convert", "10", "--base", "2", "--negabase"]),
        "11110\n"
    );
    assert_eq!(
        stdout(&["convert", "-10", "--negabase", "--pad", "6"]),
        "001010\n"
    );
    assert_eq!(stdout(&["convert", "496", "--b", "16"]), "1,15,0\n");
}

#[test]
fn convert_rejects_negative_base_b_input() {
    let out = negaxor(&["convert", "-3", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-negative"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["convert", "5", "--b", "1"][..],
        &["machine", "nope"],
        &["seq", "--count", "0"],
        &["verify", "--b-max", "1"],
        &["seq", "--format", "dot"],
        &["frobnicate"],
    ] {
        assert_eq!(negaxor(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn seq_prints_one_term_per_line() {
    let text = stdout(&["seq", "--count", "10"]);
    let terms: Vec<&str> = text.lines().collect();
    assert_eq!(
        terms,
        ["2", "4", "10", "8", "10", "20", "18", "16", "18", "20"]
    );
}

#[test]
fn operators() {
    assert_eq!(stdout(&["op", "xorneg", "10", "-10"]), "20\n");
    assert_eq!(stdout(&["op", "xorneg", "14", "-14", "--b", "2"]), "36\n");
    assert_eq!(stdout(&["op", "ominus", "9", "3"]), "10\n");
    assert_eq!(stdout(&["op", "doublebar", "5", "--b", "3"]), "4\n");
    let v = json(&["op", "ominus", "30", "10", "--format", "json"]);
    assert_eq!(v["result"], "20");
    assert_eq!(v["digits"], "10100");
}

#[test]
fn verify_trivial_case_passes() {
    let out = negaxor(&["verify", "--b-max", "2", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verified"));
}

#[test]
fn verify_json_report() {
    let v = json(&[
        "verify", "--b-max", "4", "--n-max", "200", "--format", "json",
    ]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["sweep"]["checked"], 3 * 201);
    assert_eq!(v["sweep"]["failures"].as_array().unwrap().len(), 0);
    let records = v["proof"]["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    for r in records {
        assert_eq!(r["product_states"], 6);
        assert_eq!(r["minimized_states"], 3);
    }
}

#[test]
fn every_json_output_is_one_document() {
    for args in [
        &["convert", "-14", "--negabase", "--format", "json"][..],
        &["op", "xorneg", "3", "-3", "--format", "json"],
        &["op", "doublebar", "8", "--b", "3", "--format", "json"],
        &["seq", "--count", "5", "--format", "json"],
        &[
            "verify", "--b-max", "3", "--n-max", "10", "--format", "json",
        ],
        &["machine", "lemma1", "--format", "json"],
        &["machine", "mult", "--b", "3", "--prove", "--format", "json"],
        &[
            "machine", "theorem", "--b", "5", "--run", "37", "--format", "json",
        ],
    ] {
        let text = stdout(args);
        let mut docs = serde_json::Deserializer::from_str(&text).into_iter::<serde_json::Value>();
        assert!(docs.next().unwrap().is_ok(), "{args:?}");
        assert!(docs.next().is_none(), "{args:?}");
    }
}

#[test]
fn machine_export_import_is_isomorphic() {
    for b in [2u32, 3, 10, 16] {
        for kind in MachineKind::ALL {
            let text = stdout(&[
                "machine",
                kind.name(),
                "--b",
                &b.to_string(),
                "--format",
                "json",
            ]);
            let imported = Transducer::from_json(&text).unwrap();
            let original = kind.build(Radix::new(b).unwrap());
            assert!(original.isomorphic(&imported).is_ok(), "{kind} b={b}");
        }
    }
}

#[test]
fn machine_dot_and_run() {
    let dot = stdout(&[
        "machine",
        "lemma1",
        "--b",
        "3",
        "--format",
        "dot",
        "--merge-edges",
    ]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("0 -> 1 [label=\"1-2|0\"];"));
    let plain = stdout(&["machine", "lemma1", "--b", "3", "--format", "dot"]);
    assert_eq!(plain.matches(" -> ").count(), 1 + 9);
    assert_eq!(
        stdout(&["machine", "lemma1", "--run", "10"]),
        "1010 -> 10100\n"
    );
    let v = json(&["machine", "conv-neg-n", "--run", "13", "--format", "json"]);
    assert_eq!(v["output"], "110111");
    assert_eq!(v["value_negabase"], "-13");
}

#[test]
fn machine_prove() {
    let out = negaxor(&["machine", "figure1-product", "--b", "7", "--prove"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("b=7: 6 product states, 3 after minimization"));
    assert!(text.trim_end().ends_with("[ok]"));
}
