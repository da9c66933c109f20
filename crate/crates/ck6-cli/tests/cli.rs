//! End-to-end tests of the `ck6` binary: documented examples, exit codes,
//! and byte-identical reruns.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ck6"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    assert!(
        output.stderr.is_empty() || output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn dim_reports_twenty_for_the_adjoint_labels() {
    let out = run(&["dim", "--family", "A", "--m", "1", "--n", "1"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["results"]["dim"], 20);
    assert_eq!(doc["results"]["weyl_check"], "pass");
}

#[test]
fn dim_handles_the_trivial_module() {
    let out = run(&["dim", "--family", "A", "--m", "0", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["results"]["dim"], 1);
}

#[test]
fn dim_reports_the_shifted_weight_of_the_c_corner() {
    let out = run(&["dim", "--family", "C", "--m", "0", "--n", "1"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["results"]["dim"], 4);
    assert_eq!(doc["results"]["t_scalar"], "9/2");
}

#[test]
fn dim_rejects_an_unknown_family() {
    let out = run(&["dim", "--family", "X", "--m", "0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let first = run(&["dim", "--family", "B", "--m", "2", "--n", "1"]);
    let second = run(&["dim", "--family", "B", "--m", "2", "--n", "1"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let first = run(&["singular", "--family", "C", "--m", "0", "--n", "1", "--degree", "3"]);
    let second = run(&["singular", "--family", "C", "--m", "0", "--n", "1", "--degree", "3"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn singular_finds_the_degree_five_line() {
    let out = run(&["singular", "--family", "C", "--m", "0", "--n", "1", "--degree", "5"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["results"]["count"], 1);
    assert!(doc["results"]["vectors"][0].as_str().unwrap().contains("w12 w13 w14"));
}

#[test]
fn singular_finds_nothing_on_a_generic_weight() {
    for degree in ["1", "2", "3"] {
        let out = run(&["singular", "--family", "C", "--m", "0", "--n", "0", "--degree", degree]);
        assert!(out.status.success());
        assert_eq!(json_of(&out)["results"]["count"], 0);
    }
}

#[test]
fn singular_rejects_the_trivial_degree() {
    let out = run(&["singular", "--family", "A", "--m", "0", "--n", "0", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homology_confirms_the_unit_at_the_origin() {
    let out = run(&[
        "homology", "--quadrant", "A", "--n1", "0", "--n2", "0", "--max-degree", "4",
    ]);
    assert!(out.status.success());
    let doc = json_of(&out);
    let table = doc["results"]["table"].as_array().unwrap();
    assert_eq!(table[0]["dim"], 1);
    assert!(table[1..].iter().all(|row| row["dim"] == 0));
}

#[test]
fn homology_vanishes_away_from_the_origin() {
    let out = run(&[
        "homology", "--quadrant", "A", "--n1", "2", "--n2", "1", "--max-degree", "4",
    ]);
    assert!(out.status.success());
    let doc = json_of(&out);
    let table = doc["results"]["table"].as_array().unwrap();
    assert!(table.iter().all(|row| row["dim"] == 0));
}

#[test]
fn homology_renders_the_block_table_as_csv() {
    let out = run(&["homology", "--quadrant", "GAab", "--a", "2", "--b", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n1,n2,dim,expected"));
    assert!(text.lines().any(|l| l == "0,1,1,1"));
}

#[test]
fn homology_requires_the_labels_of_its_quadrant() {
    let out = run(&["homology", "--quadrant", "GAab", "--n1", "0", "--n2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["homology", "--quadrant", "A", "--n1", "0", "--n2", "0", "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homology_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("ck6-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gacirc.json");
    let out = run(&[
        "homology", "--quadrant", "GAcirc", "--n1", "0", "--n2", "1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["results"]["dim"], 1);
    assert_eq!(doc["results"]["match"], true);
}

#[test]
fn spectral_reports_a_converging_sequence() {
    let out = run(&["spectral", "--a", "2", "--b", "2"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["results"]["converges"], true);
    assert_eq!(doc["results"]["zigzag_match"], true);
}

#[test]
fn verify_passes_the_torsion_suite() {
    let out = run(&["verify", "--suite", "torsion"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["results"]["failed"], 0);
}

#[test]
fn verify_rejects_an_unknown_suite() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_is_refused_outside_tables() {
    let out = run(&["verify", "--suite", "torsion", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}
