use std::process::{Command, Output};

use spinhom::bars::BarCoreResult;
use spinhom::classify::{IrredVerdict, Irreducibility, Reason, Status, Verdict};
use spinhom::dimensions::DimensionReport;
use spinhom::families::LemmaRow;
use spinhom::Partition;

fn spinhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinhom")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = spinhom(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Parses the JSON output into `T` and checks that re-serialising reproduces it.
fn round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(args: &[&str]) -> T {
    let text = stdout(args);
    let value: T = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}: {text}"));
    assert_eq!(serde_json::to_string(&value).unwrap(), text.trim());
    value
}

#[test]
fn regularisation_example() {
    assert_eq!(stdout(&["reg", "12,7,2", "--p", "3"]), "8,6,4,2,1\n");
    let r: Partition = round_trip(&["reg", "12,7,2", "--format", "json"]);
    assert_eq!(r, "8,6,4,2,1".parse().unwrap());
}

#[test]
fn classify_json() {
    let text = stdout(&["classify", "8,5,3,2,1", "--format", "json"]);
    assert_eq!(text.trim(), r#"{"status":"ProvenHomogeneous","reason":"H3_exceptional"}"#);
    let v: Verdict = round_trip(&["classify", "9,6,3", "--format", "json"]);
    assert_eq!(v.status, Status::ProvenNotHomogeneous);
    assert!(matches!(v.reason, Reason::DegreeWitness(_)));
    let v: Verdict = round_trip(&["classify", "10,7", "--format", "json"]);
    assert_eq!(v.reason, Reason::SpecialRectNot);
}

#[test]
fn conjectural_verdicts_need_opt_in() {
    assert_eq!(stdout(&["classify", "13,7", "--format", "json"]).trim(), "null");
    let v: Verdict = round_trip(&["classify", "13,7", "--format", "json", "--include-conjectural"]);
    assert_eq!(v.reason, Reason::CarterConjecture);
    let all = stdout(&["enumerate", "--n", "20", "--include-conjectural"]);
    let proven = stdout(&["enumerate", "--n", "20"]);
    assert!(all.contains("13,7\t") && !proven.contains("13,7\t"));
}

#[test]
fn irreducibility_contexts() {
    let v: Option<IrredVerdict> = round_trip(&["classify", "4,3,2", "--context", "an", "--format", "json"]);
    let v = v.unwrap();
    assert_eq!((v.labels[0].as_str(), v.irreducible), ("T^(4,3,2),±", Irreducibility::Irreducible));
    assert_eq!(stdout(&["classify", "4,3,2", "--context", "sn"]), "S^(4,3,2)\tReducible\n");
}

#[test]
fn other_subcommands() {
    let c: BarCoreResult = round_trip(&["core", "9,5,4,2", "--format", "json"]);
    assert_eq!(c.weight * 3 + c.core.size(), 20);
    let d: DimensionReport = round_trip(&["dim", "3,2,1", "--format", "json"]);
    assert_eq!(d.dim, 8u8.into());
    assert_eq!(stdout(&["witness", "9,6,3"]), "8,7,3\n");
    assert_eq!(stdout(&["cartan", "3"]), "7\n");
    assert_eq!(stdout(&["cartan", "3", "--char3"]), "42\n");
    assert_eq!(stdout(&["lr", "1", "1", "2"]), "1\n");
    assert_eq!(stdout(&["family", "tau", "--l", "3"]), "8,6,5,3,2\n");
    assert!(stdout(&["branch", "9,5,4,2", "--i", "0", "--dir", "up"]).contains("+0\t10,7,4,3,1"));
    assert!(stdout(&["branch", "5,4,3,2,1", "--i", "0"]).contains("signature\t-+-++"));
    assert!(stdout(&["sst", "3,2,1"]).starts_with("count\t2\n"));
    let b: Vec<Partition> = round_trip(&["block", "--core", "4,1", "--weight", "2", "--filter", "restricted", "--format", "json"]);
    assert_eq!(b.len(), 2);
}

#[test]
fn seeded_sampling_is_reproducible() {
    let a = stdout(&["enumerate", "--n", "18", "--sample", "4", "--seed", "11"]);
    assert_eq!(a, stdout(&["enumerate", "--n", "18", "--sample", "4", "--seed", "11"]));
    assert_eq!(a.lines().count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(spinhom(&["reg", "2,2"]).status.code(), Some(1));
    assert_eq!(spinhom(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(spinhom(&["reg", "5,x"]).status.code(), Some(1));
    assert_eq!(spinhom(&["cartan", "2,1", "--char3", "/nonexistent/decomp.txt"]).status.code(), Some(1));
    assert_eq!(spinhom(&["reg", "1", "--p", "9"]).status.code(), Some(1));
    assert_eq!(spinhom(&["--help"]).status.code(), Some(0));
}

#[test]
fn ladder_suite_passes_as_tsv() {
    let out = spinhom(&["verify", "--suite", "ladders", "--p", "3", "--max-n", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite\tlemma\tl\tlhs\trhs\tok\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with("\tok")));
    let rows: Vec<LemmaRow> = round_trip(&["verify", "--suite", "ladders", "--max-n", "12", "--format", "json"]);
    assert!(rows.iter().any(|r| r.lemma == "arladd1"));
}

#[test]
fn suite_output_is_thread_independent() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_spinhom"))
            .args(["verify", "--suite", "classification", "--max-n", "16"])
            .env("SPINHOM_THREADS", threads)
            .output()
            .unwrap();
        (out.status.code(), out.stdout)
    };
    let one = run("1");
    assert_eq!(one.0, Some(0));
    assert_eq!(one, run("4"));
}
