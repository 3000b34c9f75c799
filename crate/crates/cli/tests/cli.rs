//! End-to-end checks of the binary: exit codes, report formats, file
//! outputs, and determinism of the compare report.

use std::path::PathBuf;
use std::process::{Command, Output};

use polysynth::{gen_parity, read_pla, Netlist};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polysynth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polysynth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn synth_reports_stats_and_writes_verified_json() {
    let json = tmp("pm4.json");
    let dot = tmp("pm4.dot");
    let out = run(&[
        "synth", "--method", "poly-bidec", "--gen1", "parity:4", "--gen2", "majority:4",
        "--out", json.to_str().unwrap(), "--dot", dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let line = stdout(&out);
    assert!(line.starts_with("total=") && line.contains(" poly=") && line.contains(" percent="), "{line}");

    let nl = Netlist::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(nl.inputs.len(), 4);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let ok = run(&[
        "verify", "--netlist", json.to_str().unwrap(),
        "--gen1", "parity:4", "--gen2", "majority:4",
    ]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("exhaustive"));
}

#[test]
fn verify_prints_a_counterexample_and_exits_one() {
    // A parity-only netlist cannot satisfy a majority mode-2 specification.
    let json = tmp("parity-only.json");
    let out = run(&[
        "synth", "--method", "poly-bidec", "--gen1", "parity:3", "--gen2", "parity:3",
        "--out", json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bad = run(&[
        "verify", "--netlist", json.to_str().unwrap(),
        "--gen1", "parity:3", "--gen2", "majority:3",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("counterexample"), "{}", stdout(&bad));
}

#[test]
fn bench_output_reparses_to_the_generator() {
    let out = run(&["bench", "parity:7"]);
    assert!(out.status.success());
    let spec = read_pla(&stdout(&out)).unwrap();
    let want = gen_parity(7).unwrap();
    assert_eq!(spec.var_names, want.var_names);
    for ((_, a), (_, b)) in spec.outputs.iter().zip(&want.outputs) {
        for m in 0..(1u32 << 7) {
            assert_eq!(a.is_on(m), b.is_on(m));
            assert_eq!(a.is_off(m), b.is_off(m));
        }
    }
}

#[test]
fn spec_errors_exit_two() {
    for args in [
        vec!["synth", "--method", "poly-bidec", "--gen1", "parity:4"],
        vec!["synth", "--method", "poly-bidec", "--gen1", "blorp:4", "--gen2", "parity:4"],
        vec!["synth", "--method", "poly-bidec", "--pla1", "/no/such.pla", "--gen2", "parity:4"],
        vec!["synth", "--method", "poly-bidec", "--gen1", "parity:4", "--gen2", "parity:5"],
        vec!["compare", "--entry", "only-two-fields,parity:3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn resource_caps_exit_three() {
    let out = run(&[
        "synth", "--method", "poly-bidec", "--gen1", "mul:3x3", "--gen2", "sort:6",
        "--max-cells", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_rows_keep_suite_order_and_are_deterministic() {
    let args = [
        "compare",
        "--entry", "b,parity:4,majority:4",
        "--entry", "a,parity:3,majority:3",
        "--mask-timing",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("benchmark,method,"));
    assert!(lines[1].starts_with("b,poly-bidec,"));
    assert!(lines[2].starts_with("b,xform-bidec,"));
    assert!(lines[3].starts_with("a,poly-bidec,"));
    assert!(lines[4].starts_with("a,xform-bidec,"));

    let second = bin().args(args).env("POLYSYNTH_THREADS", "1").output().unwrap();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn compare_writes_reference_columns_and_netlists() {
    let dir = tmp("netlists");
    let csv = tmp("table.csv");
    let out = run(&[
        "compare", "--entry", "2x3mul/5sort,mul:2x3,sort:5",
        "--out", csv.to_str().unwrap(),
        "--netlist-dir", dir.to_str().unwrap(),
        "--mask-timing",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let poly_row = text.lines().nth(1).unwrap();
    assert!(poly_row.ends_with(",ok,49,8.6"), "{poly_row}");
    let xform_row = text.lines().nth(2).unwrap();
    assert!(xform_row.ends_with(",ok,65,20.0"), "{xform_row}");
    for name in ["2x3mul_5sort-poly-bidec.json", "2x3mul_5sort-xform-bidec.json"] {
        let nl = Netlist::from_json(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap();
        assert_eq!(nl.inputs.len(), 5, "{name}");
    }
}

#[test]
fn distinct_gate_seeds_are_honored() {
    let out = run(&[
        "synth", "--method", "poly-bidec", "--gen1", "parity:4", "--gen2", "majority:4",
        "--g2-distinct",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("total="));
}
