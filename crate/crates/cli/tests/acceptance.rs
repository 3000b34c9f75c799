//! Acceptance gate: nine release criteria, one test (and one pass/fail
//! line) each. Tolerances and budgets are pinned as constants next to the
//! criterion they guard.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use polysynth::bidecomp::weak_decompose;
use polysynth::boolfn::{merge_modes, split_modes, PolyFunction, PolySpec, SingleSpec, VarSet};
use polysynth::netlist::GateKind;
use polysynth::testing::{all_partitions, random_isf, random_poly_function, strong_oracle};
use polysynth::{
    bidecomp, gen_majority, gen_multiplier, gen_parity, gen_sorting_net, make_poly_spec,
    poly_design, poly_design_spec, read_pla, transform_design, transform_design_spec, verify,
    write_pla, SynthOptions, VerifyOptions,
};

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const PER_BENCHMARK_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const GATE_COUNT_FACTOR: f64 = 2.0;

/// Mode-1/mode-2 pairs every end-to-end criterion runs over.
fn benchmark_pairs() -> Vec<(&'static str, SingleSpec, SingleSpec)> {
    vec![
        ("parity4/majority4", gen_parity(4).unwrap(), gen_majority(4).unwrap()),
        ("parity7/majority7", gen_parity(7).unwrap(), gen_majority(7).unwrap()),
        ("parity9/majority9", gen_parity(9).unwrap(), gen_majority(9).unwrap()),
        ("2x3mul/5sort", gen_multiplier(2, 3).unwrap(), gen_sorting_net(5).unwrap()),
        ("3x3mul/6sort", gen_multiplier(3, 3).unwrap(), gen_sorting_net(6).unwrap()),
        ("4x4mul/8sort", gen_multiplier(4, 4).unwrap(), gen_sorting_net(8).unwrap()),
    ]
}

fn parity_majority_4() -> PolyFunction {
    let spec = make_poly_spec(&gen_parity(4).unwrap(), &gen_majority(4).unwrap()).unwrap();
    spec.outputs[0].1.clone()
}

/// The published 32-entry merged table: rows label (x0, x1, x2) and columns
/// label (x3, x4), both in Gray order; our minterm packs x1..x4 into bits
/// 0..3 and the mode bit x0 into bit 4.
const MERGED_ROWS: [(u32, u32, u32); 8] = [
    (0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0),
    (1, 0, 0), (1, 0, 1), (1, 1, 1), (1, 1, 0),
];
const MERGED_COLS: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 1), (1, 0)];
const MERGED_VALUES: [[u8; 4]; 8] = [
    [0, 1, 0, 1],
    [1, 0, 1, 0],
    [0, 1, 0, 1],
    [1, 0, 1, 0],
    [0, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 1, 1, 1],
    [0, 0, 1, 0],
];

fn merged_minterm(x0: u32, x1: u32, x2: u32, x3: u32, x4: u32) -> u32 {
    x1 | x2 << 1 | x3 << 2 | x4 << 3 | x0 << 4
}

#[test]
fn criterion_1_golden_merge_and_split() {
    let started = Instant::now();
    let pf = parity_majority_4();
    let merged = merge_modes(&pf).unwrap();
    assert_eq!(merged.num_vars(), 5);
    for (row, &(x0, x1, x2)) in MERGED_ROWS.iter().enumerate() {
        for (col, &(x3, x4)) in MERGED_COLS.iter().enumerate() {
            let m = merged_minterm(x0, x1, x2, x3, x4);
            let want = MERGED_VALUES[row][col] == 1;
            assert_eq!(merged.is_on(m), want, "merged on-value at minterm {m}");
            assert_eq!(merged.is_off(m), !want, "merged off-value at minterm {m}");
        }
    }

    // Weak OR split on b = {x4}: the published tables pin the remainder to
    // x0*x1*x2*x3 and give the quotient don't-cares at exactly the two
    // starred cells (x0,x1,x2,x3,x4) = (1,1,1,1,0) and (1,1,1,1,1).
    let w = weak_decompose(&merged, GateKind::Or, VarSet::single(3)).expect("weak OR split");
    assert_eq!(w.r.num_vars(), 4);
    assert_eq!(w.r.care_count(), 16, "remainder is fully specified");
    for m in 0..16u32 {
        assert_eq!(w.r.is_on(m), m == 0b1111, "remainder at {m}");
    }
    let starred = [merged_minterm(1, 1, 1, 1, 0), merged_minterm(1, 1, 1, 1, 1)];
    assert_eq!(w.h.care_count(), 30);
    for &m in &starred {
        assert!(w.h.is_dc(m), "expected a don't-care at {m}");
    }
    for m in 0..32u32 {
        if starred.contains(&m) {
            continue;
        }
        assert_eq!(w.h.is_on(m), merged.is_on(m), "quotient at {m}");
    }

    // Splitting the children reproduces the published mode pairs: the
    // remainder splits to (constant 0, x1*x2*x3); the quotient splits to
    // (exact 4-bit parity, 4-bit majority with don't-cares at 7 and 15).
    let r_pair = split_modes(&w.r, 3);
    assert_eq!(r_pair.mode1.on_count(), 0);
    assert_eq!(r_pair.mode1.care_count(), 8);
    for m in 0..8u32 {
        assert_eq!(r_pair.mode2.is_on(m), m == 0b111);
    }
    let h_pair = split_modes(&w.h, 4);
    assert_eq!(h_pair.mode1.care_count(), 16);
    for m in 0..16u32 {
        assert_eq!(h_pair.mode1.is_on(m), m.count_ones() % 2 == 1, "parity side at {m}");
    }
    for m in 0..16u32 {
        if m == 7 || m == 15 {
            assert!(h_pair.mode2.is_dc(m), "majority side don't-care at {m}");
        } else {
            assert_eq!(h_pair.mode2.is_on(m), m.count_ones() > 2, "majority side at {m}");
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed < GOLDEN_BUDGET, "golden check took {elapsed:?}");
    println!("criterion 1 PASS: merged and split tables match the published figure ({elapsed:?})");
}

fn spec_of(first: &SingleSpec, second: &SingleSpec) -> PolySpec {
    make_poly_spec(first, second).unwrap()
}

#[test]
fn criterion_2_both_methods_verify_exhaustively() {
    let opts = SynthOptions::default();
    let vopts = VerifyOptions::default();
    for (label, first, second) in benchmark_pairs() {
        let spec = spec_of(&first, &second);
        for method in ["poly-bidec", "xform-bidec"] {
            let started = Instant::now();
            let nl = match method {
                "poly-bidec" => poly_design_spec(&spec, &opts).unwrap(),
                _ => transform_design_spec(&spec, &opts).unwrap().0,
            };
            let report = verify(&nl, &spec, &vopts).unwrap();
            let elapsed = started.elapsed();
            assert!(report.exhaustive, "{label} {method} must verify exhaustively");
            assert!(
                report.ok && report.mismatches.is_empty(),
                "{label} {method}: {:?}",
                report.mismatches
            );
            assert!(elapsed < PER_BENCHMARK_BUDGET, "{label} {method} took {elapsed:?}");
        }
    }
    println!("criterion 2 PASS: 6 benchmarks x 2 methods verified exhaustively, zero counterexamples");
}

#[test]
fn criterion_3_gate_counts_near_published_totals() {
    let opts = SynthOptions::default();
    let cases = [
        ("2x3mul/5sort", gen_multiplier(2, 3), gen_sorting_net(5), 49, 65),
        ("3x3mul/6sort", gen_multiplier(3, 3), gen_sorting_net(6), 145, 170),
        ("4x4mul/8sort", gen_multiplier(4, 4), gen_sorting_net(8), 570, 630),
    ];
    for (label, first, second, poly_ref, xform_ref) in cases {
        let spec = spec_of(&first.unwrap(), &second.unwrap());
        let poly_total = poly_design_spec(&spec, &opts).unwrap().stats().total as f64;
        let xform_total = transform_design_spec(&spec, &opts).unwrap().0.stats().total as f64;
        for (method, total, reference) in
            [("poly-bidec", poly_total, poly_ref as f64), ("xform-bidec", xform_total, xform_ref as f64)]
        {
            let ratio = total / reference;
            assert!(
                (1.0 / GATE_COUNT_FACTOR..=GATE_COUNT_FACTOR).contains(&ratio),
                "{label} {method}: {total} gates vs published {reference} (ratio {ratio:.2})"
            );
        }
    }
    println!("criterion 3 PASS: multiplier totals within {GATE_COUNT_FACTOR}x of published values");
}

#[test]
fn criterion_4_polymorphic_share_trend() {
    let opts = SynthOptions::default();
    let pairs: Vec<(&str, SingleSpec, SingleSpec)> = vec![
        ("2x3mul/5sort", gen_multiplier(2, 3).unwrap(), gen_sorting_net(5).unwrap()),
        ("3x3mul/6sort", gen_multiplier(3, 3).unwrap(), gen_sorting_net(6).unwrap()),
        ("4x4mul/8sort", gen_multiplier(4, 4).unwrap(), gen_sorting_net(8).unwrap()),
        ("parity10/majority10", gen_parity(10).unwrap(), gen_majority(10).unwrap()),
        ("4x4mul/sorting-net8", gen_multiplier(4, 4).unwrap(), gen_sorting_net(8).unwrap()),
    ];
    let mut wins = 0;
    let mut detail = String::new();
    for (label, first, second) in &pairs {
        let spec = spec_of(first, second);
        let poly = poly_design_spec(&spec, &opts).unwrap().stats();
        let xform = transform_design_spec(&spec, &opts).unwrap().0.stats();
        if poly.percent() > xform.percent() {
            wins += 1;
        }
        detail.push_str(&format!(
            " {label}: {:.1}% vs {:.1}%;",
            poly.percent(),
            xform.percent()
        ));
    }
    assert!(wins >= 4, "poly-bidec leads on only {wins}/5 entries:{detail}");
    println!("criterion 4 PASS: poly-bidec has the higher polymorphic share on {wins}/5 trend entries");
}

#[test]
fn criterion_5_strong_check_matches_brute_force() {
    let started = Instant::now();
    let parts = all_partitions(4);
    assert_eq!(parts.len(), 50);
    let mut compared = 0u64;
    for seed in 0..500u64 {
        let f = random_isf(4, seed);
        for gate in GateKind::ALL {
            for part in &parts {
                let fast = bidecomp::check_strong(&f, gate, part).is_some();
                let slow = strong_oracle(&f, gate, part);
                assert_eq!(fast, slow, "seed {seed} gate {gate:?} partition {part:?}");
                compared += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(compared, 500 * 3 * 50);
    assert!(elapsed < ORACLE_BUDGET, "oracle sweep took {elapsed:?}");
    println!("criterion 5 PASS: {compared} verdicts agree with the brute-force oracle ({elapsed:?})");
}

#[test]
fn criterion_6_random_functions_terminate_and_verify() {
    let vopts = VerifyOptions::default();
    for seed in 0..1000u64 {
        let n = 3 + (seed % 4) as usize;
        let watchdog = SynthOptions {
            max_steps: 4 * n * (1 << n),
            ..SynthOptions::default()
        };
        let pf = random_poly_function(n, seed);
        let spec = PolySpec::new(
            pf.mode1.var_names().to_vec(),
            vec![("f".to_string(), pf.clone())],
        )
        .unwrap();
        let poly_nl = poly_design(&pf, &watchdog)
            .unwrap_or_else(|e| panic!("seed {seed} poly-bidec: {e}"));
        let report = verify(&poly_nl, &spec, &vopts).unwrap();
        assert!(report.ok && report.exhaustive, "seed {seed} poly-bidec: {:?}", report.mismatches);
        let (xform_nl, _) = transform_design(&pf, &watchdog)
            .unwrap_or_else(|e| panic!("seed {seed} xform-bidec: {e}"));
        let report = verify(&xform_nl, &spec, &vopts).unwrap();
        assert!(report.ok && report.exhaustive, "seed {seed} xform-bidec: {:?}", report.mismatches);
    }
    println!("criterion 6 PASS: 1000 random functions synthesized under the watchdog and verified, both methods");
}

#[test]
fn criterion_7_transformation_rules_stay_local() {
    let opts = SynthOptions::default();
    let mut checks = 0usize;
    for (label, first, second) in benchmark_pairs() {
        let spec = spec_of(&first, &second);
        let (_, report) = transform_design_spec(&spec, &opts).unwrap();
        assert_eq!(
            report.locality_violations, 0,
            "{label}: {} locality violations",
            report.locality_violations
        );
        checks += report.locality_checks;
    }
    assert!(checks > 0, "no rule applications were checked");
    println!("criterion 7 PASS: {checks} logged rule applications, zero locality violations");
}

#[test]
fn criterion_8_vendored_pla_files_round_trip() {
    for name in ["5xp1", "z5xp1", "sao2", "f51m"] {
        let path = format!("{}/../core/tests/data/{name}.pla", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap();
        let first = read_pla(&text).unwrap();
        let again = read_pla(&write_pla(&first)).unwrap();
        assert_eq!(first.var_names, again.var_names, "{name}");
        assert_eq!(first.outputs.len(), again.outputs.len(), "{name}");
        for ((col, a), (_, b)) in first.outputs.iter().zip(&again.outputs) {
            for m in 0..(1u32 << first.num_vars()) {
                assert_eq!(a.is_on(m), b.is_on(m), "{name}.{col} on at {m}");
                assert_eq!(a.is_off(m), b.is_off(m), "{name}.{col} off at {m}");
            }
        }
    }
    println!("criterion 8 PASS: 4 vendored PLA files read/write/read care-equal");
}

#[test]
fn criterion_9_compare_is_byte_deterministic() {
    // Timing is the one nondeterministic column, so the determinism gate
    // runs with --mask-timing; everything else must match byte for byte.
    let base = std::env::temp_dir().join(format!("polysynth-acceptance-{}", std::process::id()));
    let run = |tag: &str, threads: Option<&str>| -> (Vec<u8>, Vec<(String, Vec<u8>)>) {
        let csv: PathBuf = base.join(format!("{tag}.csv"));
        let dir = base.join(tag);
        std::fs::create_dir_all(&dir).unwrap();
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_polysynth"));
        cmd.args([
            "compare",
            "--entry", "parity4/majority4,parity:4,majority:4",
            "--entry", "2x3mul/5sort,mul:2x3,sort:5",
            "--seed", "7",
            "--mask-timing",
            "--out", csv.to_str().unwrap(),
            "--netlist-dir", dir.to_str().unwrap(),
        ]);
        if let Some(t) = threads {
            cmd.env("POLYSYNTH_THREADS", t);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
            })
            .collect();
        files.sort();
        (std::fs::read(&csv).unwrap(), files)
    };
    let (csv1, files1) = run("first", None);
    let (csv2, files2) = run("second", None);
    let (csv3, files3) = run("third", Some("1"));
    assert_eq!(csv1, csv2, "CSV bytes differ between identical runs");
    assert_eq!(csv1, csv3, "CSV bytes differ under a capped thread pool");
    assert_eq!(files1.len(), 4);
    assert_eq!(files1, files2, "netlist JSON bytes differ between identical runs");
    assert_eq!(files1, files3, "netlist JSON bytes differ under a capped thread pool");
    println!("criterion 9 PASS: repeated compare runs are byte-identical (timing masked)");
}
