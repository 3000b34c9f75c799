//! Benchmark sources: arithmetic and threshold function generators, and
//! espresso-style PLA reading and writing.
//!
//! PLA input cubes range over `{0,1,-}` with `-` expanding to both values;
//! the leftmost column is variable 0. Output plane semantics follow the
//! `.type` directive: `fd` (the default) treats `1` as on, `-`/`~` as
//! don't-care, and `0` as no information; `fr` treats `0` as off and the
//! rest as don't-care; `f` treats anything but `1` as off. Minterms no cube
//! mentions are off (`fr`: don't-care).

use crate::bits::Bits;
use crate::boolfn::{default_names, Isf, PolyFunction, PolySpec, SingleSpec};
use crate::error::Error;
use crate::{Result, MAX_VARS};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum PlaType {
    F,
    Fd,
    Fr,
}

fn pla_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Pla { line, msg: msg.into() }
}

fn directive_count(args: &[&str], line: usize) -> Result<usize> {
    args.first()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| pla_err(line, "directive needs one numeric argument"))
}

/// Parses a PLA text into one function per output column.
pub fn read_pla(text: &str) -> Result<SingleSpec> {
    let mut ni: Option<usize> = None;
    let mut no: Option<usize> = None;
    let mut ilb: Option<Vec<String>> = None;
    let mut ob: Option<Vec<String>> = None;
    let mut ty = PlaType::Fd;
    let mut cubes: Vec<(String, String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('.') {
            let mut it = rest.split_whitespace();
            let key = it.next().unwrap_or("");
            let args: Vec<&str> = it.collect();
            match key {
                "i" => ni = Some(directive_count(&args, line)?),
                "o" => no = Some(directive_count(&args, line)?),
                "p" => {
                    directive_count(&args, line)?;
                }
                "ilb" => ilb = Some(args.iter().map(|s| s.to_string()).collect()),
                "ob" => ob = Some(args.iter().map(|s| s.to_string()).collect()),
                "type" => {
                    ty = match args.first().copied() {
                        Some("f") => PlaType::F,
                        Some("fd") => PlaType::Fd,
                        Some("fr") => PlaType::Fr,
                        _ => return Err(pla_err(line, "unsupported .type")),
                    }
                }
                "e" | "end" => break,
                other => return Err(pla_err(line, format!(".{other} is not a recognized directive"))),
            }
        } else {
            let (Some(i), Some(o)) = (ni, no) else {
                return Err(pla_err(line, ".i and .o must precede the cubes"));
            };
            let flat: String = body.split_whitespace().collect();
            if flat.len() != i + o {
                return Err(pla_err(
                    line,
                    format!("cube has {} columns, expected {}", flat.len(), i + o),
                ));
            }
            cubes.push((flat[..i].to_string(), flat[i..].to_string(), line));
        }
    }
    let ni = ni.ok_or_else(|| pla_err(0, "missing .i"))?;
    let no = no.ok_or_else(|| pla_err(0, "missing .o"))?;
    if ni > MAX_VARS {
        return Err(Error::TooManyVars { requested: ni, cap: MAX_VARS });
    }
    let var_names = match ilb {
        Some(names) if names.len() == ni => names,
        Some(names) => {
            return Err(pla_err(0, format!(".ilb names {} inputs, .i says {ni}", names.len())))
        }
        None => default_names(ni),
    };
    let out_names = match ob {
        Some(names) if names.len() == no => names,
        Some(names) => {
            return Err(pla_err(0, format!(".ob names {} outputs, .o says {no}", names.len())))
        }
        None => (0..no).map(|j| format!("f{j}")).collect(),
    };
    let mut on: Vec<Bits> = (0..no).map(|_| Bits::new(ni)).collect();
    let mut aux: Vec<Bits> = (0..no).map(|_| Bits::new(ni)).collect(); // dc (f/fd) or off (fr)
    for (ins, outs, line) in &cubes {
        let mut base = 0u32;
        let mut frees: Vec<usize> = Vec::new();
        for (j, ch) in ins.chars().enumerate() {
            match ch {
                '1' => base |= 1 << j,
                '0' => {}
                '-' => frees.push(j),
                other => return Err(pla_err(*line, format!("bad input character {other:?}"))),
            }
        }
        for k in 0..(1u32 << frees.len()) {
            let mut m = base;
            for (t, &j) in frees.iter().enumerate() {
                if (k >> t) & 1 == 1 {
                    m |= 1 << j;
                }
            }
            for (col, ch) in outs.chars().enumerate() {
                match (ty, ch) {
                    (_, '1') => {
                        if ty == PlaType::Fr && aux[col].get(m) {
                            return Err(pla_err(*line, format!("minterm {m} is both on and off in column {col}")));
                        }
                        on[col].set(m);
                    }
                    (PlaType::Fr, '0') => {
                        if on[col].get(m) {
                            return Err(pla_err(*line, format!("minterm {m} is both on and off in column {col}")));
                        }
                        aux[col].set(m);
                    }
                    (PlaType::Fd, '-' | '~') => aux[col].set(m),
                    (_, '0' | '-' | '~') => {}
                    (_, other) => {
                        return Err(pla_err(*line, format!("bad output character {other:?}")))
                    }
                }
            }
        }
    }
    let mut outputs = Vec::with_capacity(no);
    for (col, name) in out_names.into_iter().enumerate() {
        let f = match ty {
            PlaType::Fr => Isf::from_bits(var_names.clone(), on[col].clone(), aux[col].clone()),
            PlaType::F | PlaType::Fd => {
                // Explicit on-set beats a don't-care mark from another cube.
                let mut dc = aux[col].clone();
                dc.subtract(&on[col]);
                let mut care = on[col].clone();
                care.union_with(&dc);
                Isf::from_bits(var_names.clone(), on[col].clone(), care.complement())
            }
        };
        outputs.push((name, f));
    }
    SingleSpec::new(var_names, outputs)
}

/// Serializes a specification as a PLA with one cube per minterm that any
/// output cares about (`1` on, `-` don't-care, `0` otherwise). Reading the
/// result back yields the same on/off/dc sets column-wise.
pub fn write_pla(spec: &SingleSpec) -> String {
    let n = spec.num_vars();
    let mut rows: Vec<String> = Vec::new();
    for m in 0..(1u32 << n) {
        let mut plane = String::with_capacity(spec.outputs.len());
        let mut interesting = false;
        for (_, f) in &spec.outputs {
            plane.push(if f.is_on(m) {
                interesting = true;
                '1'
            } else if f.is_dc(m) {
                interesting = true;
                '-'
            } else {
                '0'
            });
        }
        if interesting {
            let cube: String = (0..n).map(|j| if (m >> j) & 1 == 1 { '1' } else { '0' }).collect();
            rows.push(format!("{cube} {plane}"));
        }
    }
    let out_names: Vec<&str> = spec.outputs.iter().map(|(name, _)| name.as_str()).collect();
    let mut text = String::new();
    text.push_str(&format!(".i {}\n.o {}\n", n, spec.outputs.len()));
    text.push_str(&format!(".ilb {}\n", spec.var_names.join(" ")));
    text.push_str(&format!(".ob {}\n", out_names.join(" ")));
    text.push_str(&format!(".p {}\n", rows.len()));
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    text.push_str(".e\n");
    text
}

fn check_vars(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::TooManyVars { requested: n, cap: MAX_VARS });
    }
    Ok(())
}

/// Unsigned multiplier: inputs `a0..` and `b0..` (LSB first), one output
/// per product bit, least significant first.
pub fn gen_multiplier(a_bits: usize, b_bits: usize) -> Result<SingleSpec> {
    if a_bits == 0 || b_bits == 0 {
        return Err(Error::MalformedSpec("multiplier operands need at least one bit".into()));
    }
    let n = a_bits + b_bits;
    check_vars(n)?;
    let mut names: Vec<String> = (0..a_bits).map(|j| format!("a{j}")).collect();
    names.extend((0..b_bits).map(|j| format!("b{j}")));
    let outputs = (0..n)
        .map(|k| {
            let f = Isf::fully_specified(names.clone(), |m| {
                let a = (m & ((1u32 << a_bits) - 1)) as u64;
                let b = (m >> a_bits) as u64;
                (a * b) >> k & 1 == 1
            })
            .expect("within the variable cap");
            (format!("p{k}"), f)
        })
        .collect();
    Ok(SingleSpec { var_names: names, outputs })
}

/// Sorting network outputs in descending order: output `j` is 1 iff at
/// least `j + 1` inputs are 1.
pub fn gen_sorting_net(k: usize) -> Result<SingleSpec> {
    if k == 0 {
        return Err(Error::MalformedSpec("sorting network needs at least one input".into()));
    }
    check_vars(k)?;
    let names = default_names(k);
    let outputs = (0..k)
        .map(|j| {
            let f = Isf::fully_specified(names.clone(), |m| m.count_ones() as usize >= j + 1)
                .expect("within the variable cap");
            (format!("s{j}"), f)
        })
        .collect();
    Ok(SingleSpec { var_names: names, outputs })
}

/// Odd parity of all inputs.
pub fn gen_parity(n: usize) -> Result<SingleSpec> {
    check_vars(n)?;
    let names = default_names(n);
    let f = Isf::fully_specified(names.clone(), |m| m.count_ones() % 2 == 1)
        .expect("within the variable cap");
    Ok(SingleSpec { var_names: names, outputs: vec![("f".into(), f)] })
}

/// Strict majority: 1 iff more than half the inputs are 1 (for even `n`,
/// at least `n/2 + 1`).
pub fn gen_majority(n: usize) -> Result<SingleSpec> {
    check_vars(n)?;
    let names = default_names(n);
    let f = Isf::fully_specified(names.clone(), |m| m.count_ones() as usize > n / 2)
        .expect("within the variable cap");
    Ok(SingleSpec { var_names: names, outputs: vec![("f".into(), f)] })
}

/// Pairs two equal-arity specifications column by column into a two-mode
/// specification. Variable and output names follow mode 1.
pub fn make_poly_spec(mode1: &SingleSpec, mode2: &SingleSpec) -> Result<PolySpec> {
    if mode1.num_vars() != mode2.num_vars() || mode1.outputs.len() != mode2.outputs.len() {
        return Err(Error::ModeArityMismatch {
            inputs1: mode1.num_vars(),
            outputs1: mode1.outputs.len(),
            inputs2: mode2.num_vars(),
            outputs2: mode2.outputs.len(),
        });
    }
    let mut outputs = Vec::with_capacity(mode1.outputs.len());
    for ((name, f1), (_, f2)) in mode1.outputs.iter().zip(&mode2.outputs) {
        let renamed = f2.renamed(mode1.var_names.clone());
        outputs.push((name.clone(), PolyFunction::new(f1.clone(), renamed)?));
    }
    PolySpec::new(mode1.var_names.clone(), outputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(text: &str) -> Isf {
        let spec = read_pla(text).unwrap();
        assert_eq!(spec.outputs.len(), 1);
        spec.outputs[0].1.clone()
    }

    #[test]
    fn minimal_and_function() {
        let f = single(".i 2\n.o 1\n11 1\n.e\n");
        assert!(f.is_on(3));
        for m in 0..3 {
            assert!(f.is_off(m), "minterm {m}");
        }
    }

    #[test]
    fn dash_input_expands_both_branches() {
        let f = single(".i 2\n.o 1\n1- 1\n");
        assert!(f.is_on(1) && f.is_on(3));
        assert!(f.is_off(0) && f.is_off(2));
    }

    #[test]
    fn output_dashes_and_tildes_mark_dont_cares() {
        let f = single(".i 2\n.o 1\n00 1\n01 -\n10 ~\n");
        assert!(f.is_on(0));
        assert!(f.is_dc(1) && f.is_dc(2));
        assert!(f.is_off(3));
    }

    #[test]
    fn explicit_on_beats_a_dont_care_cube() {
        // `-1` frees the leftmost column (variable 0): minterms 2 and 3.
        let f = single(".i 2\n.o 1\n-1 -\n11 1\n");
        assert!(f.is_on(3));
        assert!(f.is_dc(2));
        assert!(f.is_off(0) && f.is_off(1));
    }

    #[test]
    fn fr_type_reads_offsets_and_leaves_the_rest_open() {
        let f = single(".i 2\n.o 1\n.type fr\n11 1\n00 0\n");
        assert!(f.is_on(3));
        assert!(f.is_off(0));
        assert!(f.is_dc(1) && f.is_dc(2));
    }

    #[test]
    fn fr_conflict_is_an_error() {
        let err = read_pla(".i 1\n.o 1\n.type fr\n1 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Pla { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn f_type_ignores_dashes_in_the_output_plane() {
        let f = single(".i 1\n.o 1\n.type f\n1 1\n0 -\n");
        assert!(f.is_on(1));
        assert!(f.is_off(0));
    }

    #[test]
    fn header_and_width_errors() {
        assert!(matches!(read_pla("11 1\n"), Err(Error::Pla { line: 1, .. })));
        assert!(matches!(read_pla(".i 2\n.o 1\n111 1\n"), Err(Error::Pla { line: 3, .. })));
        assert!(matches!(read_pla(".o 1\n1 1\n"), Err(Error::Pla { line: 2, .. })));
        assert!(matches!(read_pla(".i 1\n.o 1\n.phase 1\n"), Err(Error::Pla { line: 3, .. })));
        assert!(matches!(read_pla(".i 1\n.o 1\n2 1\n"), Err(Error::Pla { line: 3, .. })));
    }

    #[test]
    fn comments_and_labels_are_honored() {
        let spec = read_pla("# adder slice\n.i 2\n.ilb c a\n.o 2 # two columns\n.ob s t\n11 10\n.e\n")
            .unwrap();
        assert_eq!(spec.var_names, vec!["c", "a"]);
        assert_eq!(spec.outputs[0].0, "s");
        assert_eq!(spec.outputs[1].0, "t");
        assert!(spec.outputs[0].1.is_on(3));
        assert!(spec.outputs[1].1.is_off(3));
    }

    #[test]
    fn cubes_after_the_terminator_are_ignored() {
        let f = single(".i 1\n.o 1\n1 1\n.e\n0 1\n");
        assert!(f.is_off(0));
    }

    #[test]
    fn round_trip_preserves_every_column() {
        let names = default_names(3);
        let mut a = Isf::new(names.clone()).unwrap();
        let mut b = Isf::new(names.clone()).unwrap();
        for m in 0..8 {
            match m % 3 {
                0 => a.set_on(m),
                1 => a.set_off(m),
                _ => {}
            }
            if m % 2 == 0 {
                b.set_on(m);
            } else {
                b.set_off(m);
            }
        }
        let spec =
            SingleSpec::new(names, vec![("u".into(), a), ("v".into(), b)]).unwrap();
        let back = read_pla(&write_pla(&spec)).unwrap();
        assert_eq!(back.var_names, spec.var_names);
        for ((name, orig), (back_name, got)) in spec.outputs.iter().zip(&back.outputs) {
            assert_eq!(name, back_name);
            for m in 0..8 {
                assert_eq!(orig.is_on(m), got.is_on(m), "{name} on {m}");
                assert_eq!(orig.is_off(m), got.is_off(m), "{name} off {m}");
            }
        }
    }

    #[test]
    fn multiplier_product_bits_are_lsb_first() {
        let spec = gen_multiplier(2, 3).unwrap();
        assert_eq!(spec.num_vars(), 5);
        assert_eq!(spec.outputs.len(), 5);
        // 3 * 5 = 15: a = 11, b = 101, product 01111 LSB first.
        let m = 0b10111;
        let expect = [true, true, true, true, false];
        for (k, (_, f)) in spec.outputs.iter().enumerate() {
            assert_eq!(f.is_on(m), expect[k], "bit {k}");
        }
    }

    #[test]
    fn multiplier_matches_arithmetic_exhaustively() {
        let spec = gen_multiplier(3, 3).unwrap();
        for m in 0..(1u32 << 6) {
            let (a, b) = (m & 7, m >> 3);
            for (k, (_, f)) in spec.outputs.iter().enumerate() {
                assert_eq!(f.is_on(m), (a * b) >> k & 1 == 1);
            }
        }
    }

    #[test]
    fn sorting_outputs_are_descending_thresholds() {
        let spec = gen_sorting_net(3).unwrap();
        let m = 0b101;
        let expect = [true, true, false];
        for (j, (_, f)) in spec.outputs.iter().enumerate() {
            assert_eq!(f.is_on(m), expect[j], "threshold {j}");
        }
        for m in 0..8u32 {
            for (j, (_, f)) in spec.outputs.iter().enumerate() {
                assert_eq!(f.is_on(m), m.count_ones() as usize >= j + 1);
            }
        }
    }

    #[test]
    fn parity_and_majority_sample_points() {
        let parity = gen_parity(4).unwrap().outputs[0].1.clone();
        assert!(parity.is_off(0b0101));
        assert!(parity.is_on(0b0111));
        let majority = gen_majority(4).unwrap().outputs[0].1.clone();
        assert!(majority.is_on(0b0111));
        assert!(majority.is_off(0b0101), "even majority is strict");
    }

    #[test]
    fn pairing_keeps_columns_aligned() {
        let spec = make_poly_spec(&gen_parity(3).unwrap(), &gen_majority(3).unwrap()).unwrap();
        assert_eq!(spec.outputs.len(), 1);
        let pf = &spec.outputs[0].1;
        assert!(pf.mode1.is_on(0b001));
        assert!(pf.mode2.is_off(0b001));
        let wide = make_poly_spec(&gen_multiplier(4, 4).unwrap(), &gen_sorting_net(8).unwrap())
            .unwrap();
        assert_eq!(wide.outputs.len(), 8);
        assert_eq!(wide.num_vars(), 8);
    }

    #[test]
    fn pairing_rejects_mismatched_arity() {
        let err = make_poly_spec(&gen_parity(3).unwrap(), &gen_parity(4).unwrap()).unwrap_err();
        assert!(matches!(err, Error::ModeArityMismatch { inputs1: 3, inputs2: 4, .. }));
    }
}
