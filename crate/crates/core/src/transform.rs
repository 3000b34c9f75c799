//! Post-synthesis elimination of the mode variable.
//!
//! [`transform_design`] folds the mode signal into the specification as an
//! extra input, synthesizes an ordinary single-mode circuit, then walks the
//! netlist replacing every piece of logic that reads the mode literal with
//! a polymorphic cell computing the right function in each mode. Two
//! replacement rules exist: a cone rule that swallows a whole region
//! reading at most three variables, and a local rule that rewrites one gate
//! pin. Every application is checked for local mode-by-mode equivalence and
//! tallied in a [`TransformReport`].

use std::collections::{BTreeMap, BTreeSet};

use crate::bidecomp::{design, synth_isf, SynthCtx};
use crate::boolfn::{merge_modes, Isf, PolyFunction, PolySpec, VarSet};
use crate::netlist::{cleanup, Cell, CellKind, Netlist};
use crate::polybidecomp::poly_leaf_synth;
use crate::{Result, SynthOptions};

/// Tally of replacement rule applications and their local equivalence
/// checks. `locality_violations` stays zero unless a rule is buggy; the
/// checks also fire `debug_assert`s.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct TransformReport {
    /// Cone replacements, including outputs rewired from the mode literal
    /// to a polymorphic constant.
    pub rule31: usize,
    /// Single-cell pin rewrites.
    pub rule32: usize,
    /// Rule applications checked for local mode-by-mode equivalence.
    pub locality_checks: usize,
    /// Checks that found a disagreement.
    pub locality_violations: usize,
}

/// The backward closure of a cell: the cell itself, everything feeding it
/// transitively, and the set of input variables influencing it.
#[derive(Clone, Debug)]
pub struct Cone {
    pub apex: usize,
    pub members: BTreeSet<usize>,
    pub var_g: VarSet,
}

pub fn cone_of(nl: &Netlist, apex: usize) -> Cone {
    let mut members = BTreeSet::new();
    let mut stack = vec![apex];
    while let Some(id) = stack.pop() {
        if members.insert(id) {
            stack.extend(nl.cells[id].fanin.iter().copied());
        }
    }
    let mut var_g = VarSet::empty();
    for &id in &members {
        if let CellKind::Input(i) = nl.cells[id].kind {
            var_g.insert(i);
        }
    }
    Cone { apex, members, var_g }
}

fn eval_kind(kind: CellKind, ins: &[bool], mode2: bool) -> bool {
    match kind {
        CellKind::Input(_) => unreachable!("inputs are looked up, not evaluated"),
        CellKind::Const(b) => b,
        CellKind::Not => !ins[0],
        CellKind::Poly1(u1, u2) => if mode2 { u2 } else { u1 }.apply(ins[0]),
        CellKind::PolyConst(b1, b2) => {
            if mode2 {
                b2
            } else {
                b1
            }
        }
        kind => {
            let (g1, g2) = kind.gate_pair().expect("binary kind");
            if mode2 { g2 } else { g1 }.apply(ins[0], ins[1])
        }
    }
}

/// Evaluates the cone's apex under one input assignment (keyed by input
/// variable index) in one mode. Members iterate in id order, which is
/// topological.
fn eval_cone(nl: &Netlist, cone: &Cone, assign: &BTreeMap<usize, bool>, mode2: bool) -> bool {
    let mut vals: BTreeMap<usize, bool> = BTreeMap::new();
    for &id in &cone.members {
        let v = match nl.cells[id].kind {
            CellKind::Input(i) => assign[&i],
            kind => {
                let ins: Vec<bool> = nl.cells[id].fanin.iter().map(|f| vals[f]).collect();
                eval_kind(kind, &ins, mode2)
            }
        };
        vals.insert(id, v);
    }
    vals[&cone.apex]
}

fn is_source(kind: CellKind) -> bool {
    matches!(kind, CellKind::Input(_) | CellKind::Const(_))
}

struct ConeRewrite {
    cone: Cone,
    leaf: Netlist,
    /// Input variable indices the leaf reads, ascending; leaf input `j`
    /// carries variable `free[j]`.
    free: Vec<usize>,
    agrees: bool,
}

/// Cone replacement: the whole region feeding `apex` collapses into a
/// polymorphic leaf when it reads at most three variables including the
/// mode, every interior cell is owned exclusively by the cone, and the
/// leaf is no larger than what it replaces (otherwise the pin rewrite is
/// the better move, and it always applies).
fn try_rule31(nl: &Netlist, apex: usize, x0: usize) -> Option<ConeRewrite> {
    let cone = cone_of(nl, apex);
    if !cone.var_g.contains(x0) || cone.var_g.len() > 3 {
        return None;
    }
    for &m in &cone.members {
        if m == apex || is_source(nl.cells[m].kind) {
            continue;
        }
        let escapes = nl
            .cells
            .iter()
            .enumerate()
            .any(|(id, c)| !cone.members.contains(&id) && c.fanin.contains(&m))
            || nl.outputs.iter().any(|(_, o)| *o == m);
        if escapes {
            return None;
        }
    }
    let free: Vec<usize> = cone.var_g.iter().filter(|&v| v != x0).collect();
    let names: Vec<String> = free.iter().map(|&v| nl.inputs[v].clone()).collect();
    let assign_for = |m: u32, mode2: bool| {
        let mut assign = BTreeMap::new();
        for (j, &v) in free.iter().enumerate() {
            assign.insert(v, (m >> j) & 1 == 1);
        }
        assign.insert(x0, mode2);
        assign
    };
    let table = |mode2: bool| {
        Isf::fully_specified(names.clone(), |m| eval_cone(nl, &cone, &assign_for(m, mode2), mode2))
            .expect("at most two variables")
    };
    let pf = PolyFunction::new(table(false), table(true)).expect("tables share names");
    let leaf = poly_leaf_synth(&pf);
    let added = leaf.cells.len() - leaf.inputs.len();
    let interior = cone.members.iter().filter(|&&m| !is_source(nl.cells[m].kind)).count();
    if added > interior {
        return None;
    }
    let mut agrees = true;
    for mode2 in [false, true] {
        for m in 0..(1u32 << free.len()) {
            if leaf.simulate_minterm(m, mode2)[0] != eval_cone(nl, &cone, &assign_for(m, mode2), mode2) {
                agrees = false;
            }
        }
    }
    Some(ConeRewrite { cone, leaf, free, agrees })
}

/// Splices the leaf in at the apex position. Leaf cells only read primary
/// inputs, so they slot in before the apex's consumers; interior cone cells
/// are left dead for the next sweep.
fn apply_rule31(nl: &Netlist, r: &ConeRewrite) -> Netlist {
    let apex = r.cone.apex;
    let num_in = nl.inputs.len();
    let mut out = Netlist::new(nl.inputs.clone());
    out.mode_labels = nl.mode_labels.clone();
    for id in num_in..apex {
        let c = &nl.cells[id];
        let got = out.add_cell(c.kind, c.fanin.clone());
        debug_assert_eq!(got, id);
    }
    let mut leaf_map: Vec<usize> = Vec::with_capacity(r.leaf.cells.len());
    for c in &r.leaf.cells {
        match c.kind {
            CellKind::Input(i) => leaf_map.push(r.free[i]),
            kind => {
                let fanin: Vec<usize> = c.fanin.iter().map(|&f| leaf_map[f]).collect();
                leaf_map.push(out.add_cell(kind, fanin));
            }
        }
    }
    let root = leaf_map[r.leaf.outputs[0].1];
    let added = out.num_cells() - apex;
    let remap = |id: usize| -> usize {
        match id.cmp(&apex) {
            std::cmp::Ordering::Less => id,
            std::cmp::Ordering::Equal => root,
            std::cmp::Ordering::Greater => id + added - 1,
        }
    };
    for id in (apex + 1)..nl.cells.len() {
        let c = &nl.cells[id];
        let fanin: Vec<usize> = c.fanin.iter().map(|&f| remap(f)).collect();
        let got = out.add_cell(c.kind, fanin);
        debug_assert_eq!(got, remap(id));
    }
    for (name, o) in &nl.outputs {
        out.add_output(name.clone(), remap(*o));
    }
    out
}

/// Pin rewrite: one cell reading the literal is swapped in place for the
/// cell computing its per-mode cofactors on the remaining pin.
fn apply_rule32(
    nl: &mut Netlist,
    cand: usize,
    lit_pos: usize,
    lit_neg: Option<usize>,
    report: &mut TransformReport,
) {
    let cell = nl.cells[cand].clone();
    let lit_at = cell
        .fanin
        .iter()
        .position(|&f| f == lit_pos || Some(f) == lit_neg)
        .expect("candidate reads the literal");
    let neg = Some(cell.fanin[lit_at]) == lit_neg;
    // The literal's value in (mode 1, mode 2).
    let (v1, v2) = if neg { (true, false) } else { (false, true) };
    let new = match cell.kind {
        CellKind::Not => Cell { kind: CellKind::PolyConst(!v1, !v2), fanin: vec![] },
        CellKind::Poly1(u1, u2) => {
            Cell { kind: CellKind::PolyConst(u1.apply(v1), u2.apply(v2)), fanin: vec![] }
        }
        kind => {
            let (g1, g2) = kind.gate_pair().expect("binary kind");
            let other = cell.fanin[1 - lit_at];
            Cell { kind: CellKind::Poly1(g1.partial(v1), g2.partial(v2)), fanin: vec![other] }
        }
    };
    let mut agrees = true;
    for mode2 in [false, true] {
        let lv = if mode2 { v2 } else { v1 };
        for other_val in [false, true] {
            let mut ins = vec![other_val; cell.fanin.len()];
            ins[lit_at] = lv;
            let old = eval_kind(cell.kind, &ins, mode2);
            let new_ins = vec![other_val; new.fanin.len()];
            if old != eval_kind(new.kind, &new_ins, mode2) {
                agrees = false;
            }
            if cell.fanin.len() < 2 {
                break;
            }
        }
    }
    report.rule32 += 1;
    report.locality_checks += 1;
    if !agrees {
        report.locality_violations += 1;
    }
    debug_assert!(agrees, "pin rewrite changed local behavior of {:?}", cell.kind);
    nl.cells[cand] = new;
}

/// Removes every reference to the input variable `x0_input` by replacing
/// literal-reading logic with polymorphic cells, then drops the input
/// itself. Candidates are handled lowest id first (topological order); the
/// cone rule is preferred, the pin rewrite is the fallback; the netlist is
/// re-canonicalized between applications. Outputs driven directly by the
/// literal become per-mode constant cells.
pub fn eliminate_x0(nl: &Netlist, x0_input: usize) -> (Netlist, TransformReport) {
    assert!(x0_input < nl.inputs.len(), "mode input out of range");
    let mut report = TransformReport::default();
    let mut cur = nl.clone();
    let cap = 64 + 8 * (cur.cells.len() + cur.outputs.len());
    let mut iterations = 0;
    loop {
        iterations += 1;
        assert!(iterations <= cap, "mode-variable elimination failed to converge");
        cur = cleanup(&cur);
        let lit_pos = x0_input;
        let lit_neg = cur
            .cells
            .iter()
            .position(|c| c.kind == CellKind::Not && c.fanin.len() == 1 && c.fanin[0] == lit_pos);
        let mut rewired = false;
        let mut pos_const = None;
        let mut neg_const = None;
        for oi in 0..cur.outputs.len() {
            let drv = cur.outputs[oi].1;
            let (vals, slot) = if drv == lit_pos {
                ((false, true), &mut pos_const)
            } else if Some(drv) == lit_neg {
                ((true, false), &mut neg_const)
            } else {
                continue;
            };
            let kind = CellKind::PolyConst(vals.0, vals.1);
            let id = *slot.get_or_insert_with(|| cur.add_cell(kind, vec![]));
            cur.outputs[oi].1 = id;
            report.rule31 += 1;
            report.locality_checks += 1;
            let ok = eval_kind(kind, &[], false) == vals.0 && eval_kind(kind, &[], true) == vals.1;
            if !ok {
                report.locality_violations += 1;
            }
            rewired = true;
        }
        if rewired {
            continue;
        }
        // Lowest cell reading the literal, skipping the literal-forming
        // inverter itself.
        let candidate = (cur.inputs.len()..cur.cells.len()).find(|&id| {
            Some(id) != lit_neg
                && cur.cells[id].fanin.iter().any(|&f| f == lit_pos || Some(f) == lit_neg)
        });
        let Some(cand) = candidate else { break };
        if let Some(r) = try_rule31(&cur, cand, x0_input) {
            report.rule31 += 1;
            report.locality_checks += 1;
            if !r.agrees {
                report.locality_violations += 1;
            }
            debug_assert!(r.agrees, "cone replacement changed local behavior");
            cur = apply_rule31(&cur, &r);
        } else {
            apply_rule32(&mut cur, cand, lit_pos, lit_neg, &mut report);
        }
    }
    assert!(
        cur.cells.iter().all(|c| !c.fanin.contains(&x0_input))
            && cur.outputs.iter().all(|(_, o)| *o != x0_input),
        "mode literal survived elimination"
    );
    let mut names = cur.inputs.clone();
    names.remove(x0_input);
    let mut out = Netlist::new(names);
    out.mode_labels = cur.mode_labels.clone();
    let shift = |id: usize| if id < x0_input { id } else { id - 1 };
    for id in cur.inputs.len()..cur.cells.len() {
        let c = &cur.cells[id];
        let fanin: Vec<usize> = c.fanin.iter().map(|&f| shift(f)).collect();
        let got = out.add_cell(c.kind, fanin);
        debug_assert_eq!(got, shift(id));
    }
    for (name, o) in &cur.outputs {
        out.add_output(name.clone(), shift(*o));
    }
    (cleanup(&out), report)
}

/// Synthesizes a two-mode pair by merging the modes into one function of an
/// extra variable, designing a single-mode circuit for it, and eliminating
/// that variable again. Output is named `f`.
pub fn transform_design(
    pf: &PolyFunction,
    opts: &SynthOptions,
) -> Result<(Netlist, TransformReport)> {
    let merged = merge_modes(pf)?;
    let nl = design(&merged, opts)?;
    Ok(eliminate_x0(&nl, pf.num_vars()))
}

/// Multi-output variant of [`transform_design`]: all outputs are merged and
/// synthesized into one shared netlist, then the mode variable is
/// eliminated once.
pub fn transform_design_spec(
    spec: &PolySpec,
    opts: &SynthOptions,
) -> Result<(Netlist, TransformReport)> {
    if spec.outputs.is_empty() {
        return Ok((Netlist::new(spec.var_names.clone()), TransformReport::default()));
    }
    let merged: Vec<(String, Isf)> = spec
        .outputs
        .iter()
        .map(|(name, pf)| Ok((name.clone(), merge_modes(pf)?)))
        .collect::<Result<_>>()?;
    let mut nl = Netlist::new(merged[0].1.var_names().to_vec());
    let mut ctx = SynthCtx::new(opts);
    let drivers: Vec<usize> = (0..=spec.num_vars()).collect();
    for (name, f) in &merged {
        let id = synth_isf(f, &drivers, &mut nl, &mut ctx)?;
        nl.add_output(name.clone(), id);
    }
    Ok(eliminate_x0(&nl, spec.num_vars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::default_names;
    use crate::netlist::{verify, UnaryOp, VerifyOptions};

    fn pf(f1: impl Fn(u32) -> bool, f2: impl Fn(u32) -> bool, n: usize) -> PolyFunction {
        PolyFunction::new(
            Isf::fully_specified(default_names(n), f1).unwrap(),
            Isf::fully_specified(default_names(n), f2).unwrap(),
        )
        .unwrap()
    }

    fn has_kind(nl: &Netlist, kind: CellKind) -> bool {
        nl.cells.iter().any(|c| c.kind == kind)
    }

    #[test]
    fn cone_gathers_members_and_variables() {
        let mut nl = Netlist::new(vec!["x1".into(), "x2".into(), "m".into()]);
        let o = nl.add_cell(CellKind::Or2, vec![0, 1]);
        let a = nl.add_cell(CellKind::And2, vec![2, o]);
        nl.add_output("f", a);
        let cone = cone_of(&nl, a);
        assert_eq!(cone.members, BTreeSet::from([0, 1, 2, o, a]));
        assert_eq!(cone.var_g, VarSet::from_indices(&[0, 1, 2]));
        let small = cone_of(&nl, o);
        assert_eq!(small.var_g, VarSet::from_indices(&[0, 1]));
    }

    #[test]
    fn xor_of_the_literal_becomes_wire_not() {
        let mut nl = Netlist::new(vec!["x1".into(), "m".into()]);
        let x = nl.add_cell(CellKind::Xor2, vec![0, 1]);
        nl.add_output("f", x);
        let (out, rep) = eliminate_x0(&nl, 1);
        assert_eq!(out.inputs, vec!["x1".to_string()]);
        assert!(has_kind(&out, CellKind::Poly1(UnaryOp::Wire, UnaryOp::Not)));
        assert_eq!(out.stats().total, 1);
        assert_eq!((rep.rule31 + rep.rule32, rep.locality_violations), (1, 0));
        for v in 0..2u32 {
            assert_eq!(out.simulate_minterm(v, false)[0], v == 1);
            assert_eq!(out.simulate_minterm(v, true)[0], v == 0);
        }
    }

    #[test]
    fn negated_literal_swaps_the_mode_roles() {
        let mut nl = Netlist::new(vec!["x1".into(), "m".into()]);
        let n = nl.add_cell(CellKind::Not, vec![1]);
        let o = nl.add_cell(CellKind::Or2, vec![n, 0]);
        nl.add_output("f", o);
        let (out, rep) = eliminate_x0(&nl, 1);
        assert!(has_kind(&out, CellKind::Poly1(UnaryOp::One, UnaryOp::Wire)));
        assert_eq!(out.stats().total, 1);
        assert_eq!(rep.locality_violations, 0);
        for v in 0..2u32 {
            assert_eq!(out.simulate_minterm(v, false)[0], true);
            assert_eq!(out.simulate_minterm(v, true)[0], v == 1);
        }
    }

    #[test]
    fn shared_fanout_falls_back_to_the_pin_rewrite() {
        let mut nl = Netlist::new(vec!["x1".into(), "x2".into(), "m".into()]);
        let o = nl.add_cell(CellKind::Or2, vec![0, 1]);
        let a = nl.add_cell(CellKind::And2, vec![2, o]);
        nl.add_output("f", a);
        nl.add_output("g", o);
        let (out, rep) = eliminate_x0(&nl, 2);
        assert_eq!((rep.rule31, rep.rule32), (0, 1));
        assert!(has_kind(&out, CellKind::Poly1(UnaryOp::Zero, UnaryOp::Wire)));
        assert!(has_kind(&out, CellKind::Or2));
        for v in 0..4u32 {
            let or = v != 0;
            assert_eq!(out.simulate_minterm(v, false), vec![false, or]);
            assert_eq!(out.simulate_minterm(v, true), vec![or, or]);
        }
    }

    #[test]
    fn wide_cone_falls_back_to_the_pin_rewrite() {
        let mut nl = Netlist::new(vec!["x1".into(), "x2".into(), "x3".into(), "m".into()]);
        let o1 = nl.add_cell(CellKind::Or2, vec![0, 1]);
        let o2 = nl.add_cell(CellKind::Or2, vec![o1, 2]);
        let a = nl.add_cell(CellKind::And2, vec![3, o2]);
        nl.add_output("f", a);
        let (out, rep) = eliminate_x0(&nl, 3);
        assert_eq!((rep.rule31, rep.rule32), (0, 1));
        assert!(has_kind(&out, CellKind::Poly1(UnaryOp::Zero, UnaryOp::Wire)));
        for v in 0..8u32 {
            assert_eq!(out.simulate_minterm(v, false)[0], false);
            assert_eq!(out.simulate_minterm(v, true)[0], v != 0);
        }
    }

    #[test]
    fn owned_cone_collapses_into_one_cell() {
        // AND(¬m, OR(x1, x2)) reads three variables and owns its interior,
        // but the one-cell leaf only wins after the inverter is folded into
        // the cone: (x1 OR x2)/0 is WIRE/ZERO on the OR.
        let mut nl = Netlist::new(vec!["x1".into(), "x2".into(), "m".into()]);
        let n = nl.add_cell(CellKind::Not, vec![2]);
        let o = nl.add_cell(CellKind::Or2, vec![0, 1]);
        let a = nl.add_cell(CellKind::And2, vec![n, o]);
        nl.add_output("f", a);
        let (out, rep) = eliminate_x0(&nl, 2);
        assert_eq!(rep.locality_violations, 0);
        assert!(has_kind(&out, CellKind::Poly1(UnaryOp::Wire, UnaryOp::Zero)));
        for v in 0..4u32 {
            assert_eq!(out.simulate_minterm(v, false)[0], v != 0);
            assert_eq!(out.simulate_minterm(v, true)[0], false);
        }
    }

    #[test]
    fn literal_outputs_become_mode_constants() {
        let mut nl = Netlist::new(vec!["x1".into(), "m".into()]);
        let n = nl.add_cell(CellKind::Not, vec![1]);
        nl.add_output("f", 1);
        nl.add_output("g", n);
        let (out, rep) = eliminate_x0(&nl, 1);
        assert_eq!(rep.rule31, 2);
        assert!(has_kind(&out, CellKind::PolyConst(false, true)));
        assert!(has_kind(&out, CellKind::PolyConst(true, false)));
        assert_eq!(out.simulate_minterm(0, false), vec![false, true]);
        assert_eq!(out.simulate_minterm(0, true), vec![true, false]);
    }

    #[test]
    fn unused_mode_input_disappears_silently() {
        let mut nl = Netlist::new(vec!["x1".into(), "x2".into(), "m".into()]);
        let a = nl.add_cell(CellKind::And2, vec![0, 1]);
        nl.add_output("f", a);
        let (out, rep) = eliminate_x0(&nl, 2);
        assert_eq!(rep, TransformReport::default());
        assert_eq!(out.inputs, vec!["x1".to_string(), "x2".to_string()]);
        assert!(has_kind(&out, CellKind::And2));
    }

    #[test]
    fn equal_modes_need_no_polymorphic_cells() {
        let p = pf(|m| m & 3 == 3, |m| m & 3 == 3, 2);
        let (out, rep) = transform_design(&p, &SynthOptions::default()).unwrap();
        assert_eq!(out.stats().poly, 0);
        assert_eq!(rep, TransformReport::default());
        assert_eq!(out.inputs.len(), 2);
    }

    #[test]
    fn constant_pair_becomes_a_mode_indicator() {
        let p = pf(|_| false, |_| true, 1);
        let (out, rep) = transform_design(&p, &SynthOptions::default()).unwrap();
        let stats = out.stats();
        assert_eq!((stats.total, stats.poly), (1, 1));
        assert!(has_kind(&out, CellKind::PolyConst(false, true)));
        assert_eq!(rep.rule31, 1);
    }

    #[test]
    fn parity_majority_transform_is_sound_in_both_modes() {
        let p = pf(|m| m.count_ones() % 2 == 1, |m| m.count_ones() > 2, 4);
        let (out, rep) = transform_design(&p, &SynthOptions::default()).unwrap();
        assert_eq!(out.inputs.len(), 4);
        assert!(out.stats().poly > 0);
        assert_eq!(rep.locality_violations, 0);
        assert_eq!(rep.locality_checks, rep.rule31 + rep.rule32);
        let spec = PolySpec::new(
            default_names(4),
            vec![("f".into(), p)],
        )
        .unwrap();
        let report = verify(&out, &spec, &VerifyOptions::default()).unwrap();
        assert!(report.ok, "{:?}", report.mismatches);
    }

    #[test]
    fn elimination_never_grows_past_one_cell_per_output() {
        let p = pf(|m| m.count_ones() % 2 == 1, |m| m.count_ones() > 2, 4);
        let merged = merge_modes(&p).unwrap();
        let nl = design(&merged, &SynthOptions::default()).unwrap();
        let before = nl.stats().total;
        let (out, _) = eliminate_x0(&nl, 4);
        assert!(
            out.stats().total <= before + nl.outputs.len(),
            "{} cells grew past {} + {}",
            out.stats().total,
            before,
            nl.outputs.len()
        );
    }

    #[test]
    fn spec_transform_keeps_output_names_and_order() {
        let names = default_names(3);
        let p = PolyFunction::new(
            Isf::fully_specified(names.clone(), |m| m.count_ones() % 2 == 1).unwrap(),
            Isf::fully_specified(names.clone(), |m| m != 0).unwrap(),
        )
        .unwrap();
        let q = PolyFunction::new(
            Isf::fully_specified(names.clone(), |m| m == 7).unwrap(),
            Isf::fully_specified(names.clone(), |m| m == 0).unwrap(),
        )
        .unwrap();
        let spec =
            PolySpec::new(names, vec![("p".into(), p), ("q".into(), q)]).unwrap();
        let (out, rep) = transform_design_spec(&spec, &SynthOptions::default()).unwrap();
        assert_eq!(out.outputs[0].0, "p");
        assert_eq!(out.outputs[1].0, "q");
        assert_eq!(rep.locality_violations, 0);
        let report = verify(&out, &spec, &VerifyOptions::default()).unwrap();
        assert!(report.ok, "{:?}", report.mismatches);
    }
}
