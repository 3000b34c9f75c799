//! Direct synthesis of polymorphic circuits by bi-decomposing both mode
//! functions over a shared variable partition.
//!
//! The driver is [`poly_design`]. At every node it first tries a shared
//! strong split ([`poly_decomposition`]): gate `g1` for mode 1 and `g2` for
//! mode 2 over the same A/S/B partition, realized as one two-input
//! polymorphic cell. When no such split exists, the mode signal is folded
//! into the table ([`merge_and_decompose`]) and the ordinary single-mode
//! machinery takes over; children still depending on the mode variable come
//! back as polymorphic sub-problems.

use crate::bidecomp::{
    bidecompose, check_strong, gate_cell, score, synth_isf, DecompResult, Partition, SynthCtx,
};
use crate::boolfn::{merge_modes, Isf, PolyFunction, PolySpec, VarSet};
use crate::netlist::{cleanup, CellKind, GateKind, Netlist, UnaryOp};
use crate::{Result, SynthOptions};

/// A strong polymorphic split: one partition that decomposes mode 1 under
/// `g1` and mode 2 under `g2`. The children pair the per-mode sub-functions.
#[derive(Clone, Debug)]
pub struct PolyStrong {
    pub g1: GateKind,
    pub g2: GateKind,
    pub partition: Partition,
    pub r: PolyFunction,
    pub h: PolyFunction,
}

/// One child of a merged-space decomposition, with the original variable
/// indices it reads (the mode variable already stripped).
#[derive(Clone, Debug)]
pub enum MergedChild {
    /// The child still depends on the mode variable.
    Poly { f: PolyFunction, vars: Vec<usize> },
    /// The child behaves identically in both modes.
    Single { f: Isf, vars: Vec<usize> },
}

/// Result of decomposing in the merged space: `gate(left, right)`, or, when
/// `mode_split` is set, the two children are the whole per-mode functions
/// and recombine through mode-gated wires instead of a plain gate.
#[derive(Clone, Debug)]
pub struct Merged {
    pub gate: GateKind,
    pub left: MergedChild,
    pub right: MergedChild,
    pub mode_split: bool,
}

fn g2_candidates(g1: GateKind, distinct: bool) -> Vec<GateKind> {
    let mut out = Vec::with_capacity(3);
    if !distinct {
        out.push(g1);
    }
    out.extend(GateKind::ALL.iter().copied().filter(|&g| g != g1));
    out
}

fn rest_of(n: usize, a: &VarSet, b: &VarSet) -> VarSet {
    VarSet::from_indices(&(0..n).filter(|&v| !a.contains(v) && !b.contains(v)).collect::<Vec<_>>())
}

/// First variable pair (ascending) where mode 1 is strongly
/// `g1`-decomposable and mode 2 is strongly decomposable under some gate
/// over the same partition. The mode-2 gate search prefers `g1` itself, then
/// the remaining gates in AND, OR, XOR order; `g2_distinct` drops the
/// same-gate candidate.
pub fn find_initial_variable(
    pf: &PolyFunction,
    g1: GateKind,
    opts: &SynthOptions,
) -> Option<(GateKind, VarSet, VarSet)> {
    let n = pf.num_vars();
    for i in 0..n {
        for j in (i + 1)..n {
            let part = Partition::new(VarSet::single(i), VarSet::single(j), rest_of(n, &VarSet::single(i), &VarSet::single(j)));
            if check_strong(&pf.mode1, g1, &part).is_none() {
                continue;
            }
            for g2 in g2_candidates(g1, opts.g2_distinct) {
                if check_strong(&pf.mode2, g2, &part).is_some() {
                    return Some((g2, VarSet::single(i), VarSet::single(j)));
                }
            }
        }
    }
    None
}

fn both_modes_ok(pf: &PolyFunction, g1: GateKind, g2: GateKind, part: &Partition) -> bool {
    check_strong(&pf.mode1, g1, part).is_some() && check_strong(&pf.mode2, g2, part).is_some()
}

/// Best strong polymorphic split of `pf`, or none. For each mode-1 gate a
/// seed pair is located, grown greedily under both modes at once, and the
/// resulting partitions compete on [`score`]. The A block is kept no larger
/// than B.
pub fn poly_decomposition(pf: &PolyFunction, opts: &SynthOptions) -> Option<PolyStrong> {
    let n = pf.num_vars();
    let mut best: Option<(u64, GateKind, GateKind, Partition)> = None;
    for g1 in GateKind::ALL {
        let Some((g2, seed_a, seed_b)) = find_initial_variable(pf, g1, opts) else {
            continue;
        };
        let mut a = seed_a;
        let mut b = seed_b;
        for x in 0..n {
            if a.contains(x) || b.contains(x) {
                continue;
            }
            let mut ta = a;
            ta.insert(x);
            if both_modes_ok(pf, g1, g2, &Partition::new(ta, b, rest_of(n, &ta, &b))) {
                a = ta;
                continue;
            }
            let mut tb = b;
            tb.insert(x);
            if both_modes_ok(pf, g1, g2, &Partition::new(a, tb, rest_of(n, &a, &tb))) {
                b = tb;
            }
        }
        if a.len() > b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        let part = Partition::new(a, b, rest_of(n, &a, &b));
        let sc = score(&part, n);
        if best.map_or(true, |(bs, ..)| sc > bs) {
            best = Some((sc, g1, g2, part));
        }
    }
    let (_, g1, g2, partition) = best?;
    let (r1, h1) = check_strong(&pf.mode1, g1, &partition).expect("winning partition fits mode 1");
    let (r2, h2) = check_strong(&pf.mode2, g2, &partition).expect("winning partition fits mode 2");
    Some(PolyStrong {
        g1,
        g2,
        partition,
        r: PolyFunction::new(r1, r2).expect("children share the parent's variables"),
        h: PolyFunction::new(h1, h2).expect("children share the parent's variables"),
    })
}

/// Routes a merged-space child to the right representation: a child that
/// does not read the mode variable collapses to a single function, the rest
/// split into a mode pair. `vars` are merged-space indices; `x0` is the mode
/// variable's index there.
fn split_child(f: &Isf, vars: Vec<usize>, x0: usize) -> MergedChild {
    match vars.iter().position(|&v| v == x0) {
        None => MergedChild::Single { f: f.clone(), vars },
        Some(p) => {
            let mut rest = vars;
            rest.remove(p);
            let lo = f.cofactor(p, false);
            let hi = f.cofactor(p, true);
            if lo.equal_on_care(&hi) {
                MergedChild::Single { f: f.drop_var(p), vars: rest }
            } else {
                MergedChild::Poly {
                    f: PolyFunction::new(lo, hi).expect("cofactors share variables"),
                    vars: rest,
                }
            }
        }
    }
}

fn mode_split_merged(pf: &PolyFunction) -> Merged {
    let vars: Vec<usize> = (0..pf.num_vars()).collect();
    Merged {
        gate: GateKind::Or,
        left: MergedChild::Single { f: pf.mode1.clone(), vars: vars.clone() },
        right: MergedChild::Single { f: pf.mode2.clone(), vars },
        mode_split: true,
    }
}

/// Folds the mode signal into the table as an extra variable, bi-decomposes
/// the merged function once, and sorts each child by whether it still
/// depends on the mode. Functions too small to bi-decompose fall back to a
/// mode split, as does the (defensive) Shannon case.
pub fn merge_and_decompose(pf: &PolyFunction) -> Result<Merged> {
    let merged = merge_modes(pf)?;
    if merged.num_vars() <= 2 {
        return Ok(mode_split_merged(pf));
    }
    let x0 = pf.num_vars();
    let n = merged.num_vars();
    Ok(match bidecompose(&merged) {
        DecompResult::Strong(d) => Merged {
            gate: d.gate,
            left: split_child(&d.r, d.partition.r_vars(), x0),
            right: split_child(&d.h, d.partition.h_vars(), x0),
            mode_split: false,
        },
        DecompResult::Weak(w) => {
            let bv = w.b.iter().next().unwrap();
            let r_vars: Vec<usize> = (0..n).filter(|&v| v != bv).collect();
            let h_vars: Vec<usize> = (0..n).collect();
            Merged {
                gate: w.gate,
                left: split_child(&w.r, r_vars, x0),
                right: split_child(&w.h, h_vars, x0),
                mode_split: false,
            }
        }
        DecompResult::Shannon { .. } => mode_split_merged(pf),
    })
}

/// A merged-space step must shrink the problem; a polymorphic child as large
/// as its parent with no care progress would recurse forever, so it forces a
/// mode split instead. Defensive: the construction above cannot produce one.
fn guard_progress(m: Merged, pf: &PolyFunction) -> Merged {
    if m.mode_split {
        return m;
    }
    let stuck = |c: &MergedChild| match c {
        MergedChild::Poly { f, vars } => {
            vars.len() == pf.num_vars() && f.care_count() >= pf.care_count()
        }
        MergedChild::Single { .. } => false,
    };
    if stuck(&m.left) || stuck(&m.right) {
        mode_split_merged(pf)
    } else {
        m
    }
}

fn realize_child(
    c: &MergedChild,
    drv: &[usize],
    nl: &mut Netlist,
    ctx: &mut SynthCtx,
) -> Result<usize> {
    match c {
        MergedChild::Single { f, vars } => {
            let child_drv: Vec<usize> = vars.iter().map(|&v| drv[v]).collect();
            synth_isf(f, &child_drv, nl, ctx)
        }
        MergedChild::Poly { f, vars } => {
            let child_drv: Vec<usize> = vars.iter().map(|&v| drv[v]).collect();
            synth_poly(f, &child_drv, nl, ctx)
        }
    }
}

fn realize_merged(
    m: &Merged,
    drv: &[usize],
    nl: &mut Netlist,
    ctx: &mut SynthCtx,
) -> Result<usize> {
    let l = realize_child(&m.left, drv, nl, ctx)?;
    let r = realize_child(&m.right, drv, nl, ctx)?;
    if m.mode_split {
        // Mode-gated recombination: the left child passes in mode 1 only,
        // the right in mode 2 only.
        let lg = nl.add_cell(CellKind::Poly1(UnaryOp::Wire, UnaryOp::Zero), vec![l]);
        let rg = nl.add_cell(CellKind::Poly1(UnaryOp::Zero, UnaryOp::Wire), vec![r]);
        Ok(nl.add_cell(CellKind::Or2, vec![lg, rg]))
    } else {
        Ok(nl.add_cell(gate_cell(m.gate), vec![l, r]))
    }
}

/// Drops variables outside the union support of the two modes, re-checking
/// after every drop. Returns the shrunk pair and the kept original indices.
fn shrink_pf(pf: &PolyFunction) -> (PolyFunction, Vec<usize>) {
    let mut cur = pf.clone();
    let mut kept: Vec<usize> = (0..pf.num_vars()).collect();
    loop {
        let sup = cur.support();
        if sup.len() == cur.num_vars() {
            return (cur, kept);
        }
        let v = (0..cur.num_vars()).rev().find(|&v| !sup.contains(v)).unwrap();
        cur = PolyFunction {
            mode1: cur.mode1.drop_var(v),
            mode2: cur.mode2.drop_var(v),
        };
        kept.remove(v);
    }
}

fn const_fits(f: &Isf, b: bool) -> bool {
    if b {
        f.off_count() == 0
    } else {
        f.on_count() == 0
    }
}

/// Whether `u` applied to variable `w` completes `f`.
fn unary_fits(f: &Isf, w: usize, u: UnaryOp) -> bool {
    for m in f.iter_on() {
        if !u.apply((m >> w) & 1 == 1) {
            return false;
        }
    }
    for m in f.iter_off() {
        if u.apply((m >> w) & 1 == 1) {
            return false;
        }
    }
    true
}

/// Whether `g` with the given input/output inversions completes the
/// two-variable function `f`.
fn gate_fits(f: &Isf, g: GateKind, nx: bool, ny: bool, no: bool) -> bool {
    for m in 0..4u32 {
        let v = g.apply((m & 1 == 1) ^ nx, (m & 2 == 2) ^ ny) ^ no;
        if f.is_on(m) && !v {
            return false;
        }
        if f.is_off(m) && v {
            return false;
        }
    }
    true
}

/// Realizes a shrunk polymorphic pair over at most two variables whose modes
/// genuinely differ. Tries the cell library cheapest-first: per-mode
/// constants, then one-input polymorphic cells on each input, then the six
/// mixed-gate two-input cells with shared inverters (fewest inversions
/// first). Pairs outside the library go through the merged space.
fn emit_poly_leaf(
    pf: &PolyFunction,
    drv: &[usize],
    nl: &mut Netlist,
    ctx: &mut SynthCtx,
) -> Result<usize> {
    let n = pf.num_vars();
    debug_assert!(n <= 2);
    for b1 in [false, true] {
        for b2 in [false, true] {
            if const_fits(&pf.mode1, b1) && const_fits(&pf.mode2, b2) {
                return Ok(nl.add_cell(CellKind::PolyConst(b1, b2), vec![]));
            }
        }
    }
    for (w, &wd) in drv.iter().enumerate() {
        for u1 in UnaryOp::ALL {
            if !unary_fits(&pf.mode1, w, u1) {
                continue;
            }
            for u2 in UnaryOp::ALL {
                if unary_fits(&pf.mode2, w, u2) {
                    return Ok(nl.add_cell(CellKind::Poly1(u1, u2), vec![wd]));
                }
            }
        }
    }
    if n == 2 {
        // Inversion patterns by count, then numerically: bit 0 negates the
        // first input, bit 1 the second, bit 2 the output.
        for negs in [0b000u32, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111] {
            let (nx, ny, no) = (negs & 1 != 0, negs & 2 != 0, negs & 4 != 0);
            for g1 in GateKind::ALL {
                for g2 in GateKind::ALL {
                    if g1 == g2 {
                        continue;
                    }
                    if gate_fits(&pf.mode1, g1, nx, ny, no) && gate_fits(&pf.mode2, g2, nx, ny, no) {
                        let ix = if nx { nl.add_cell(CellKind::Not, vec![drv[0]]) } else { drv[0] };
                        let iy = if ny { nl.add_cell(CellKind::Not, vec![drv[1]]) } else { drv[1] };
                        let cell = nl.add_cell(CellKind::Poly2(g1, g2), vec![ix, iy]);
                        return Ok(if no { nl.add_cell(CellKind::Not, vec![cell]) } else { cell });
                    }
                }
            }
        }
    }
    let m = guard_progress(merge_and_decompose(pf)?, pf);
    realize_merged(&m, drv, nl, ctx)
}

/// Recursive polymorphic synthesis into `nl`; `drivers[v]` carries variable
/// `v`. Mode-equal pairs drop to the single-mode flow immediately.
pub(crate) fn synth_poly(
    pf: &PolyFunction,
    drivers: &[usize],
    nl: &mut Netlist,
    ctx: &mut SynthCtx,
) -> Result<usize> {
    ctx.step(nl)?;
    debug_assert_eq!(drivers.len(), pf.num_vars());
    let (g, kept) = shrink_pf(pf);
    let drv: Vec<usize> = kept.iter().map(|&v| drivers[v]).collect();
    if g.modes_equal_on_care() {
        return synth_isf(&g.combined(), &drv, nl, ctx);
    }
    if g.num_vars() <= 2 {
        return emit_poly_leaf(&g, &drv, nl, ctx);
    }
    if let Some(ps) = poly_decomposition(&g, ctx.opts) {
        let r_drv: Vec<usize> = ps.partition.r_vars().iter().map(|&v| drv[v]).collect();
        let h_drv: Vec<usize> = ps.partition.h_vars().iter().map(|&v| drv[v]).collect();
        let r_id = synth_poly(&ps.r, &r_drv, nl, ctx)?;
        let h_id = synth_poly(&ps.h, &h_drv, nl, ctx)?;
        let kind = if ps.g1 == ps.g2 {
            gate_cell(ps.g1)
        } else {
            CellKind::Poly2(ps.g1, ps.g2)
        };
        return Ok(nl.add_cell(kind, vec![r_id, h_id]));
    }
    let m = guard_progress(merge_and_decompose(&g)?, &g);
    realize_merged(&m, &drv, nl, ctx)
}

/// Synthesizes a polymorphic pair with at most two support variables as a
/// standalone netlist, preferring a single library cell.
pub fn poly_leaf_synth(pf: &PolyFunction) -> Netlist {
    let (g, _) = shrink_pf(pf);
    assert!(g.num_vars() <= 2, "polymorphic leaf synthesis takes at most two support variables");
    let mut nl = Netlist::new(pf.var_names().to_vec());
    let opts = SynthOptions::default();
    let mut ctx = SynthCtx::new(&opts);
    let drivers: Vec<usize> = (0..pf.num_vars()).collect();
    let id = synth_poly(pf, &drivers, &mut nl, &mut ctx)
        .expect("a two-variable leaf stays within the default resource caps");
    nl.add_output("f", id);
    nl
}

/// Synthesizes one polymorphic pair into a cleaned-up netlist with a single
/// output named `f`.
pub fn poly_design(pf: &PolyFunction, opts: &SynthOptions) -> Result<Netlist> {
    let mut nl = Netlist::new(pf.var_names().to_vec());
    let mut ctx = SynthCtx::new(opts);
    let drivers: Vec<usize> = (0..pf.num_vars()).collect();
    let id = synth_poly(pf, &drivers, &mut nl, &mut ctx)?;
    nl.add_output("f", id);
    Ok(cleanup(&nl))
}

/// Synthesizes every output of a two-mode specification into one shared
/// netlist. Outputs are processed in order; structural sharing happens in
/// the final cleanup.
pub fn poly_design_spec(spec: &PolySpec, opts: &SynthOptions) -> Result<Netlist> {
    let mut nl = Netlist::new(spec.var_names.clone());
    let mut ctx = SynthCtx::new(opts);
    let drivers: Vec<usize> = (0..spec.num_vars()).collect();
    for (name, pf) in &spec.outputs {
        let id = synth_poly(pf, &drivers, &mut nl, &mut ctx)?;
        nl.add_output(name.clone(), id);
    }
    Ok(cleanup(&nl))
}
