//! Bi-decomposition of incompletely specified functions.
//!
//! The central question: given `f` and a partition of its variables into
//! disjoint blocks A, S, B, does `f(A,S,B) = g(r(A,S), h(B,S))` hold for some
//! two-input gate `g` and sub-functions `r`, `h`? Strong decompositions have
//! both A and B nonempty; weak ones put a single variable in B and only
//! require `r` to get simpler than `f`. [`bidecompose`] searches for the best
//! split and [`design`] recurses on it until every residue fits in a single
//! cell.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::boolfn::{Isf, VarSet};
use crate::error::Error;
use crate::netlist::{cleanup, CellKind, GateKind, Netlist};
use crate::{Result, SynthOptions};

/// A disjoint split of a function's variables into the blocks feeding `r`
/// (A), feeding `h` (B), and shared by both (S).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Partition {
    pub a: VarSet,
    pub b: VarSet,
    pub s: VarSet,
}

impl Partition {
    pub fn new(a: VarSet, b: VarSet, s: VarSet) -> Partition {
        let p = Partition { a, b, s };
        assert!(
            p.a.is_disjoint(&p.b) && p.a.is_disjoint(&p.s) && p.b.is_disjoint(&p.s),
            "partition blocks overlap"
        );
        p
    }

    /// Variables of `r`, ascending: the A block plus the shared block.
    pub fn r_vars(&self) -> Vec<usize> {
        self.a.union(&self.s).to_vec()
    }

    /// Variables of `h`, ascending: the B block plus the shared block.
    pub fn h_vars(&self) -> Vec<usize> {
        self.b.union(&self.s).to_vec()
    }

    fn assert_valid_for(&self, n: usize) {
        assert!(!self.a.is_empty() && !self.b.is_empty(), "A and B must be nonempty");
        assert!(
            self.a.is_disjoint(&self.b) && self.a.is_disjoint(&self.s) && self.b.is_disjoint(&self.s),
            "partition blocks overlap"
        );
        let all = self.a.union(&self.b).union(&self.s);
        assert!(
            all == VarSet::from_indices(&(0..n).collect::<Vec<_>>()),
            "partition must cover every variable exactly once"
        );
    }
}

/// A successful strong split: `f = gate(r, h)` with `r` over A∪S and `h`
/// over B∪S.
#[derive(Clone, Debug)]
pub struct StrongDecomp {
    pub gate: GateKind,
    pub partition: Partition,
    pub r: Isf,
    pub h: Isf,
}

/// A weak split: `f = gate(r, h)` where `r` drops the single variable in `b`
/// and `h` keeps all variables but gains `gain` new don't-cares.
#[derive(Clone, Debug)]
pub struct WeakDecomp {
    pub gate: GateKind,
    pub b: VarSet,
    pub r: Isf,
    pub h: Isf,
    pub gain: usize,
}

/// What [`bidecompose`] found, in order of preference.
#[derive(Clone, Debug)]
pub enum DecompResult {
    Strong(StrongDecomp),
    Weak(WeakDecomp),
    /// Cofactor fallback on `var`; never reached for functions the weak rules
    /// cover, but keeps the recursion total.
    Shannon { var: usize, f0: Isf, f1: Isf },
}

/// Extracts the bits of `m` at the (ascending) positions `vars` into a
/// compact index.
fn gather(m: u32, vars: &[usize]) -> u32 {
    let mut out = 0u32;
    for (i, &v) in vars.iter().enumerate() {
        out |= ((m >> v) & 1) << i;
    }
    out
}

/// Positions that the variables `sub` occupy within the (ascending) superset
/// `sup`.
fn positions_within(sub: &[usize], sup: &[usize]) -> Vec<usize> {
    sub.iter()
        .map(|v| sup.iter().position(|w| w == v).expect("sub must be contained in sup"))
        .collect()
}

fn names_for(vars: &[usize], f: &Isf) -> Vec<String> {
    vars.iter().map(|&v| f.var_names()[v].clone()).collect()
}

/// Decides whether `f = gate(r(A,S), h(B,S))` has a solution and returns the
/// most permissive `r` and `h` when it does. The children leave every
/// unconstrained point don't-care, so any completion of them recombines to a
/// completion of `f`.
pub fn check_strong(f: &Isf, gate: GateKind, part: &Partition) -> Option<(Isf, Isf)> {
    part.assert_valid_for(f.num_vars());
    match gate {
        GateKind::Or => check_or(f, part),
        // De Morgan: f = AND(r,h) iff !f = OR(!r,!h).
        GateKind::And => {
            let (r, h) = check_or(&f.complemented(), part)?;
            Some((r.complemented(), h.complemented()))
        }
        GateKind::Xor => check_xor(f, part),
    }
}

/// OR-decomposability: an on-point may not see an off-point in both its
/// (A,S) row and its (B,S) column, because one of the two children must be
/// able to raise it without raising any off-point.
fn check_or(f: &Isf, part: &Partition) -> Option<(Isf, Isf)> {
    let r_vars = part.r_vars();
    let h_vars = part.h_vars();
    let mut row_on = Bits::new(r_vars.len());
    let mut row_off = Bits::new(r_vars.len());
    let mut col_on = Bits::new(h_vars.len());
    let mut col_off = Bits::new(h_vars.len());
    for m in f.iter_off() {
        row_off.set(gather(m, &r_vars));
        col_off.set(gather(m, &h_vars));
    }
    for m in f.iter_on() {
        let ri = gather(m, &r_vars);
        let hi = gather(m, &h_vars);
        if row_off.get(ri) && col_off.get(hi) {
            return None;
        }
        row_on.set(ri);
        col_on.set(hi);
    }
    // A child is on where its row has an on-point and no off-point, off where
    // the row has an off-point, don't-care elsewhere.
    let mut r_on = row_on;
    r_on.subtract(&row_off);
    let mut h_on = col_on;
    h_on.subtract(&col_off);
    let r = Isf::from_bits(names_for(&r_vars, f), r_on, row_off);
    let h = Isf::from_bits(names_for(&h_vars, f), h_on, col_off);
    Some((r, h))
}

/// XOR-decomposability: within each S-slice the care points impose the
/// parity constraints `r(a) ^ h(b) = f(a,b)`, a union-find problem over the
/// A-cells and B-cells of the slice. Unsatisfiable constraints reject the
/// partition; unconstrained cells stay don't-care.
fn check_xor(f: &Isf, part: &Partition) -> Option<(Isf, Isf)> {
    let a_vars = part.a.to_vec();
    let b_vars = part.b.to_vec();
    let s_vars = part.s.to_vec();
    let r_vars = part.r_vars();
    let h_vars = part.h_vars();
    let scat_a_r = crate::boolfn::scatter_table(&positions_within(&a_vars, &r_vars));
    let scat_s_r = crate::boolfn::scatter_table(&positions_within(&s_vars, &r_vars));
    let scat_b_h = crate::boolfn::scatter_table(&positions_within(&b_vars, &h_vars));
    let scat_s_h = crate::boolfn::scatter_table(&positions_within(&s_vars, &h_vars));

    let mut edges: Vec<(u32, u32, u32, bool)> = Vec::with_capacity(f.care_count());
    for m in f.iter_on() {
        edges.push((gather(m, &s_vars), gather(m, &a_vars), gather(m, &b_vars), true));
    }
    for m in f.iter_off() {
        edges.push((gather(m, &s_vars), gather(m, &a_vars), gather(m, &b_vars), false));
    }
    edges.sort_unstable();

    let asize = 1usize << a_vars.len();
    let bsize = 1usize << b_vars.len();
    let mut uf = ParityUf::new(asize + bsize);
    let mut r_on = Bits::new(r_vars.len());
    let mut r_off = Bits::new(r_vars.len());
    let mut h_on = Bits::new(h_vars.len());
    let mut h_off = Bits::new(h_vars.len());
    let mut touched: Vec<u32> = Vec::new();
    let mut root_val: HashMap<u32, bool> = HashMap::new();

    let mut i = 0;
    while i < edges.len() {
        let s_idx = edges[i].0;
        let mut j = i;
        while j < edges.len() && edges[j].0 == s_idx {
            j += 1;
        }
        uf.reset();
        touched.clear();
        for &(_, a_idx, b_idx, val) in &edges[i..j] {
            let x = a_idx as usize;
            let y = asize + b_idx as usize;
            if !uf.union(x, y, val) {
                return None;
            }
            touched.push(x as u32);
            touched.push(y as u32);
        }
        // The lowest cell of each constraint component anchors it at zero;
        // the rest follow from their parity to the anchor.
        touched.sort_unstable();
        touched.dedup();
        root_val.clear();
        let s_spread_r = scat_s_r[s_idx as usize];
        let s_spread_h = scat_s_h[s_idx as usize];
        for &node in &touched {
            let (root, parity) = uf.find(node as usize);
            let base = *root_val.entry(root as u32).or_insert(parity);
            let val = parity ^ base;
            if (node as usize) < asize {
                let idx = scat_a_r[node as usize] | s_spread_r;
                if val {
                    r_on.set(idx);
                } else {
                    r_off.set(idx);
                }
            } else {
                let idx = scat_b_h[node as usize - asize] | s_spread_h;
                if val {
                    h_on.set(idx);
                } else {
                    h_off.set(idx);
                }
            }
        }
        i = j;
    }
    let r = Isf::from_bits(names_for(&r_vars, f), r_on, r_off);
    let h = Isf::from_bits(names_for(&h_vars, f), h_on, h_off);
    Some((r, h))
}

/// Union-find with an XOR relation on each edge. Reused across slices via
/// version stamps instead of reallocation.
struct ParityUf {
    parent: Vec<u32>,
    rank: Vec<u8>,
    /// Parity of the path from a node to its parent.
    par: Vec<bool>,
    stamp: Vec<u32>,
    cur: u32,
}

impl ParityUf {
    fn new(n: usize) -> ParityUf {
        ParityUf {
            parent: vec![0; n],
            rank: vec![0; n],
            par: vec![false; n],
            stamp: vec![0; n],
            cur: 0,
        }
    }

    fn reset(&mut self) {
        self.cur += 1;
    }

    fn touch(&mut self, x: usize) {
        if self.stamp[x] != self.cur {
            self.stamp[x] = self.cur;
            self.parent[x] = x as u32;
            self.rank[x] = 0;
            self.par[x] = false;
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        self.touch(x);
        let mut root = x;
        let mut rpar = false;
        while self.parent[root] as usize != root {
            rpar ^= self.par[root];
            root = self.parent[root] as usize;
        }
        // Path compression, keeping each node's parity relative to the root.
        let mut node = x;
        let mut npar = rpar;
        while self.parent[node] as usize != node {
            let next = self.parent[node] as usize;
            let edge = self.par[node];
            self.parent[node] = root as u32;
            self.par[node] = npar;
            npar ^= edge;
            node = next;
        }
        (root, rpar)
    }

    /// Joins `x` and `y` under the constraint `val(x) ^ val(y) = rel`;
    /// returns false when that contradicts an existing constraint.
    fn union(&mut self, x: usize, y: usize, rel: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return (px ^ py) == rel;
        }
        let need = px ^ py ^ rel;
        if self.rank[rx] < self.rank[ry] {
            self.parent[rx] = ry as u32;
            self.par[rx] = need;
        } else {
            self.parent[ry] = rx as u32;
            self.par[ry] = need;
            if self.rank[rx] == self.rank[ry] {
                self.rank[rx] += 1;
            }
        }
        true
    }
}

/// The row index of `m` once the single variable `bv` is removed.
fn row_without(m: u32, bv: usize) -> u32 {
    let low = (1u32 << bv) - 1;
    (m & low) | ((m >> 1) & !low)
}

/// Weak decomposition: `f = gate(r, h)` where `r` lives over all variables
/// but the one in `b`, and `h` keeps `f`'s variables while strictly gaining
/// don't-cares. Absent when no care point can be delegated to `r`.
pub fn weak_decompose(f: &Isf, gate: GateKind, b: VarSet) -> Option<WeakDecomp> {
    assert!(
        matches!(gate, GateKind::Or | GateKind::And),
        "weak decomposition is defined for AND and OR only"
    );
    assert_eq!(b.len(), 1, "the weak block must hold exactly one variable");
    let bv = b.iter().next().unwrap();
    let n = f.num_vars();
    assert!(bv < n, "variable index {bv} out of range for {n}-variable function");

    let rest: Vec<usize> = (0..n).filter(|&v| v != bv).collect();
    let mut some_on = Bits::new(n - 1);
    let mut some_off = Bits::new(n - 1);
    for m in f.iter_on() {
        some_on.set(row_without(m, bv));
    }
    for m in f.iter_off() {
        some_off.set(row_without(m, bv));
    }

    let mut h = f.clone();
    let mut gain = 0usize;
    let (r_on, r_off) = match gate {
        GateKind::Or => {
            // r covers the rows it can raise without raising an off-point;
            // the on-points of those rows become h's new don't-cares.
            let mut r_on = some_on.clone();
            r_on.subtract(&some_off);
            for m in f.iter_on() {
                if r_on.get(row_without(m, bv)) {
                    h.set_dc(m);
                    gain += 1;
                }
            }
            (r_on, some_off)
        }
        GateKind::And => {
            // Dual: r grounds the rows with no on-point, releasing their
            // off-points from h.
            let mut r_off = some_off.clone();
            r_off.subtract(&some_on);
            for m in f.iter_off() {
                if r_off.get(row_without(m, bv)) {
                    h.set_dc(m);
                    gain += 1;
                }
            }
            (some_on, r_off)
        }
        GateKind::Xor => unreachable!(),
    };
    if gain == 0 {
        return None;
    }
    let r = Isf::from_bits(names_for(&rest, f), r_on, r_off);
    Some(WeakDecomp { gate, b, r, h, gain })
}

/// First variable pair `(i, j)` (in ascending pair order) for which
/// `{i} | rest | {j}` is strongly `gate`-decomposable.
pub fn find_initial_pair(f: &Isf, gate: GateKind) -> Option<(usize, usize)> {
    let n = f.num_vars();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = VarSet::from_indices(
                &(0..n).filter(|&v| v != i && v != j).collect::<Vec<_>>(),
            );
            let part = Partition::new(VarSet::single(i), VarSet::single(j), s);
            if check_strong(f, gate, &part).is_some() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Greedily moves the remaining variables (ascending) out of the shared
/// block: each joins A if the split stays decomposable, else B if that
/// works, else stays shared.
pub fn grow_partition(f: &Isf, gate: GateKind, seed_a: VarSet, seed_b: VarSet) -> Partition {
    let n = f.num_vars();
    let rest_of = |a: &VarSet, b: &VarSet| {
        VarSet::from_indices(
            &(0..n).filter(|&v| !a.contains(v) && !b.contains(v)).collect::<Vec<_>>(),
        )
    };
    let mut a = seed_a;
    let mut b = seed_b;
    debug_assert!(
        check_strong(f, gate, &Partition::new(a, b, rest_of(&a, &b))).is_some(),
        "seed partition must be decomposable"
    );
    for x in 0..n {
        if a.contains(x) || b.contains(x) {
            continue;
        }
        let mut ta = a;
        ta.insert(x);
        if check_strong(f, gate, &Partition::new(ta, b, rest_of(&ta, &b))).is_some() {
            a = ta;
            continue;
        }
        let mut tb = b;
        tb.insert(x);
        if check_strong(f, gate, &Partition::new(a, tb, rest_of(&a, &tb))).is_some() {
            b = tb;
        }
    }
    Partition::new(a, b, rest_of(&a, &b))
}

/// Quality of a partition: balanced, large dedicated blocks win. The smaller
/// block is weighted by the variable count so growing it always dominates
/// growing the larger one.
pub fn score(part: &Partition, num_vars: usize) -> u64 {
    let x = part.a.len().min(part.b.len()) as u64;
    let y = part.a.len().max(part.b.len()) as u64;
    num_vars as u64 * x + y
}

/// Finds the best decomposition of `f`: the highest-scoring strong split
/// over all three gates (ties: AND, then OR, then XOR), else the weak split
/// with the largest gain (ties: OR before AND, then the lowest variable),
/// else a Shannon cofactor step on the variable with the most balanced care
/// counts.
pub fn bidecompose(f: &Isf) -> DecompResult {
    let n = f.num_vars();
    assert!(n > 2, "bi-decomposition needs more than two variables");

    let mut best: Option<(u64, GateKind, Partition)> = None;
    for gate in [GateKind::And, GateKind::Or, GateKind::Xor] {
        if let Some((i, j)) = find_initial_pair(f, gate) {
            let part = grow_partition(f, gate, VarSet::single(i), VarSet::single(j));
            let sc = score(&part, n);
            if best.as_ref().map_or(true, |&(b, _, _)| sc > b) {
                best = Some((sc, gate, part));
            }
        }
    }
    if let Some((_, gate, part)) = best {
        let (r, h) = check_strong(f, gate, &part).expect("grown partition stays decomposable");
        return DecompResult::Strong(StrongDecomp { gate, partition: part, r, h });
    }

    let mut best_weak: Option<WeakDecomp> = None;
    for gate in [GateKind::Or, GateKind::And] {
        for v in 0..n {
            if let Some(w) = weak_decompose(f, gate, VarSet::single(v)) {
                if best_weak.as_ref().map_or(true, |cur| w.gain > cur.gain) {
                    best_weak = Some(w);
                }
            }
        }
    }
    if let Some(w) = best_weak {
        return DecompResult::Weak(w);
    }

    let mut var = 0;
    let mut best_diff = usize::MAX;
    for v in 0..n {
        let d = f.cofactor(v, false).care_count().abs_diff(f.cofactor(v, true).care_count());
        if d < best_diff {
            best_diff = d;
            var = v;
        }
    }
    DecompResult::Shannon { var, f0: f.cofactor(var, false), f1: f.cofactor(var, true) }
}

/// Cell cost of each fully specified two-variable function, indexed by truth
/// table (bit k = value at x = k&1, y = k>>1). Constants and single wires are
/// free; a bare gate costs one; a gate plus an inverter costs two.
pub(crate) const LEAF2_COST: [u8; 16] = [0, 2, 2, 1, 2, 1, 1, 2, 1, 2, 0, 2, 0, 2, 1, 0];

/// Cheapest completion of a function with at most two variables, as a truth
/// table over its own variable order (bit k = value at minterm k). Ties go to
/// the numerically smallest table.
pub(crate) fn best_leaf_completion(f: &Isf) -> u32 {
    let n = f.num_vars();
    assert!(n <= 2, "leaf completion is only defined up to two variables");
    let size = 1u32 << n;
    let mut fixed = 0u32;
    let mut free = Vec::new();
    for m in 0..size {
        if f.is_on(m) {
            fixed |= 1 << m;
        } else if f.is_dc(m) {
            free.push(m);
        }
    }
    let cost_of = |t: u32| -> u8 {
        match n {
            2 => LEAF2_COST[t as usize],
            // One variable: wire or constant is free, an inverter costs one.
            1 => u8::from(t == 0b01),
            _ => 0,
        }
    };
    let mut best_t = 0u32;
    let mut best_cost = u8::MAX;
    for choice in 0..(1u32 << free.len()) {
        let mut t = fixed;
        for (k, &m) in free.iter().enumerate() {
            if (choice >> k) & 1 == 1 {
                t |= 1 << m;
            }
        }
        let c = cost_of(t);
        if c < best_cost || (c == best_cost && t < best_t) {
            best_cost = c;
            best_t = t;
        }
    }
    best_t
}

/// Emits the cheapest completion of a shrunk leaf (at most two variables)
/// into `nl`, wired to the existing cells `drv`. Returns the driving cell,
/// which for wire-like tables is one of the `drv` cells itself.
fn emit_leaf(g: &Isf, drv: &[usize], nl: &mut Netlist) -> usize {
    debug_assert_eq!(g.num_vars(), drv.len());
    let t = best_leaf_completion(g);
    match g.num_vars() {
        0 => nl.add_cell(CellKind::Const(t & 1 == 1), vec![]),
        1 => match t {
            0b00 => nl.add_cell(CellKind::Const(false), vec![]),
            0b11 => nl.add_cell(CellKind::Const(true), vec![]),
            0b10 => drv[0],
            _ => nl.add_cell(CellKind::Not, vec![drv[0]]),
        },
        _ => emit_leaf2(t, drv[0], drv[1], nl),
    }
}

fn emit_leaf2(t: u32, x: usize, y: usize, nl: &mut Netlist) -> usize {
    use CellKind::{And2, Const, Not, Or2, Xor2};
    match t {
        0x0 => nl.add_cell(Const(false), vec![]),
        0xF => nl.add_cell(Const(true), vec![]),
        0xA => x,
        0xC => y,
        0x5 => nl.add_cell(Not, vec![x]),
        0x3 => nl.add_cell(Not, vec![y]),
        0x8 => nl.add_cell(And2, vec![x, y]),
        0xE => nl.add_cell(Or2, vec![x, y]),
        0x6 => nl.add_cell(Xor2, vec![x, y]),
        0x1 => {
            let c = nl.add_cell(Or2, vec![x, y]);
            nl.add_cell(Not, vec![c])
        }
        0x7 => {
            let c = nl.add_cell(And2, vec![x, y]);
            nl.add_cell(Not, vec![c])
        }
        0x9 => {
            let c = nl.add_cell(Xor2, vec![x, y]);
            nl.add_cell(Not, vec![c])
        }
        0x2 => {
            let ny = nl.add_cell(Not, vec![y]);
            nl.add_cell(And2, vec![x, ny])
        }
        0x4 => {
            let nx = nl.add_cell(Not, vec![x]);
            nl.add_cell(And2, vec![nx, y])
        }
        0xB => {
            let ny = nl.add_cell(Not, vec![y]);
            nl.add_cell(Or2, vec![x, ny])
        }
        0xD => {
            let nx = nl.add_cell(Not, vec![x]);
            nl.add_cell(Or2, vec![nx, y])
        }
        _ => unreachable!("two-variable tables fit in four bits"),
    }
}

/// Synthesizes a function with at most two support variables as a standalone
/// netlist: the cheapest completion realized with at most one gate and one
/// inverter.
pub fn leaf_synth(f: &Isf) -> Netlist {
    let mut nl = Netlist::new(f.var_names().to_vec());
    let (g, kept) = f.shrink_to_support();
    assert!(g.num_vars() <= 2, "leaf synthesis takes at most two support variables");
    // Input cell ids coincide with variable indices.
    let id = emit_leaf(&g, &kept, &mut nl);
    nl.add_output("f", id);
    nl
}

pub(crate) fn gate_cell(gate: GateKind) -> CellKind {
    match gate {
        GateKind::And => CellKind::And2,
        GateKind::Or => CellKind::Or2,
        GateKind::Xor => CellKind::Xor2,
    }
}

/// Shared bookkeeping of one synthesis run: the option block plus a step
/// counter enforcing the configured resource caps.
pub(crate) struct SynthCtx<'a> {
    pub(crate) opts: &'a SynthOptions,
    pub(crate) steps: usize,
}

impl SynthCtx<'_> {
    pub(crate) fn new(opts: &SynthOptions) -> SynthCtx<'_> {
        SynthCtx { opts, steps: 0 }
    }

    pub(crate) fn step(&mut self, nl: &Netlist) -> Result<()> {
        self.steps += 1;
        if self.steps > self.opts.max_steps {
            return Err(Error::ResourceCap { resource: "decomposition steps", limit: self.opts.max_steps });
        }
        if nl.num_cells() > self.opts.max_cells {
            return Err(Error::ResourceCap { resource: "netlist cells", limit: self.opts.max_cells });
        }
        Ok(())
    }
}

/// Recursive synthesis of one function into `nl`. `drivers[v]` is the cell
/// that carries variable `v` of `f`. Returns the driving cell of the result.
pub(crate) fn synth_isf(f: &Isf, drivers: &[usize], nl: &mut Netlist, ctx: &mut SynthCtx) -> Result<usize> {
    ctx.step(nl)?;
    debug_assert_eq!(drivers.len(), f.num_vars());
    let (g, kept) = f.shrink_to_support();
    let drv: Vec<usize> = kept.iter().map(|&v| drivers[v]).collect();
    if g.num_vars() <= 2 {
        return Ok(emit_leaf(&g, &drv, nl));
    }
    match bidecompose(&g) {
        DecompResult::Strong(d) => {
            let r_drv: Vec<usize> = d.partition.r_vars().iter().map(|&v| drv[v]).collect();
            let h_drv: Vec<usize> = d.partition.h_vars().iter().map(|&v| drv[v]).collect();
            let r_id = synth_isf(&d.r, &r_drv, nl, ctx)?;
            let h_id = synth_isf(&d.h, &h_drv, nl, ctx)?;
            Ok(nl.add_cell(gate_cell(d.gate), vec![r_id, h_id]))
        }
        DecompResult::Weak(w) => {
            let bv = w.b.iter().next().unwrap();
            let r_drv: Vec<usize> =
                (0..g.num_vars()).filter(|&v| v != bv).map(|v| drv[v]).collect();
            let r_id = synth_isf(&w.r, &r_drv, nl, ctx)?;
            let h_id = synth_isf(&w.h, &drv, nl, ctx)?;
            Ok(nl.add_cell(gate_cell(w.gate), vec![r_id, h_id]))
        }
        DecompResult::Shannon { var, f0, f1 } => {
            let xv = drv[var];
            let mut c_drv = drv.clone();
            c_drv.remove(var);
            let f0_id = synth_isf(&f0, &c_drv, nl, ctx)?;
            let f1_id = synth_isf(&f1, &c_drv, nl, ctx)?;
            let nx = nl.add_cell(CellKind::Not, vec![xv]);
            let lo = nl.add_cell(CellKind::And2, vec![nx, f0_id]);
            let hi = nl.add_cell(CellKind::And2, vec![xv, f1_id]);
            Ok(nl.add_cell(CellKind::Or2, vec![lo, hi]))
        }
    }
}

/// Synthesizes `f` into a traditional (single-mode) netlist by recursive
/// bi-decomposition, then cleans it up. The one output is named `f`.
pub fn design(f: &Isf, opts: &SynthOptions) -> Result<Netlist> {
    let mut nl = Netlist::new(f.var_names().to_vec());
    let drivers: Vec<usize> = (0..f.num_vars()).collect();
    let mut ctx = SynthCtx::new(opts);
    let id = synth_isf(f, &drivers, &mut nl, &mut ctx)?;
    nl.add_output("f", id);
    Ok(cleanup(&nl))
}
