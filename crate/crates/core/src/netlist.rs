//! Gate-level netlists with polymorphic cells.
//!
//! A netlist is a flat array of cells in topological order: every fanin
//! index points at an earlier cell. Cells are either ordinary gates
//! (NOT/AND/OR/XOR), constants, primary inputs, or polymorphic cells whose
//! behavior depends on a global mode signal: [`CellKind::Poly2`] computes a
//! different two-input gate per mode, [`CellKind::Poly1`] a different unary
//! op per mode, and [`CellKind::PolyConst`] a different constant per mode.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::boolfn::PolySpec;
use crate::error::Error;
use crate::Result;

/// A two-input gate choice inside a polymorphic cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Xor,
}

impl GateKind {
    pub const ALL: [GateKind; 3] = [GateKind::And, GateKind::Or, GateKind::Xor];

    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            GateKind::And => a && b,
            GateKind::Or => a || b,
            GateKind::Xor => a ^ b,
        }
    }

    fn apply64(self, a: u64, b: u64) -> u64 {
        match self {
            GateKind::And => a & b,
            GateKind::Or => a | b,
            GateKind::Xor => a ^ b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Xor => "XOR",
        }
    }

    fn from_name(s: &str) -> Option<GateKind> {
        match s {
            "AND" => Some(GateKind::And),
            "OR" => Some(GateKind::Or),
            "XOR" => Some(GateKind::Xor),
            _ => None,
        }
    }

    /// The unary op left over after fixing one input to a constant.
    pub fn partial(self, c: bool) -> UnaryOp {
        match (self, c) {
            (GateKind::And, false) => UnaryOp::Zero,
            (GateKind::And, true) => UnaryOp::Wire,
            (GateKind::Or, false) => UnaryOp::Wire,
            (GateKind::Or, true) => UnaryOp::One,
            (GateKind::Xor, false) => UnaryOp::Wire,
            (GateKind::Xor, true) => UnaryOp::Not,
        }
    }

    /// The unary op computed when both inputs are tied together.
    fn diagonal(self) -> UnaryOp {
        match self {
            GateKind::And | GateKind::Or => UnaryOp::Wire,
            GateKind::Xor => UnaryOp::Zero,
        }
    }

    /// The constant computed when the inputs are complements of each other.
    fn on_complements(self) -> bool {
        match self {
            GateKind::And => false,
            GateKind::Or | GateKind::Xor => true,
        }
    }
}

/// A one-input function choice inside a polymorphic cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum UnaryOp {
    Zero,
    One,
    Wire,
    Not,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [UnaryOp::Zero, UnaryOp::One, UnaryOp::Wire, UnaryOp::Not];

    pub fn apply(self, a: bool) -> bool {
        match self {
            UnaryOp::Zero => false,
            UnaryOp::One => true,
            UnaryOp::Wire => a,
            UnaryOp::Not => !a,
        }
    }

    fn apply64(self, a: u64) -> u64 {
        match self {
            UnaryOp::Zero => 0,
            UnaryOp::One => !0,
            UnaryOp::Wire => a,
            UnaryOp::Not => !a,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Zero => "ZERO",
            UnaryOp::One => "ONE",
            UnaryOp::Wire => "WIRE",
            UnaryOp::Not => "NOT",
        }
    }

    fn from_name(s: &str) -> Option<UnaryOp> {
        match s {
            "ZERO" => Some(UnaryOp::Zero),
            "ONE" => Some(UnaryOp::One),
            "WIRE" => Some(UnaryOp::Wire),
            "NOT" => Some(UnaryOp::Not),
            _ => None,
        }
    }

    fn is_const(self) -> bool {
        matches!(self, UnaryOp::Zero | UnaryOp::One)
    }

    fn const_value(self) -> bool {
        match self {
            UnaryOp::Zero => false,
            UnaryOp::One => true,
            _ => panic!("not a constant op"),
        }
    }

    /// The op computed when the input arrives through an inverter.
    fn absorb_not(self) -> UnaryOp {
        match self {
            UnaryOp::Wire => UnaryOp::Not,
            UnaryOp::Not => UnaryOp::Wire,
            c => c,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CellKind {
    /// Primary input number `i` (an index into the netlist's input names).
    Input(usize),
    Const(bool),
    Not,
    And2,
    Or2,
    Xor2,
    /// Two-input polymorphic cell: first gate in mode 1, second in mode 2.
    Poly2(GateKind, GateKind),
    /// One-input polymorphic cell.
    Poly1(UnaryOp, UnaryOp),
    /// Constant that differs per mode (a mode indicator when the two differ).
    PolyConst(bool, bool),
}

impl CellKind {
    pub fn arity(self) -> usize {
        match self {
            CellKind::Input(_) | CellKind::Const(_) | CellKind::PolyConst(..) => 0,
            CellKind::Not | CellKind::Poly1(..) => 1,
            CellKind::And2 | CellKind::Or2 | CellKind::Xor2 | CellKind::Poly2(..) => 2,
        }
    }

    /// Binary kinds viewed as a per-mode gate pair.
    pub(crate) fn gate_pair(self) -> Option<(GateKind, GateKind)> {
        match self {
            CellKind::And2 => Some((GateKind::And, GateKind::And)),
            CellKind::Or2 => Some((GateKind::Or, GateKind::Or)),
            CellKind::Xor2 => Some((GateKind::Xor, GateKind::Xor)),
            CellKind::Poly2(g1, g2) => Some((g1, g2)),
            _ => None,
        }
    }

    fn is_symmetric(self) -> bool {
        self.gate_pair().is_some()
    }
}

/// True for cells that count toward circuit size: inverters, two-input
/// gates, and every polymorphic cell. Inputs, plain constants, and
/// degenerate polymorphic cells that reduce to wires or constants are free.
pub fn cell_is_counted(kind: CellKind) -> bool {
    match kind {
        CellKind::Input(_) | CellKind::Const(_) => false,
        CellKind::Not | CellKind::And2 | CellKind::Or2 | CellKind::Xor2 => true,
        CellKind::Poly2(..) => true,
        CellKind::Poly1(u1, u2) => u1 != u2 || u1 == UnaryOp::Not,
        CellKind::PolyConst(b1, b2) => b1 != b2,
    }
}

/// True for cells whose behavior actually differs between the modes.
pub fn cell_is_poly(kind: CellKind) -> bool {
    match kind {
        CellKind::Poly2(g1, g2) => g1 != g2,
        CellKind::Poly1(u1, u2) => u1 != u2,
        CellKind::PolyConst(b1, b2) => b1 != b2,
        _ => false,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    pub kind: CellKind,
    pub fanin: Vec<usize>,
}

/// Size summary of a netlist under the counting rules of
/// [`cell_is_counted`] and [`cell_is_poly`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GateStats {
    pub total: usize,
    pub poly: usize,
}

impl GateStats {
    pub fn percent(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.poly as f64 / self.total as f64
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub cells: Vec<Cell>,
    pub outputs: Vec<(String, usize)>,
    pub mode_labels: [String; 2],
}

impl Netlist {
    /// Fresh netlist whose first cells are the primary inputs, in order.
    pub fn new(inputs: Vec<String>) -> Netlist {
        let cells = (0..inputs.len())
            .map(|i| Cell {
                kind: CellKind::Input(i),
                fanin: Vec::new(),
            })
            .collect();
        Netlist {
            inputs,
            cells,
            outputs: Vec::new(),
            mode_labels: ["mode1".into(), "mode2".into()],
        }
    }

    /// Appends a cell and returns its id. Panics on arity mismatch or a
    /// fanin that does not precede the new cell.
    pub fn add_cell(&mut self, kind: CellKind, fanin: Vec<usize>) -> usize {
        assert_eq!(kind.arity(), fanin.len(), "fanin count does not match {kind:?}");
        let id = self.cells.len();
        for &f in &fanin {
            assert!(f < id, "fanin {f} does not precede cell {id}");
        }
        if let CellKind::Input(i) = kind {
            assert!(i < self.inputs.len(), "input index {i} out of range");
        }
        self.cells.push(Cell { kind, fanin });
        id
    }

    pub fn add_output(&mut self, name: impl Into<String>, cell: usize) {
        assert!(cell < self.cells.len(), "output driver out of range");
        self.outputs.push((name.into(), cell));
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Structural invariants: toposorted fanins, correct arities, input and
    /// output references in range.
    pub fn validate(&self) -> Result<()> {
        for (id, cell) in self.cells.iter().enumerate() {
            if cell.fanin.len() != cell.kind.arity() {
                return Err(Error::MalformedNetlist(format!(
                    "cell {id} has {} fanins, {:?} takes {}",
                    cell.fanin.len(),
                    cell.kind,
                    cell.kind.arity()
                )));
            }
            for &f in &cell.fanin {
                if f >= id {
                    return Err(Error::MalformedNetlist(format!(
                        "cell {id} uses fanin {f}, which does not precede it"
                    )));
                }
            }
            if let CellKind::Input(i) = cell.kind {
                if i >= self.inputs.len() {
                    return Err(Error::MalformedNetlist(format!(
                        "cell {id} reads input {i} but there are only {}",
                        self.inputs.len()
                    )));
                }
            }
        }
        for (name, id) in &self.outputs {
            if *id >= self.cells.len() {
                return Err(Error::MalformedNetlist(format!(
                    "output {name} driven by nonexistent cell {id}"
                )));
            }
        }
        Ok(())
    }

    /// Evaluates every cell on 64 packed assignments at once. `inputs[i]`
    /// carries one bit per lane for primary input `i`.
    pub fn eval_cells64(&self, inputs: &[u64], mode2: bool) -> Vec<u64> {
        assert_eq!(inputs.len(), self.inputs.len(), "wrong number of input words");
        let mut vals = vec![0u64; self.cells.len()];
        for (id, cell) in self.cells.iter().enumerate() {
            let v = match cell.kind {
                CellKind::Input(i) => inputs[i],
                CellKind::Const(b) => {
                    if b {
                        !0
                    } else {
                        0
                    }
                }
                CellKind::Not => !vals[cell.fanin[0]],
                CellKind::And2 => vals[cell.fanin[0]] & vals[cell.fanin[1]],
                CellKind::Or2 => vals[cell.fanin[0]] | vals[cell.fanin[1]],
                CellKind::Xor2 => vals[cell.fanin[0]] ^ vals[cell.fanin[1]],
                CellKind::Poly2(g1, g2) => {
                    let g = if mode2 { g2 } else { g1 };
                    g.apply64(vals[cell.fanin[0]], vals[cell.fanin[1]])
                }
                CellKind::Poly1(u1, u2) => {
                    let u = if mode2 { u2 } else { u1 };
                    u.apply64(vals[cell.fanin[0]])
                }
                CellKind::PolyConst(b1, b2) => {
                    if if mode2 { b2 } else { b1 } {
                        !0
                    } else {
                        0
                    }
                }
            };
            vals[id] = v;
        }
        vals
    }

    /// Output words for 64 packed assignments, in output order.
    pub fn simulate64(&self, inputs: &[u64], mode2: bool) -> Vec<u64> {
        let vals = self.eval_cells64(inputs, mode2);
        self.outputs.iter().map(|&(_, id)| vals[id]).collect()
    }

    /// Output bits for a single assignment.
    pub fn simulate(&self, values: &[bool], mode2: bool) -> Vec<bool> {
        let words: Vec<u64> = values.iter().map(|&b| if b { 1 } else { 0 }).collect();
        self.simulate64(&words, mode2)
            .into_iter()
            .map(|w| w & 1 == 1)
            .collect()
    }

    /// Output bits for the assignment packed into a minterm index (bit `i`
    /// is the value of input `i`).
    pub fn simulate_minterm(&self, m: u32, mode2: bool) -> Vec<bool> {
        let values: Vec<bool> = (0..self.inputs.len()).map(|i| (m >> i) & 1 == 1).collect();
        self.simulate(&values, mode2)
    }

    pub fn stats(&self) -> GateStats {
        let mut total = 0;
        let mut poly = 0;
        for cell in &self.cells {
            if cell_is_counted(cell.kind) {
                total += 1;
            }
            if cell_is_poly(cell.kind) {
                poly += 1;
            }
        }
        GateStats { total, poly }
    }

    pub fn to_json(&self) -> String {
        let cells = self
            .cells
            .iter()
            .enumerate()
            .map(|(id, c)| CellJson {
                id,
                kind: kind_tag(c.kind),
                fanin: c.fanin.clone(),
            })
            .collect();
        let doc = NetlistJson {
            version: FORMAT_VERSION,
            inputs: self.inputs.clone(),
            mode_labels: self.mode_labels.clone(),
            cells,
            outputs: self
                .outputs
                .iter()
                .map(|(name, cell)| OutputJson {
                    name: name.clone(),
                    cell: *cell,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("netlist serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Netlist> {
        let doc: NetlistJson = serde_json::from_str(text)?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::MalformedNetlist(format!(
                "unsupported format version {} (expected {})",
                doc.version, FORMAT_VERSION
            )));
        }
        let mut cells = Vec::with_capacity(doc.cells.len());
        for (pos, cj) in doc.cells.iter().enumerate() {
            if cj.id != pos {
                return Err(Error::MalformedNetlist(format!(
                    "cell at position {pos} has id {}",
                    cj.id
                )));
            }
            cells.push(Cell {
                kind: parse_kind_tag(&cj.kind)?,
                fanin: cj.fanin.clone(),
            });
        }
        let nl = Netlist {
            inputs: doc.inputs,
            cells,
            outputs: doc.outputs.into_iter().map(|o| (o.name, o.cell)).collect(),
            mode_labels: doc.mode_labels,
        };
        nl.validate()?;
        Ok(nl)
    }

    /// Graphviz rendering. Polymorphic cells are labeled `mode1/mode2`.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph netlist {{");
        let _ = writeln!(s, "  rankdir=LR;");
        let _ = writeln!(
            s,
            "  label=\"modes: {} / {}\"; labelloc=top;",
            self.mode_labels[0], self.mode_labels[1]
        );
        for (id, cell) in self.cells.iter().enumerate() {
            let (label, shape, style) = match cell.kind {
                CellKind::Input(i) => (self.inputs[i].clone(), "box", ""),
                CellKind::Const(b) => (format!("{}", b as u8), "box", ""),
                CellKind::Not => ("NOT".to_string(), "ellipse", ""),
                CellKind::And2 => ("AND".to_string(), "ellipse", ""),
                CellKind::Or2 => ("OR".to_string(), "ellipse", ""),
                CellKind::Xor2 => ("XOR".to_string(), "ellipse", ""),
                CellKind::Poly2(g1, g2) => (
                    format!("{}/{}", g1.name(), g2.name()),
                    "ellipse",
                    ", style=filled, fillcolor=lightblue",
                ),
                CellKind::Poly1(u1, u2) => (
                    format!("{}/{}", u1.name(), u2.name()),
                    "ellipse",
                    ", style=filled, fillcolor=lightblue",
                ),
                CellKind::PolyConst(b1, b2) => (
                    format!("{}/{}", b1 as u8, b2 as u8),
                    "box",
                    ", style=filled, fillcolor=lightblue",
                ),
            };
            let _ = writeln!(s, "  c{id} [label=\"{label}\", shape={shape}{style}];");
            for &f in &cell.fanin {
                let _ = writeln!(s, "  c{f} -> c{id};");
            }
        }
        for (k, (name, id)) in self.outputs.iter().enumerate() {
            let _ = writeln!(s, "  o{k} [label=\"{name}\", shape=plaintext];");
            let _ = writeln!(s, "  c{id} -> o{k};");
        }
        let _ = writeln!(s, "}}");
        s
    }
}

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct NetlistJson {
    version: u32,
    inputs: Vec<String>,
    mode_labels: [String; 2],
    cells: Vec<CellJson>,
    outputs: Vec<OutputJson>,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    id: usize,
    kind: String,
    fanin: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OutputJson {
    name: String,
    cell: usize,
}

fn kind_tag(kind: CellKind) -> String {
    match kind {
        CellKind::Input(i) => format!("INPUT:{i}"),
        CellKind::Const(b) => format!("CONST:{}", b as u8),
        CellKind::Not => "NOT".to_string(),
        CellKind::And2 => "AND2".to_string(),
        CellKind::Or2 => "OR2".to_string(),
        CellKind::Xor2 => "XOR2".to_string(),
        CellKind::Poly2(g1, g2) => format!("POLY2:{}/{}", g1.name(), g2.name()),
        CellKind::Poly1(u1, u2) => format!("POLY1:{}/{}", u1.name(), u2.name()),
        CellKind::PolyConst(b1, b2) => format!(
            "POLYCONST:{}/{}",
            if b1 { "ONE" } else { "ZERO" },
            if b2 { "ONE" } else { "ZERO" }
        ),
    }
}

fn parse_kind_tag(tag: &str) -> Result<CellKind> {
    let bad = || Error::MalformedNetlist(format!("unknown cell kind {tag:?}"));
    let pair = |rest: &str| -> Option<(String, String)> {
        rest.split_once('/')
            .map(|(a, b)| (a.to_string(), b.to_string()))
    };
    if let Some(rest) = tag.strip_prefix("INPUT:") {
        return rest
            .parse::<usize>()
            .map(CellKind::Input)
            .map_err(|_| bad());
    }
    if let Some(rest) = tag.strip_prefix("CONST:") {
        return match rest {
            "0" => Ok(CellKind::Const(false)),
            "1" => Ok(CellKind::Const(true)),
            _ => Err(bad()),
        };
    }
    if let Some(rest) = tag.strip_prefix("POLY2:") {
        let (a, b) = pair(rest).ok_or_else(bad)?;
        return match (GateKind::from_name(&a), GateKind::from_name(&b)) {
            (Some(g1), Some(g2)) => Ok(CellKind::Poly2(g1, g2)),
            _ => Err(bad()),
        };
    }
    if let Some(rest) = tag.strip_prefix("POLY1:") {
        let (a, b) = pair(rest).ok_or_else(bad)?;
        return match (UnaryOp::from_name(&a), UnaryOp::from_name(&b)) {
            (Some(u1), Some(u2)) => Ok(CellKind::Poly1(u1, u2)),
            _ => Err(bad()),
        };
    }
    if let Some(rest) = tag.strip_prefix("POLYCONST:") {
        let (a, b) = pair(rest).ok_or_else(bad)?;
        let parse = |s: &str| match s {
            "ZERO" => Some(false),
            "ONE" => Some(true),
            _ => None,
        };
        return match (parse(&a), parse(&b)) {
            (Some(b1), Some(b2)) => Ok(CellKind::PolyConst(b1, b2)),
            _ => Err(bad()),
        };
    }
    match tag {
        "NOT" => Ok(CellKind::Not),
        "AND2" => Ok(CellKind::And2),
        "OR2" => Ok(CellKind::Or2),
        "XOR2" => Ok(CellKind::Xor2),
        _ => Err(bad()),
    }
}

/// Rewrites the netlist into a cheaper equivalent: degenerate polymorphic
/// cells become plain ones, constants are folded through gates, identical
/// structure is shared, double inversions vanish, and unreachable cells are
/// removed (primary inputs always stay). Per-mode behavior at every output
/// is preserved exactly.
pub fn cleanup(nl: &Netlist) -> Netlist {
    let mut cur = nl.clone();
    loop {
        let next = cleanup_pass(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn cleanup_pass(nl: &Netlist) -> Netlist {
    let mut b = RewriteBuilder::new(&nl.inputs);
    let mut map = vec![usize::MAX; nl.cells.len()];
    for (id, cell) in nl.cells.iter().enumerate() {
        map[id] = match cell.kind {
            CellKind::Input(i) => i,
            kind => {
                let fanin: Vec<usize> = cell.fanin.iter().map(|&f| map[f]).collect();
                b.emit(kind, fanin)
            }
        };
    }
    let interim = Netlist {
        inputs: nl.inputs.clone(),
        cells: b.cells,
        outputs: nl
            .outputs
            .iter()
            .map(|(name, id)| (name.clone(), map[*id]))
            .collect(),
        mode_labels: nl.mode_labels.clone(),
    };
    sweep_dead(&interim)
}

/// Removes cells not reachable from any output. Input cells always stay so
/// the interface of the netlist is preserved.
pub fn sweep_dead(nl: &Netlist) -> Netlist {
    let mut live = vec![false; nl.cells.len()];
    let mut stack: Vec<usize> = nl.outputs.iter().map(|&(_, id)| id).collect();
    while let Some(id) = stack.pop() {
        if live[id] {
            continue;
        }
        live[id] = true;
        stack.extend_from_slice(&nl.cells[id].fanin);
    }
    for (id, cell) in nl.cells.iter().enumerate() {
        if matches!(cell.kind, CellKind::Input(_)) {
            live[id] = true;
        }
    }
    let mut map = vec![usize::MAX; nl.cells.len()];
    let mut cells = Vec::new();
    for (id, cell) in nl.cells.iter().enumerate() {
        if live[id] {
            map[id] = cells.len();
            cells.push(Cell {
                kind: cell.kind,
                fanin: cell.fanin.iter().map(|&f| map[f]).collect(),
            });
        }
    }
    Netlist {
        inputs: nl.inputs.clone(),
        cells,
        outputs: nl
            .outputs
            .iter()
            .map(|(name, id)| (name.clone(), map[*id]))
            .collect(),
        mode_labels: nl.mode_labels.clone(),
    }
}

/// Strashing netlist builder with local rewrite rules applied on emit.
struct RewriteBuilder {
    cells: Vec<Cell>,
    strash: HashMap<(CellKind, Vec<usize>), usize>,
}

impl RewriteBuilder {
    fn new(inputs: &[String]) -> RewriteBuilder {
        let mut b = RewriteBuilder {
            cells: Vec::new(),
            strash: HashMap::new(),
        };
        for i in 0..inputs.len() {
            b.push(CellKind::Input(i), Vec::new());
        }
        b
    }

    fn kind(&self, id: usize) -> CellKind {
        self.cells[id].kind
    }

    fn push(&mut self, kind: CellKind, fanin: Vec<usize>) -> usize {
        let mut key_fanin = fanin.clone();
        if kind.is_symmetric() {
            key_fanin.sort_unstable();
        }
        if let Some(&id) = self.strash.get(&(kind, key_fanin.clone())) {
            return id;
        }
        let id = self.cells.len();
        self.cells.push(Cell { kind, fanin });
        self.strash.insert((kind, key_fanin), id);
        id
    }

    /// Adds a cell, first applying every local simplification. Returns the
    /// id computing the same per-mode function as the requested cell.
    fn emit(&mut self, kind: CellKind, fanin: Vec<usize>) -> usize {
        match kind {
            CellKind::Input(_) => panic!("inputs are seeded by the builder"),
            CellKind::Const(_) => self.push(kind, fanin),
            CellKind::PolyConst(b1, b2) if b1 == b2 => self.push(CellKind::Const(b1), Vec::new()),
            CellKind::PolyConst(..) => self.push(kind, fanin),
            CellKind::Not => self.emit_not(fanin[0]),
            CellKind::Poly1(u1, u2) => self.emit_poly1(u1, u2, fanin[0]),
            CellKind::And2 | CellKind::Or2 | CellKind::Xor2 | CellKind::Poly2(..) => {
                let (g1, g2) = kind.gate_pair().expect("binary kind");
                self.emit_gate2(g1, g2, fanin[0], fanin[1])
            }
        }
    }

    fn emit_not(&mut self, a: usize) -> usize {
        match self.kind(a) {
            CellKind::Const(b) => self.push(CellKind::Const(!b), Vec::new()),
            CellKind::PolyConst(b1, b2) => self.emit(CellKind::PolyConst(!b1, !b2), Vec::new()),
            CellKind::Not => self.cells[a].fanin[0],
            _ => self.push(CellKind::Not, vec![a]),
        }
    }

    fn emit_poly1(&mut self, u1: UnaryOp, u2: UnaryOp, a: usize) -> usize {
        if u1 == u2 {
            return match u1 {
                UnaryOp::Zero => self.push(CellKind::Const(false), Vec::new()),
                UnaryOp::One => self.push(CellKind::Const(true), Vec::new()),
                UnaryOp::Wire => a,
                UnaryOp::Not => self.emit_not(a),
            };
        }
        if u1.is_const() && u2.is_const() {
            return self.emit(
                CellKind::PolyConst(u1.const_value(), u2.const_value()),
                Vec::new(),
            );
        }
        match self.kind(a) {
            CellKind::Const(c) => {
                self.emit(CellKind::PolyConst(u1.apply(c), u2.apply(c)), Vec::new())
            }
            CellKind::PolyConst(b1, b2) => {
                self.emit(CellKind::PolyConst(u1.apply(b1), u2.apply(b2)), Vec::new())
            }
            CellKind::Not => {
                let target = self.cells[a].fanin[0];
                self.emit_poly1(u1.absorb_not(), u2.absorb_not(), target)
            }
            _ => self.push(CellKind::Poly1(u1, u2), vec![a]),
        }
    }

    fn emit_gate2(&mut self, g1: GateKind, g2: GateKind, a: usize, b: usize) -> usize {
        // Constant or per-mode-constant inputs reduce the cell to one input.
        for (x, y) in [(a, b), (b, a)] {
            match self.kind(x) {
                CellKind::Const(c) => {
                    return self.emit_poly1(g1.partial(c), g2.partial(c), y);
                }
                CellKind::PolyConst(c1, c2) => {
                    return self.emit_poly1(g1.partial(c1), g2.partial(c2), y);
                }
                _ => {}
            }
        }
        if a == b {
            return self.emit_poly1(g1.diagonal(), g2.diagonal(), a);
        }
        let complement = |s: &Self, x: usize, y: usize| {
            matches!(s.kind(x), CellKind::Not) && s.cells[x].fanin[0] == y
        };
        if complement(self, a, b) || complement(self, b, a) {
            return self.emit(
                CellKind::PolyConst(g1.on_complements(), g2.on_complements()),
                Vec::new(),
            );
        }
        let kind = if g1 == g2 {
            match g1 {
                GateKind::And => CellKind::And2,
                GateKind::Or => CellKind::Or2,
                GateKind::Xor => CellKind::Xor2,
            }
        } else {
            CellKind::Poly2(g1, g2)
        };
        self.push(kind, vec![a, b])
    }
}

/// How [`verify`] explores the assignment space.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Exhaustive sweep for up to this many inputs, random sampling above.
    pub exhaustive_limit: usize,
    /// Number of sampled assignments per mode (rounded up to a multiple of
    /// 64) when sampling.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 14,
            samples: 4096,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub output: String,
    /// True when the disagreement is in mode 2.
    pub mode2: bool,
    pub minterm: u32,
    pub got: bool,
    pub expected: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub exhaustive: bool,
    /// Input assignments evaluated (each is checked in both modes).
    pub assignments: u64,
    /// Disagreements found, capped at a small number per run.
    pub mismatches: Vec<Mismatch>,
}

const MISMATCH_CAP: usize = 16;

/// Checks the netlist against a two-mode specification, exhaustively when
/// the input count is small enough and by seeded random sampling otherwise.
/// Don't-care points never count as disagreements.
pub fn verify(nl: &Netlist, spec: &PolySpec, opts: &VerifyOptions) -> Result<VerifyReport> {
    if nl.inputs.len() != spec.num_vars() {
        return Err(Error::InputCountMismatch {
            expected: spec.num_vars(),
            got: nl.inputs.len(),
        });
    }
    if nl.outputs.len() != spec.outputs.len() {
        return Err(Error::MalformedSpec(format!(
            "netlist has {} outputs, specification has {}",
            nl.outputs.len(),
            spec.outputs.len()
        )));
    }
    for ((nname, _), (sname, _)) in nl.outputs.iter().zip(&spec.outputs) {
        if nname != sname {
            return Err(Error::MalformedSpec(format!(
                "output name mismatch: netlist has {nname:?} where specification has {sname:?}"
            )));
        }
    }
    let n = spec.num_vars();
    let mut report = VerifyReport {
        ok: true,
        exhaustive: n <= opts.exhaustive_limit,
        assignments: 0,
        mismatches: Vec::new(),
    };
    if report.exhaustive {
        let blocks = 1u64 << n.saturating_sub(6);
        for block in 0..blocks {
            let words: Vec<u64> = (0..n)
                .map(|v| {
                    if v < 6 {
                        LANE_PATTERN[v]
                    } else if (block >> (v - 6)) & 1 == 1 {
                        !0
                    } else {
                        0
                    }
                })
                .collect();
            let minterms: Vec<u32> = (0..64)
                .map(|lane| ((block * 64 + lane) % (1u64 << n)) as u32)
                .collect();
            check_block(nl, spec, &words, &minterms, &mut report);
            if report.mismatches.len() >= MISMATCH_CAP {
                break;
            }
        }
        report.assignments = 1 << n;
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
        let rounds = opts.samples.div_ceil(64).max(1);
        for _ in 0..rounds {
            let words: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
            let minterms: Vec<u32> = (0..64)
                .map(|lane| {
                    let mut m = 0u32;
                    for (v, w) in words.iter().enumerate() {
                        if (w >> lane) & 1 == 1 {
                            m |= 1 << v;
                        }
                    }
                    m
                })
                .collect();
            check_block(nl, spec, &words, &minterms, &mut report);
            if report.mismatches.len() >= MISMATCH_CAP {
                break;
            }
        }
        report.assignments = rounds as u64 * 64;
    }
    Ok(report)
}

/// First six input patterns of a 64-lane block: lane index bit `v` is the
/// value of variable `v`.
const LANE_PATTERN: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn check_block(
    nl: &Netlist,
    spec: &PolySpec,
    words: &[u64],
    minterms: &[u32],
    report: &mut VerifyReport,
) {
    for mode2 in [false, true] {
        let got = nl.simulate64(words, mode2);
        for (k, (name, pf)) in spec.outputs.iter().enumerate() {
            let isf = if mode2 { &pf.mode2 } else { &pf.mode1 };
            for (lane, &m) in minterms.iter().enumerate() {
                let bit = (got[k] >> lane) & 1 == 1;
                let expected = if isf.is_on(m) {
                    true
                } else if isf.is_off(m) {
                    false
                } else {
                    continue;
                };
                if bit != expected {
                    report.ok = false;
                    if report.mismatches.len() < MISMATCH_CAP {
                        report.mismatches.push(Mismatch {
                            output: name.clone(),
                            mode2,
                            minterm: m,
                            got: bit,
                            expected,
                        });
                    }
                }
            }
        }
    }
}
