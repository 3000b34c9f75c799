//! Incompletely specified Boolean functions and two-mode function pairs.
//!
//! An [`Isf`] stores disjoint on/off minterm sets over all 2^n assignments;
//! anything in neither set is a don't-care. Minterm index bit `i` is the
//! value of variable `i`, so variable 0 is the least significant bit.
//! A [`PolyFunction`] is a pair of [`Isf`]s over the same variables: what the
//! circuit must compute in mode 1 and in mode 2.

use crate::bits::Bits;
use crate::error::Error;
use crate::{Result, MAX_VARS};

/// An ordered set of variable indices, iterated ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u32);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn single(v: usize) -> Self {
        debug_assert!(v < 32);
        VarSet(1 << v)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut s = VarSet::empty();
        for &v in indices {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 32);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u32 << v);
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 32 && (self.0 >> v) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32usize).filter(move |&v| (self.0 >> v) & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VarSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// How [`Isf::complete`] fills don't-cares.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompletionPolicy {
    AllZero,
    AllOne,
    /// For functions with at most two support variables, pick the completion
    /// realizable with the fewest cells from the two-variable gate library.
    /// Falls back to `AllZero` beyond two support variables.
    NearestGate,
}

/// An incompletely specified function: disjoint on and off minterm sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Isf {
    names: Vec<String>,
    on: Bits,
    off: Bits,
}

impl Isf {
    /// Empty (all don't-care) function over named variables.
    pub fn new(names: Vec<String>) -> Result<Isf> {
        let n = names.len();
        if n > MAX_VARS {
            return Err(Error::TooManyVars {
                requested: n,
                cap: MAX_VARS,
            });
        }
        Ok(Isf {
            names,
            on: Bits::new(n),
            off: Bits::new(n),
        })
    }

    /// Empty function over `x1..xn`.
    pub fn with_num_vars(n: usize) -> Result<Isf> {
        Isf::new(default_names(n))
    }

    /// Fully specified function from a predicate on minterm indices.
    pub fn fully_specified(names: Vec<String>, f: impl Fn(u32) -> bool) -> Result<Isf> {
        let mut isf = Isf::new(names)?;
        for m in 0..isf.num_minterms() as u32 {
            if f(m) {
                isf.on.set(m);
            } else {
                isf.off.set(m);
            }
        }
        Ok(isf)
    }

    pub(crate) fn from_bits(names: Vec<String>, on: Bits, off: Bits) -> Isf {
        debug_assert_eq!(on.num_vars(), names.len());
        debug_assert_eq!(off.num_vars(), names.len());
        debug_assert!(!on.intersects(&off), "on and off sets overlap");
        Isf { names, on, off }
    }

    pub(crate) fn renamed(&self, names: Vec<String>) -> Isf {
        Isf::from_bits(names, self.on.clone(), self.off.clone())
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_minterms(&self) -> usize {
        1usize << self.num_vars()
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn is_on(&self, m: u32) -> bool {
        self.on.get(m)
    }

    pub fn is_off(&self, m: u32) -> bool {
        self.off.get(m)
    }

    pub fn is_dc(&self, m: u32) -> bool {
        !self.is_on(m) && !self.is_off(m)
    }

    /// Marks a minterm as an on-point. Panics if it is already off.
    pub fn set_on(&mut self, m: u32) {
        assert!(!self.off.get(m), "minterm {m} is already an off-point");
        self.on.set(m);
    }

    /// Marks a minterm as an off-point. Panics if it is already on.
    pub fn set_off(&mut self, m: u32) {
        assert!(!self.on.get(m), "minterm {m} is already an on-point");
        self.off.set(m);
    }

    /// Demotes a minterm to don't-care.
    pub fn set_dc(&mut self, m: u32) {
        self.on.clear(m);
        self.off.clear(m);
    }

    pub fn on_count(&self) -> usize {
        self.on.count()
    }

    pub fn off_count(&self) -> usize {
        self.off.count()
    }

    /// Number of care minterms (on plus off).
    pub fn care_count(&self) -> usize {
        self.on.count() + self.off.count()
    }

    pub fn iter_on(&self) -> impl Iterator<Item = u32> + '_ {
        self.on.iter_ones()
    }

    pub fn iter_off(&self) -> impl Iterator<Item = u32> + '_ {
        self.off.iter_ones()
    }

    /// Swaps the on and off sets.
    pub fn complemented(&self) -> Isf {
        Isf {
            names: self.names.clone(),
            on: self.off.clone(),
            off: self.on.clone(),
        }
    }

    /// Restriction of the function to `v = val`, over n-1 variables with the
    /// remaining indices compacted in order. Panics if `v` is out of range.
    pub fn cofactor(&self, v: usize, val: bool) -> Isf {
        let n = self.num_vars();
        assert!(v < n, "variable index {v} out of range for {n}-variable function");
        let mut names = self.names.clone();
        names.remove(v);
        let mut on = Bits::new(n - 1);
        let mut off = Bits::new(n - 1);
        let low = (1u32 << v) - 1;
        let vbit = (val as u32) << v;
        for rm in 0..(1u32 << (n - 1)) {
            let m = (rm & low) | ((rm & !low) << 1) | vbit;
            if self.on.get(m) {
                on.set(rm);
            }
            if self.off.get(m) {
                off.set(rm);
            }
        }
        Isf { names, on, off }
    }

    /// Universal quantification: the result (over the remaining variables,
    /// compacted in order) is on where every extension over `vars` is on, and
    /// off where some extension is off.
    pub fn forall_quant(&self, vars: &VarSet) -> Isf {
        self.quantify(vars, true)
    }

    /// Existential quantification: on where some extension is on, off where
    /// every extension is off.
    pub fn exists_quant(&self, vars: &VarSet) -> Isf {
        self.quantify(vars, false)
    }

    fn quantify(&self, vars: &VarSet, universal: bool) -> Isf {
        let n = self.num_vars();
        for v in vars.iter() {
            assert!(v < n, "variable index {v} out of range for {n}-variable function");
        }
        if vars.is_empty() {
            return self.clone();
        }
        let q = vars.to_vec();
        let rest: Vec<usize> = (0..n).filter(|v| !vars.contains(*v)).collect();
        let scat_q = scatter_table(&q);
        let scat_rest = scatter_table(&rest);
        let names: Vec<String> = rest.iter().map(|&v| self.names[v].clone()).collect();
        let mut on = Bits::new(rest.len());
        let mut off = Bits::new(rest.len());
        for (ri, &base) in scat_rest.iter().enumerate() {
            let mut all_on = true;
            let mut all_off = true;
            let mut any_on = false;
            let mut any_off = false;
            for &sq in &scat_q {
                let m = base | sq;
                let o = self.on.get(m);
                let z = self.off.get(m);
                all_on &= o;
                all_off &= z;
                any_on |= o;
                any_off |= z;
            }
            if universal {
                if all_on {
                    on.set(ri as u32);
                } else if any_off {
                    off.set(ri as u32);
                }
            } else {
                if any_on {
                    on.set(ri as u32);
                } else if all_off {
                    off.set(ri as u32);
                }
            }
        }
        Isf {
            names,
            on,
            off,
        }
    }

    /// Variables some care point actually depends on: `v` is in the support
    /// when its two cofactors disagree on a shared care minterm.
    pub fn support(&self) -> VarSet {
        let mut s = VarSet::empty();
        for v in 0..self.num_vars() {
            if Bits::conflict_across_var(&self.on, &self.off, v)
                || Bits::conflict_across_var(&self.off, &self.on, v)
            {
                s.insert(v);
            }
        }
        s
    }

    /// True when the two functions admit a common completion: no minterm is
    /// on in one and off in the other.
    pub fn equal_on_care(&self, other: &Isf) -> bool {
        assert_eq!(
            self.num_vars(),
            other.num_vars(),
            "equal_on_care needs functions over the same variable count"
        );
        !self.on.intersects(&other.off) && !self.off.intersects(&other.on)
    }

    /// `Some(bit)` when the function is care-equal to a constant. An all
    /// don't-care function reports `Some(false)`.
    pub fn is_constant(&self) -> Option<bool> {
        match (self.on.any(), self.off.any()) {
            (false, _) => Some(false),
            (true, false) => Some(true),
            (true, true) => None,
        }
    }

    /// Fills every don't-care according to the policy.
    pub fn complete(&self, policy: CompletionPolicy) -> Isf {
        match policy {
            CompletionPolicy::AllZero => Isf {
                names: self.names.clone(),
                on: self.on.clone(),
                off: self.on.complement(),
            },
            CompletionPolicy::AllOne => Isf {
                names: self.names.clone(),
                on: self.off.complement(),
                off: self.off.clone(),
            },
            CompletionPolicy::NearestGate => {
                let sup = self.support();
                if sup.len() > 2 {
                    return self.complete(CompletionPolicy::AllZero);
                }
                let kept = sup.to_vec();
                let (reduced, _) = self.shrink_to_support();
                let table = crate::bidecomp::best_leaf_completion(&reduced);
                let scat = scatter_table(&kept);
                let names = self.names.clone();
                let mut out = Isf::new(names).expect("var count already validated");
                for m in 0..self.num_minterms() as u32 {
                    let mut idx = 0usize;
                    for (k, &_v) in kept.iter().enumerate() {
                        if m & scat[1 << k] != 0 {
                            idx |= 1 << k;
                        }
                    }
                    if (table >> idx) & 1 == 1 {
                        out.on.set(m);
                    } else {
                        out.off.set(m);
                    }
                }
                debug_assert!(self.equal_on_care(&out));
                out
            }
        }
    }

    /// Drops every non-support variable, merging the compatible cofactors.
    /// Returns the reduced function and the kept original indices.
    pub(crate) fn shrink_to_support(&self) -> (Isf, Vec<usize>) {
        let mut cur = self.clone();
        let mut kept: Vec<usize> = (0..self.num_vars()).collect();
        // Dropping one variable can put another back into the support (the
        // don't-cares that made it redundant may get pinned), so re-check
        // after every drop instead of batching them.
        loop {
            let sup = cur.support();
            if sup.len() == cur.num_vars() {
                return (cur, kept);
            }
            let v = (0..cur.num_vars()).rev().find(|&v| !sup.contains(v)).unwrap();
            cur = cur.drop_var(v);
            kept.remove(v);
        }
    }

    /// Removes a non-support variable by merging its two cofactors.
    pub(crate) fn drop_var(&self, v: usize) -> Isf {
        let lo = self.cofactor(v, false);
        let hi = self.cofactor(v, true);
        let mut on = lo.on.clone();
        on.union_with(&hi.on);
        let mut off = lo.off.clone();
        off.union_with(&hi.off);
        debug_assert!(!on.intersects(&off), "dropping a support variable");
        Isf {
            names: lo.names,
            on,
            off,
        }
    }
}

impl std::fmt::Debug for Isf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.num_vars();
        write!(f, "Isf[{}]", self.names.join(","))?;
        if n <= 6 {
            write!(f, " ")?;
            for m in 0..self.num_minterms() as u32 {
                let c = if self.is_on(m) {
                    '1'
                } else if self.is_off(m) {
                    '0'
                } else {
                    '-'
                };
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            write!(
                f,
                " on={} off={} dc={}",
                self.on_count(),
                self.off_count(),
                self.num_minterms() - self.care_count()
            )
        }
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Scatter table for a variable group: entry `i` places bit `k` of `i` at
/// minterm position `positions[k]`.
pub(crate) fn scatter_table(positions: &[usize]) -> Vec<u32> {
    let k = positions.len();
    let mut t = vec![0u32; 1usize << k];
    for idx in 1..t.len() {
        let lb = idx.trailing_zeros() as usize;
        t[idx] = t[idx & (idx - 1)] | (1u32 << positions[lb]);
    }
    t
}

/// The pair of functions a polymorphic circuit must realize: `mode1` with the
/// mode signal low, `mode2` with it high. Both are over the same variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyFunction {
    pub mode1: Isf,
    pub mode2: Isf,
}

impl PolyFunction {
    pub fn new(mode1: Isf, mode2: Isf) -> Result<PolyFunction> {
        if mode1.num_vars() != mode2.num_vars() || mode1.var_names() != mode2.var_names() {
            return Err(Error::ModeArityMismatch {
                inputs1: mode1.num_vars(),
                outputs1: 1,
                inputs2: mode2.num_vars(),
                outputs2: 1,
            });
        }
        Ok(PolyFunction { mode1, mode2 })
    }

    pub fn num_vars(&self) -> usize {
        self.mode1.num_vars()
    }

    pub fn var_names(&self) -> &[String] {
        self.mode1.var_names()
    }

    /// Union of the per-mode supports.
    pub fn support(&self) -> VarSet {
        self.mode1.support().union(&self.mode2.support())
    }

    pub fn care_count(&self) -> usize {
        self.mode1.care_count() + self.mode2.care_count()
    }

    /// True when both modes admit a common completion, i.e. the pair can be
    /// realized by an ordinary single-mode circuit.
    pub fn modes_equal_on_care(&self) -> bool {
        self.mode1.equal_on_care(&self.mode2)
    }

    /// Tightest single function realizing both modes. Panics unless
    /// [`modes_equal_on_care`](Self::modes_equal_on_care) holds.
    pub fn combined(&self) -> Isf {
        assert!(self.modes_equal_on_care(), "modes disagree on a care point");
        let mut on = self.mode1.on.clone();
        on.union_with(&self.mode2.on);
        let mut off = self.mode1.off.clone();
        off.union_with(&self.mode2.off);
        Isf::from_bits(self.mode1.names.clone(), on, off)
    }
}

/// Folds the mode signal into the function as one extra variable, appended
/// with the highest index: the low half of the new table is mode 1, the high
/// half mode 2.
pub fn merge_modes(pf: &PolyFunction) -> Result<Isf> {
    let n = pf.num_vars();
    if n + 1 > MAX_VARS {
        return Err(Error::TooManyVars {
            requested: n + 1,
            cap: MAX_VARS,
        });
    }
    let mut names = pf.mode1.names.clone();
    names.push(fresh_mode_name(&names));
    let on = pf.mode1.on.concat(&pf.mode2.on);
    let off = pf.mode1.off.concat(&pf.mode2.off);
    Ok(Isf { names, on, off })
}

/// Inverse of [`merge_modes`]: cofactors at the mode variable. Works for any
/// variable index; panics when it is out of range.
pub fn split_modes(f: &Isf, mode_var: usize) -> PolyFunction {
    PolyFunction {
        mode1: f.cofactor(mode_var, false),
        mode2: f.cofactor(mode_var, true),
    }
}

/// A named multi-output single-mode specification. Every output is a
/// function over the same input variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleSpec {
    pub var_names: Vec<String>,
    pub outputs: Vec<(String, Isf)>,
}

impl SingleSpec {
    pub fn new(var_names: Vec<String>, outputs: Vec<(String, Isf)>) -> Result<SingleSpec> {
        for (name, f) in &outputs {
            if f.var_names() != var_names.as_slice() {
                return Err(Error::MalformedSpec(format!(
                    "output {name} is over different variables than the specification"
                )));
            }
        }
        Ok(SingleSpec { var_names, outputs })
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }
}

/// A named multi-output two-mode specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpec {
    pub var_names: Vec<String>,
    pub outputs: Vec<(String, PolyFunction)>,
}

impl PolySpec {
    pub fn new(var_names: Vec<String>, outputs: Vec<(String, PolyFunction)>) -> Result<PolySpec> {
        for (name, pf) in &outputs {
            if pf.var_names() != var_names.as_slice() {
                return Err(Error::MalformedSpec(format!(
                    "output {name} is over different variables than the specification"
                )));
            }
        }
        Ok(PolySpec { var_names, outputs })
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }
}

fn fresh_mode_name(names: &[String]) -> String {
    let mut candidate = "x0".to_string();
    let mut k = 0;
    while names.iter().any(|n| *n == candidate) {
        k += 1;
        candidate = format!("x0_{k}");
    }
    candidate
}
