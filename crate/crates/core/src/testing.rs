//! Seeded random function generators and a brute-force decomposition
//! oracle, shared by the test suites. Compiled for tests and under the
//! `test-support` feature only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bidecomp::Partition;
use crate::boolfn::{default_names, scatter_table, Isf, PolyFunction};
use crate::netlist::GateKind;

/// Random function over `x1..xn`: every minterm is on, off, or don't-care
/// with equal probability. Deterministic in the seed.
pub fn random_isf(n: usize, seed: u64) -> Isf {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut f = Isf::new(default_names(n)).expect("within the variable cap");
    for m in 0..(1u32 << n) {
        match rng.gen_range(0..3) {
            0 => f.set_on(m),
            1 => f.set_off(m),
            _ => {}
        }
    }
    f
}

/// Random two-mode function with independent modes over shared names.
pub fn random_poly_function(n: usize, seed: u64) -> PolyFunction {
    let mode1 = random_isf(n, seed);
    let mode2 = random_isf(n, seed ^ 0x9e37_79b9_7f4a_7c15);
    PolyFunction::new(mode1, mode2).expect("modes share names by construction")
}

/// Exhaustive existence check for `f = gate(r, h)` with `r` over the A and
/// shared variables and `h` over the B and shared variables: for every
/// assignment of the shared block, some table of r-values per A-row and
/// h-values per B-column must match `f` on its care set. Slices are
/// independent, so each is searched in isolation.
pub fn strong_oracle(f: &Isf, gate: GateKind, part: &Partition) -> bool {
    let scat_a = scatter_table(&part.a.to_vec());
    let scat_b = scatter_table(&part.b.to_vec());
    let scat_s = scatter_table(&part.s.to_vec());
    'slices: for &ms in &scat_s {
        for r_bits in 0u64..(1u64 << scat_a.len()) {
            'columns: for h_bits in 0u64..(1u64 << scat_b.len()) {
                for (i, &ma) in scat_a.iter().enumerate() {
                    for (j, &mb) in scat_b.iter().enumerate() {
                        let m = ms | ma | mb;
                        let v = gate.apply((r_bits >> i) & 1 == 1, (h_bits >> j) & 1 == 1);
                        if f.is_on(m) && !v || f.is_off(m) && v {
                            continue 'columns;
                        }
                    }
                }
                continue 'slices;
            }
        }
        return false;
    }
    true
}

/// All ordered partitions of `0..n` into nonempty A, nonempty B, and a
/// possibly empty shared block.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut kinds = vec![0u8; n];
    loop {
        let mut a = crate::VarSet::empty();
        let mut b = crate::VarSet::empty();
        let mut s = crate::VarSet::empty();
        for (v, &k) in kinds.iter().enumerate() {
            match k {
                0 => a.insert(v),
                1 => b.insert(v),
                _ => s.insert(v),
            }
        }
        if !a.is_empty() && !b.is_empty() {
            out.push(Partition::new(a, b, s));
        }
        let mut pos = 0;
        while pos < n && kinds[pos] == 2 {
            kinds[pos] = 0;
            pos += 1;
        }
        if pos == n {
            return out;
        }
        kinds[pos] += 1;
    }
}
