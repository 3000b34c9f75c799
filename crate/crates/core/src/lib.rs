//! Synthesis of polymorphic combinational circuits.
//!
//! A polymorphic circuit computes two different functions depending on a
//! global mode signal. Individual cells may be ordinary gates or polymorphic
//! cells that switch behavior with the mode. This crate provides:
//!
//! * truth-table level function representations with don't-cares ([`Isf`],
//!   [`PolyFunction`]),
//! * gate-level bi-decomposition of single functions ([`bidecomp`]),
//! * two synthesis flows for two-mode specifications: direct polymorphic
//!   bi-decomposition ([`polybidecomp`]) and post-synthesis transformation
//!   of a merged single-mode circuit ([`transform`]),
//! * a netlist data model with simulation, verification, JSON and DOT
//!   output ([`netlist`]),
//! * benchmark specification sources: PLA files and arithmetic generators
//!   ([`bench`]).

mod bits;

pub mod bench;
pub mod bidecomp;
pub mod boolfn;
pub mod error;
pub mod netlist;
pub mod polybidecomp;
#[cfg(any(test, feature = "test-support"))]
pub mod testing;
pub mod transform;

pub use bench::{
    gen_majority, gen_multiplier, gen_parity, gen_sorting_net, make_poly_spec, read_pla,
    write_pla,
};
pub use bidecomp::{bidecompose, DecompResult, Partition, StrongDecomp, WeakDecomp};
pub use boolfn::{
    merge_modes, split_modes, CompletionPolicy, Isf, PolyFunction, PolySpec, SingleSpec, VarSet,
};
pub use error::Error;
pub use netlist::{
    cell_is_counted, cell_is_poly, cleanup, verify, Cell, CellKind, GateKind, GateStats, Netlist,
    UnaryOp, VerifyOptions, VerifyReport,
};
pub use polybidecomp::{
    find_initial_variable, merge_and_decompose, poly_decomposition, poly_design,
    poly_design_spec, poly_leaf_synth, Merged, MergedChild, PolyStrong,
};
pub use transform::{cone_of, eliminate_x0, transform_design, transform_design_spec, Cone, TransformReport};

pub type Result<T> = std::result::Result<T, Error>;

/// Hard cap on variable counts; truth tables above this are not materialized.
pub const MAX_VARS: usize = 24;

/// Knobs shared by both synthesis flows.
#[derive(Clone, Debug)]
pub struct SynthOptions {
    /// Restrict the polymorphic seed search to cells whose two modes use
    /// different gates, instead of preferring same-gate seeds.
    pub g2_distinct: bool,
    /// Abort with a resource error when a netlist under construction
    /// exceeds this many cells.
    pub max_cells: usize,
    /// Abort with a resource error after this many decomposition steps.
    pub max_steps: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            g2_distinct: false,
            max_cells: 1 << 20,
            max_steps: 1 << 22,
        }
    }
}
