//! Workload builders shared by the criterion harness.
//!
//! Each builder pairs two generated functions of equal input and output
//! width into a two-mode specification.

use polysynth::{
    gen_majority, gen_multiplier, gen_parity, gen_sorting_net, make_poly_spec, PolySpec, Result,
};

/// n-input parity in mode 1, n-input majority in mode 2.
pub fn parity_majority(n: usize) -> Result<PolySpec> {
    make_poly_spec(&gen_parity(n)?, &gen_majority(n)?)
}

/// a x b multiplier in mode 1, a sorting network over the same inputs in
/// mode 2. Both sides have a+b inputs and a+b outputs.
pub fn multiplier_sorter(a_bits: usize, b_bits: usize) -> Result<PolySpec> {
    let mul = gen_multiplier(a_bits, b_bits)?;
    let sort = gen_sorting_net(a_bits + b_bits)?;
    make_poly_spec(&mul, &sort)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polysynth::{poly_design_spec, verify, SynthOptions, VerifyOptions};

    #[test]
    fn workloads_have_matching_shapes() {
        let pm = parity_majority(5).unwrap();
        assert_eq!(pm.var_names.len(), 5);
        assert_eq!(pm.outputs.len(), 1);

        let ms = multiplier_sorter(2, 3).unwrap();
        assert_eq!(ms.var_names.len(), 5);
        assert_eq!(ms.outputs.len(), 5);
    }

    #[test]
    fn workloads_synthesize_and_verify() {
        let spec = multiplier_sorter(2, 2).unwrap();
        let nl = poly_design_spec(&spec, &SynthOptions::default()).unwrap();
        let report = verify(&nl, &spec, &VerifyOptions::default()).unwrap();
        assert!(report.ok && report.exhaustive);
    }
}
