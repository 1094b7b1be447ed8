//! Many independent curves at once. With the `parallel` feature the work is
//! spread over rayon's pool; the sequential versions are always available and
//! produce identical, input-ordered output.

use crate::algebra::RingConfig;
use crate::error::Result;
use crate::invariants::CurveInput;
use crate::report::{analyze_input, AnalysisReport};
use crate::resolution::{resolve_ideal_text, BettiTable};

pub fn analyze_all_sequential(inputs: &[CurveInput]) -> Vec<Result<AnalysisReport>> {
    inputs.iter().cloned().map(analyze_input).collect()
}

pub fn betti_all_sequential(ideals: &[String], cfg: RingConfig) -> Vec<Result<BettiTable>> {
    ideals.iter().map(|text| resolve_ideal_text(text, cfg).map(|(_, b)| b)).collect()
}

#[cfg(feature = "parallel")]
pub fn analyze_all_parallel(inputs: &[CurveInput]) -> Vec<Result<AnalysisReport>> {
    use rayon::prelude::*;
    inputs.par_iter().cloned().map(analyze_input).collect()
}

#[cfg(feature = "parallel")]
pub fn betti_all_parallel(ideals: &[String], cfg: RingConfig) -> Vec<Result<BettiTable>> {
    use rayon::prelude::*;
    ideals.par_iter().map(|text| resolve_ideal_text(text, cfg).map(|(_, b)| b)).collect()
}

/// Parallel when the feature is on.
pub fn analyze_all(inputs: &[CurveInput]) -> Vec<Result<AnalysisReport>> {
    #[cfg(feature = "parallel")]
    return analyze_all_parallel(inputs);
    #[cfg(not(feature = "parallel"))]
    analyze_all_sequential(inputs)
}

pub fn betti_all(ideals: &[String], cfg: RingConfig) -> Vec<Result<BettiTable>> {
    #[cfg(feature = "parallel")]
    return betti_all_parallel(ideals, cfg);
    #[cfg(not(feature = "parallel"))]
    betti_all_sequential(ideals, cfg)
}
