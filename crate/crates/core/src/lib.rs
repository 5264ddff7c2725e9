//! ridgenet: ridgelet transforms with respect to distributions.
//!
//! This crate implements the continuous ridgelet transform and its dual on
//! uniform lattices, admissibility diagnostics for (ridgelet, activation)
//! pairs, the discrete Radon transform with filtered backprojection, and
//! backprop-free synthesis of one-hidden-layer networks by discretizing the
//! dual reconstruction formula.
//!
//! The ridgelet functions are backprojection-filtered Gaussian derivatives
//! `Lambda^m G^(l)`; activations range from smooth bumps to unbounded
//! truncated powers (ReLU). A pair reconstructs `f` up to the admissibility
//! constant `K`, which [`admissibility::compute_k`] evaluates by adaptive
//! quadrature with a shrinking inner cutoff.

pub mod activations;
pub mod admissibility;
pub mod cli;
pub mod error;
pub mod grids;
pub mod io;
pub mod phantoms;
pub mod quad;
pub mod radon;
pub mod ridgelet;
pub mod special;

pub use activations::{ActivationSpec, FourierData};
pub use admissibility::{
    compute_k, construct_admissible, diagnose_table, AdmissibilityReport, Classification,
};
pub use error::{Error, Result};
pub use grids::{
    linspace, relative_l2_error, relative_l2_error_image, relative_l2_error_interior, Grid1D,
    ParamGrid, RidgeletCoefficients, SampledImage, SampledSignal,
};
pub use ridgelet::{NetworkDescription, RidgeletSpec};

/// Deterministic pairwise (fixed-tree) summation. The reduction shape
/// depends only on the input length, so results are identical across worker
/// counts.
pub fn pairwise_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    fn reduce(v: &[f64]) -> f64 {
        if v.len() <= 8 {
            let mut acc = 0.0;
            for x in v {
                acc += x;
            }
            acc
        } else {
            let mid = v.len() / 2;
            reduce(&v[..mid]) + reduce(&v[mid..])
        }
    }
    let v: Vec<f64> = values.into_iter().collect();
    reduce(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_sequential_on_small_inputs() {
        let v: Vec<f64> = (0..100).map(|i| (i as f64).sin()).collect();
        let seq: f64 = v.iter().sum();
        assert!((pairwise_sum(v) - seq).abs() < 1e-12);
    }
}
