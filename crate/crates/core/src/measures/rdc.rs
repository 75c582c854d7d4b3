//! Randomized dependence coefficient.
//!
//! Score for non-linear dependence between two variables: the largest
//! canonical correlation between random sinusoidal projections of their
//! copula transformations. Each repetition redraws the projections; the
//! reported score is the median over repetitions, which tames projection
//! variance.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{max_canonical_correlation, Association, MeasureError};
use crate::seed::derived_rng;

/// Random-projection parameters for [`rdc`].
///
/// `scale` is the variance of the normal projection weights. Projection
/// phases are uniform on [-pi, pi]. Defaults follow the coefficient's
/// source description: k = 5, scale = 1/6, 5 repetitions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RdcParams {
    pub k: usize,
    pub scale: f64,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for RdcParams {
    fn default() -> Self {
        RdcParams {
            k: 5,
            scale: 1.0 / 6.0,
            repetitions: 5,
            seed: 0,
        }
    }
}

impl RdcParams {
    fn validate(&self) -> Result<(), MeasureError> {
        if self.k < 1 {
            return Err(MeasureError::BadParams("k must be >= 1".into()));
        }
        if !self.scale.is_finite() || self.scale <= 0.0 {
            return Err(MeasureError::BadParams("scale must be finite and > 0".into()));
        }
        if self.repetitions < 1 {
            return Err(MeasureError::BadParams("repetitions must be >= 1".into()));
        }
        Ok(())
    }
}

/// Empirical copula transform: each value is replaced by its average rank
/// divided by n, giving an order-preserving map into (0, 1].
pub fn copula_transform(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_unstable_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut out = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let avg_rank = (i + j + 2) as f64 / 2.0;
        for &orig in &idx[i..=j] {
            out[orig] = avg_rank / n as f64;
        }
        i = j + 1;
    }
    out
}

fn sinusoidal_features(
    u: &[f64],
    k: usize,
    scale: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<Vec<f64>> {
    let weight = Normal::new(0.0, scale.sqrt()).expect("valid sd");
    (0..k)
        .map(|_| {
            let w: f64 = weight.sample(rng);
            let phase: f64 = rng.gen_range(-PI..PI);
            u.iter().map(|&ui| (w * ui + phase).sin()).collect()
        })
        .collect()
}

/// Randomized dependence coefficient in [0, 1].
///
/// Copula-transforms both inputs, projects each through `params.k` random
/// sinusoids, and takes the largest canonical correlation between the two
/// projected sets, median-aggregated over `params.repetitions` redraws.
/// Deterministic given `params.seed`. A constant input scores 0 with the
/// degenerate flag set.
pub fn rdc(x: &[f64], y: &[f64], params: &RdcParams) -> Result<Association, MeasureError> {
    params.validate()?;
    if x.len() != y.len() {
        return Err(MeasureError::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < params.k + 2 {
        return Err(MeasureError::TooFewSamples {
            needed: params.k + 2,
            got: n,
        });
    }
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(x) || constant(y) {
        return Ok(Association::degenerate(0.0));
    }

    let u = copula_transform(x);
    let v = copula_transform(y);

    let mut scores = Vec::with_capacity(params.repetitions);
    for rep in 0..params.repetitions {
        let mut rng = derived_rng(params.seed, "rdc.rep", rep as u64);
        let a = sinusoidal_features(&u, params.k, params.scale, &mut rng);
        let b = sinusoidal_features(&v, params.k, params.scale, &mut rng);
        scores.push(max_canonical_correlation(&a, &b)?);
    }
    scores.sort_unstable_by(f64::total_cmp);
    let mid = scores.len() / 2;
    let median = if scores.len() % 2 == 1 {
        scores[mid]
    } else {
        0.5 * (scores[mid - 1] + scores[mid])
    };
    Ok(Association::ok(median))
}
