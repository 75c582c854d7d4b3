//! Gaussian naive Bayes classifier.

use super::EvalError;
use crate::dataset::Dataset;

/// Variance floor avoiding division by zero on near-constant features.
pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Per-class, per-feature Gaussian likelihoods with frequency priors.
#[derive(Debug, Clone)]
pub struct GaussianNb {
    log_prior: [f64; 2],
    mean: [Vec<f64>; 2],
    variance: [Vec<f64>; 2],
}

/// Fit class priors and per-feature Gaussian moments.
pub fn train_naive_bayes(data: &Dataset) -> Result<GaussianNb, EvalError> {
    if !data.has_both_classes() {
        return Err(EvalError::SingleClass);
    }
    let n = data.n_rows();
    let m = data.n_features();
    let counts = [
        data.labels().iter().filter(|&&y| y == 0).count(),
        data.labels().iter().filter(|&&y| y == 1).count(),
    ];

    let mut mean = [vec![0.0; m], vec![0.0; m]];
    let mut variance = [vec![0.0; m], vec![0.0; m]];
    for f in 0..m {
        let column = data.column(f);
        for (&v, &y) in column.iter().zip(data.labels()) {
            mean[usize::from(y)][f] += v;
        }
        for c in 0..2 {
            mean[c][f] /= counts[c] as f64;
        }
        for (&v, &y) in column.iter().zip(data.labels()) {
            let c = usize::from(y);
            let d = v - mean[c][f];
            variance[c][f] += d * d;
        }
        for c in 0..2 {
            variance[c][f] = (variance[c][f] / counts[c] as f64).max(VARIANCE_FLOOR);
        }
    }

    Ok(GaussianNb {
        log_prior: [
            (counts[0] as f64 / n as f64).ln(),
            (counts[1] as f64 / n as f64).ln(),
        ],
        mean,
        variance,
    })
}

impl GaussianNb {
    /// Posterior probability of class 1 per row.
    pub fn predict_proba(&self, data: &Dataset) -> Result<Vec<f64>, EvalError> {
        let m = self.mean[0].len();
        if data.n_features() != m {
            return Err(EvalError::LengthMismatch(data.n_features(), m));
        }
        let mut out = Vec::with_capacity(data.n_rows());
        for row in 0..data.n_rows() {
            let mut log_like = self.log_prior;
            for f in 0..m {
                let v = data.column(f)[row];
                for c in 0..2 {
                    let var = self.variance[c][f];
                    let d = v - self.mean[c][f];
                    log_like[c] += -0.5 * (2.0 * std::f64::consts::PI * var).ln()
                        - d * d / (2.0 * var);
                }
            }
            // Stable posterior P(1 | x) = 1 / (1 + exp(l0 - l1)).
            out.push(1.0 / (1.0 + (log_like[0] - log_like[1]).exp()));
        }
        Ok(out)
    }
}
