//! L2-regularized logistic regression trained by batch gradient descent.
//!
//! Features are standardized to zero mean and unit variance using
//! training statistics, then a fixed budget of full-batch steps is run.
//! The fixed budget keeps timing comparisons fair and every run
//! deterministic; convergence is reported, not enforced.

use super::EvalError;
use crate::dataset::Dataset;

/// Fixed training budget.
pub const EPOCHS: usize = 500;
pub const LEARNING_RATE: f64 = 0.1;
pub const L2_STRENGTH: f64 = 1e-4;
const GRAD_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct LogisticRegression {
    weights: Vec<f64>,
    intercept: f64,
    feature_mean: Vec<f64>,
    feature_sd: Vec<f64>,
    pub converged: bool,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Mean negative log-likelihood plus L2 penalty on the weights (intercept
/// unpenalized), with its gradient. `columns` must already be standardized.
///
/// Returns `(loss, weight_gradient, intercept_gradient)`.
pub fn loss_and_gradient(
    columns: &[Vec<f64>],
    labels: &[u8],
    weights: &[f64],
    intercept: f64,
    l2: f64,
) -> (f64, Vec<f64>, f64) {
    let n = labels.len();
    let m = columns.len();
    let mut loss = 0.0;
    let mut grad_w = vec![0.0; m];
    let mut grad_b = 0.0;
    for i in 0..n {
        let mut z = intercept;
        for f in 0..m {
            z += weights[f] * columns[f][i];
        }
        let y = f64::from(labels[i]);
        // Stable -[y ln s + (1-y) ln(1-s)].
        loss += z.max(0.0) - z * y + (-z.abs()).exp().ln_1p();
        let residual = sigmoid(z) - y;
        grad_b += residual;
        for f in 0..m {
            grad_w[f] += residual * columns[f][i];
        }
    }
    let nf = n as f64;
    loss /= nf;
    grad_b /= nf;
    for f in 0..m {
        grad_w[f] /= nf;
        loss += 0.5 * l2 * weights[f] * weights[f];
        grad_w[f] += l2 * weights[f];
    }
    (loss, grad_w, grad_b)
}

/// Fit on `data` with the fixed budget. Non-convergence is flagged on the
/// returned model, never an error.
pub fn train_logreg(data: &Dataset) -> Result<LogisticRegression, EvalError> {
    if !data.has_both_classes() {
        return Err(EvalError::SingleClass);
    }
    let n = data.n_rows();
    let m = data.n_features();

    let mut feature_mean = vec![0.0; m];
    let mut feature_sd = vec![1.0; m];
    let mut standardized: Vec<Vec<f64>> = Vec::with_capacity(m);
    for f in 0..m {
        let column = data.column(f);
        let mean = column.iter().sum::<f64>() / n as f64;
        let var = column.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        let sd = if var > 0.0 { var.sqrt() } else { 1.0 };
        feature_mean[f] = mean;
        feature_sd[f] = sd;
        standardized.push(column.iter().map(|&v| (v - mean) / sd).collect());
    }

    let mut weights = vec![0.0; m];
    let mut intercept = 0.0;
    let mut converged = false;
    for _ in 0..EPOCHS {
        let (_, grad_w, grad_b) =
            loss_and_gradient(&standardized, data.labels(), &weights, intercept, L2_STRENGTH);
        let grad_norm = grad_w
            .iter()
            .chain(std::iter::once(&grad_b))
            .fold(0.0f64, |acc, g| acc.max(g.abs()));
        if grad_norm < GRAD_TOLERANCE {
            converged = true;
            break;
        }
        for f in 0..m {
            weights[f] -= LEARNING_RATE * grad_w[f];
        }
        intercept -= LEARNING_RATE * grad_b;
    }

    Ok(LogisticRegression {
        weights,
        intercept,
        feature_mean,
        feature_sd,
        converged,
    })
}

impl LogisticRegression {
    /// Sigmoid probabilities of class 1 per row.
    pub fn predict_proba(&self, data: &Dataset) -> Result<Vec<f64>, EvalError> {
        let m = self.weights.len();
        if data.n_features() != m {
            return Err(EvalError::LengthMismatch(data.n_features(), m));
        }
        Ok((0..data.n_rows())
            .map(|i| {
                let mut z = self.intercept;
                for f in 0..m {
                    let v = (data.column(f)[i] - self.feature_mean[f]) / self.feature_sd[f];
                    z += self.weights[f] * v;
                }
                sigmoid(z)
            })
            .collect())
    }

    /// Weights in standardized feature space.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}
