//! Largest canonical correlation between two column sets.

use nalgebra::DMatrix;

use super::MeasureError;

/// Ridge strength relative to the mean diagonal of a block covariance,
/// applied only when the plain Cholesky factorization fails.
const RIDGE_BASE: f64 = 1e-8;
const RIDGE_MAX: f64 = 1e-2;

/// Largest canonical correlation between the column sets `a` (p columns)
/// and `b` (q columns), each column holding n samples.
///
/// Columns are centered internally. The score is the largest singular value
/// of the whitened cross-covariance `La^-1 Cab Lb^-T`, clamped to [0, 1].
/// Rank-deficient block covariances are handled by adding trace-scaled
/// ridge mass to the diagonal until the factorization succeeds; covariances
/// with zero trace (all columns constant) score 0.
pub fn max_canonical_correlation(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
) -> Result<f64, MeasureError> {
    let p = a.len();
    let q = b.len();
    if p == 0 || q == 0 {
        return Err(MeasureError::BadParams("empty column set".into()));
    }
    let n = a[0].len();
    for col in a.iter().chain(b.iter()) {
        if col.len() != n {
            return Err(MeasureError::LengthMismatch(n, col.len()));
        }
    }
    if n <= p.max(q) + 1 {
        return Err(MeasureError::TooFewSamples {
            needed: p.max(q) + 2,
            got: n,
        });
    }

    let centered = |cols: &[Vec<f64>]| -> Vec<Vec<f64>> {
        cols.iter()
            .map(|c| {
                let mean = c.iter().sum::<f64>() / n as f64;
                c.iter().map(|&v| v - mean).collect()
            })
            .collect()
    };
    let ac = centered(a);
    let bc = centered(b);

    let denom = (n - 1) as f64;
    let cov = |x: &[Vec<f64>], y: &[Vec<f64>]| -> DMatrix<f64> {
        DMatrix::from_fn(x.len(), y.len(), |i, j| {
            x[i].iter().zip(&y[j]).map(|(&u, &v)| u * v).sum::<f64>() / denom
        })
    };
    let caa = cov(&ac, &ac);
    let cbb = cov(&bc, &bc);
    let cab = cov(&ac, &bc);

    if caa.trace() <= 0.0 || cbb.trace() <= 0.0 {
        return Ok(0.0);
    }

    let la = factor_with_ridge(&caa)?;
    let lb = factor_with_ridge(&cbb)?;

    // K = La^-1 Cab Lb^-T via two triangular solves.
    let half = la
        .solve_lower_triangular(&cab)
        .ok_or_else(|| MeasureError::BadParams("triangular solve failed".into()))?;
    let k = lb
        .solve_lower_triangular(&half.transpose())
        .ok_or_else(|| MeasureError::BadParams("triangular solve failed".into()))?
        .transpose();

    // Largest eigenvalue of the smaller Gram form of K.
    let gram = if p <= q {
        &k * k.transpose()
    } else {
        k.transpose() * &k
    };
    let eigen = gram.symmetric_eigen();
    let top = eigen.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(top.max(0.0).sqrt().clamp(0.0, 1.0))
}

fn factor_with_ridge(cov: &DMatrix<f64>) -> Result<DMatrix<f64>, MeasureError> {
    if let Some(ch) = cov.clone().cholesky() {
        return Ok(ch.l());
    }
    let scale = cov.trace() / cov.nrows() as f64;
    let mut ridge = RIDGE_BASE;
    while ridge <= RIDGE_MAX {
        let mut bumped = cov.clone();
        for i in 0..bumped.nrows() {
            bumped[(i, i)] += ridge * scale;
        }
        if let Some(ch) = bumped.cholesky() {
            return Ok(ch.l());
        }
        ridge *= 10.0;
    }
    Err(MeasureError::BadParams(
        "covariance not factorizable even with ridge".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::pearson;
    use crate::seed::derived_rng;
    use rand::Rng;

    #[test]
    fn identical_sets_score_one() {
        let a = vec![
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            vec![2.0, 1.0, 4.0, 3.0, 6.0, 5.0],
        ];
        let r = max_canonical_correlation(&a, &a).unwrap();
        assert!((r - 1.0).abs() < 1e-9, "got {r}");
    }

    #[test]
    fn one_dimensional_cca_equals_abs_pearson() {
        let mut rng = derived_rng(11, "cca.1d", 0);
        for trial in 0..20 {
            let x: Vec<f64> = (0..50).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let y: Vec<f64> = x
                .iter()
                .map(|&v| {
                    let noise: f64 = rng.gen_range(-1.0..1.0);
                    -0.7 * v + noise
                })
                .collect();
            let cca =
                max_canonical_correlation(std::slice::from_ref(&x), std::slice::from_ref(&y))
                    .unwrap();
            let rho = pearson(&x, &y).unwrap().value.abs();
            assert!((cca - rho).abs() < 1e-10, "trial {trial}: {cca} vs {rho}");
        }
    }

    #[test]
    fn independent_noise_scores_low() {
        // Monte-Carlo null check: independent 3-column sets, n=2000.
        let mut rng = derived_rng(12, "cca.null", 0);
        let n = 2000;
        let a: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let b: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let r = max_canonical_correlation(&a, &b).unwrap();
        assert!(r < 0.15, "null CCA unexpectedly high: {r}");
    }

    #[test]
    fn collinear_columns_are_regularized() {
        let base: Vec<f64> = (0..40).map(f64::from).collect();
        let dup = base.clone();
        let other: Vec<f64> = (0..40).map(|i| f64::from(i * i % 17)).collect();
        let r = max_canonical_correlation(&[base, dup], &[other]).unwrap();
        assert!(r.is_finite());
        assert!((0.0..=1.0).contains(&r));
    }

    #[test]
    fn all_constant_side_scores_zero() {
        let a = vec![vec![3.0; 10]];
        let b = vec![(0..10).map(f64::from).collect::<Vec<_>>()];
        assert_eq!(max_canonical_correlation(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn too_few_samples_errors() {
        let a = vec![vec![1.0, 2.0, 3.0], vec![2.0, 1.0, 3.0]];
        assert!(matches!(
            max_canonical_correlation(&a, &a).unwrap_err(),
            MeasureError::TooFewSamples { .. }
        ));
    }
}
