//! Pairwise association measures: Pearson correlation, discrete-binned
//! mutual information, the one-way ANOVA F-statistic, and the randomized
//! dependence coefficient (RDC).
//!
//! All operations are pure functions of their inputs (RDC is pure given its
//! params seed) and safe to call concurrently.
//!
//! Conventions fixed here:
//! - Mutual information is reported in nats. Any fixed log base only
//!   rescales scores and cannot change difference/quotient rankings.
//! - Continuous columns are discretized with equal-frequency (quantile)
//!   bins; columns with no more distinct values than bins keep their
//!   distinct values as categories. Rank-based bins make the estimate
//!   invariant under strictly monotone transforms.
//! - A constant input never produces NaN: Pearson and the F-statistic
//!   return 0 with [`Association::degenerate`] set, so redundancy sums and
//!   quotients stay finite.

mod cca;
mod rdc;

pub use cca::max_canonical_correlation;
pub use rdc::{copula_transform, rdc, RdcParams};

use thiserror::Error;

/// Cap applied when the F-statistic denominator is exactly zero while the
/// group means differ, keeping quotient schemes ordered and finite.
pub const F_STAT_CAP: f64 = 1e12;

/// Default number of quantile bins for mutual information on continuous
/// columns.
pub const DEFAULT_MI_BINS: usize = 10;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("input lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("labels contain a single class only")]
    SingleClass,
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// A dependence/relevance score plus a flag marking inputs (constant
/// vectors, single-category columns) on which the measure is not
/// informative and a conventional 0 was returned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Association {
    pub value: f64,
    pub degenerate: bool,
}

impl Association {
    fn ok(value: f64) -> Self {
        Association {
            value,
            degenerate: false,
        }
    }

    fn degenerate(value: f64) -> Self {
        Association {
            value,
            degenerate: true,
        }
    }
}

/// Sample Pearson correlation in [-1, 1].
///
/// A constant vector on either side yields 0 with the degenerate flag set.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Association, MeasureError> {
    if x.len() != y.len() {
        return Err(MeasureError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(MeasureError::TooFewSamples {
            needed: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Ok(Association::degenerate(0.0));
    }
    Ok(Association::ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)))
}

/// One-way ANOVA F-statistic for a two-group comparison:
/// `(SS_between / (g-1)) / (SS_within / (n-g))` with `g = 2`.
///
/// Zero within-group variance with differing means returns [`F_STAT_CAP`];
/// an overall-constant input returns 0 with the degenerate flag.
pub fn f_statistic(x: &[f64], labels: &[u8]) -> Result<Association, MeasureError> {
    if x.len() != labels.len() {
        return Err(MeasureError::LengthMismatch(x.len(), labels.len()));
    }
    if x.len() < 3 {
        return Err(MeasureError::TooFewSamples {
            needed: 3,
            got: x.len(),
        });
    }
    let mut sum = [0.0f64; 2];
    let mut count = [0usize; 2];
    for (&v, &y) in x.iter().zip(labels) {
        let g = usize::from(y != 0);
        sum[g] += v;
        count[g] += 1;
    }
    if count[0] == 0 || count[1] == 0 {
        return Err(MeasureError::SingleClass);
    }
    let n = x.len() as f64;
    let grand = (sum[0] + sum[1]) / n;
    let mean = [sum[0] / count[0] as f64, sum[1] / count[1] as f64];

    let mut ss_within = 0.0;
    for (&v, &y) in x.iter().zip(labels) {
        let g = usize::from(y != 0);
        let d = v - mean[g];
        ss_within += d * d;
    }
    let ss_between = count[0] as f64 * (mean[0] - grand).powi(2)
        + count[1] as f64 * (mean[1] - grand).powi(2);

    if ss_within <= 0.0 {
        if ss_between <= 0.0 {
            return Ok(Association::degenerate(0.0));
        }
        return Ok(Association::ok(F_STAT_CAP));
    }
    let df_within = n - 2.0;
    Ok(Association::ok((ss_between / 1.0) / (ss_within / df_within)))
}

/// Joint category counts of two discretized vectors, with marginals.
#[derive(Debug, Clone)]
pub struct ContingencyTable {
    counts: Vec<Vec<u64>>,
    row_marginals: Vec<u64>,
    col_marginals: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    /// Tabulate paired category codes. `rows`/`cols` give the category
    /// counts per side; every code must lie below its side's count.
    pub fn from_codes(x: &[usize], y: &[usize], rows: usize, cols: usize) -> Self {
        debug_assert_eq!(x.len(), y.len());
        let mut counts = vec![vec![0u64; cols]; rows];
        for (&a, &b) in x.iter().zip(y) {
            counts[a][b] += 1;
        }
        let row_marginals: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let mut col_marginals = vec![0u64; cols];
        for r in &counts {
            for (m, &c) in col_marginals.iter_mut().zip(r) {
                *m += c;
            }
        }
        let total = row_marginals.iter().sum();
        ContingencyTable {
            counts,
            row_marginals,
            col_marginals,
            total,
        }
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_marginals(&self) -> &[u64] {
        &self.row_marginals
    }

    pub fn col_marginals(&self) -> &[u64] {
        &self.col_marginals
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Plug-in mutual information of the table, in nats. Non-negative up to
    /// rounding; clamped at 0.
    ///
    /// Cell terms are summed in sorted order, which makes the estimate
    /// bit-exactly symmetric in the two variables (the transposed table has
    /// the same multiset of terms).
    pub fn mutual_information_nats(&self) -> f64 {
        let n = self.total as f64;
        let mut terms: Vec<f64> = Vec::new();
        for (i, row) in self.counts.iter().enumerate() {
            let ri = self.row_marginals[i] as f64;
            for (j, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let cj = self.col_marginals[j] as f64;
                let joint = c as f64;
                terms.push(joint / n * ((joint * n) / (ri * cj)).ln());
            }
        }
        terms.sort_unstable_by(f64::total_cmp);
        terms.iter().sum::<f64>().max(0.0)
    }
}

/// Map a column to category codes for mutual information.
///
/// Columns with at most `bins` distinct values keep those values as
/// categories (codes in value order). Otherwise each distinct value is
/// assigned the equal-frequency bin containing its midpoint rank, so ties
/// always share a bin. Returns the codes and the number of categories.
pub fn discretize(x: &[f64], bins: usize) -> (Vec<usize>, usize) {
    assert!(bins >= 2, "bins must be at least 2");
    let n = x.len();
    let mut sorted = x.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);

    // Distinct values with cumulative count before each group.
    let mut distinct: Vec<f64> = Vec::new();
    let mut starts: Vec<usize> = Vec::new();
    for (i, &v) in sorted.iter().enumerate() {
        if i == 0 || v != sorted[i - 1] {
            distinct.push(v);
            starts.push(i);
        }
    }
    starts.push(n);

    let n_distinct = distinct.len();
    let code_of_group: Vec<usize> = if n_distinct <= bins {
        (0..n_distinct).collect()
    } else {
        (0..n_distinct)
            .map(|g| {
                let count = starts[g + 1] - starts[g];
                let midpoint = starts[g] as f64 + count as f64 / 2.0;
                (((bins as f64 * midpoint) / n as f64) as usize).min(bins - 1)
            })
            .collect()
    };
    let n_codes = if n_distinct <= bins { n_distinct } else { bins };

    let codes = x
        .iter()
        .map(|&v| {
            let g = distinct.partition_point(|&d| d < v);
            code_of_group[g]
        })
        .collect();
    (codes, n_codes)
}

/// Plug-in mutual information estimate between two real vectors, in nats.
///
/// Both sides are discretized per [`discretize`]; the score is symmetric in
/// its arguments and non-negative. A single-category side yields 0 with the
/// degenerate flag.
pub fn mutual_information(x: &[f64], y: &[f64], bins: usize) -> Result<Association, MeasureError> {
    if x.len() != y.len() {
        return Err(MeasureError::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(MeasureError::TooFewSamples { needed: 1, got: 0 });
    }
    let (cx, nx) = discretize(x, bins);
    let (cy, ny) = discretize(y, bins);
    if nx < 2 || ny < 2 {
        return Ok(Association::degenerate(0.0));
    }
    let table = ContingencyTable::from_codes(&cx, &cy, nx, ny);
    Ok(Association::ok(table.mutual_information_nats()))
}
