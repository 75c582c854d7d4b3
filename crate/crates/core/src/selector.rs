//! Greedy minimum-redundancy maximum-relevance feature ranking.
//!
//! At every step the candidate score combines a relevance term (feature vs
//! label) with the mean pairwise redundancy against the already-selected
//! set, either as a difference or as a quotient. Relevance is computed once
//! up front; pairwise redundancy values are memoized per (i, j, kind), so a
//! run of K steps over m features costs O(m K) measure calls. Candidate
//! scoring within a step is parallel; steps are sequential.
//!
//! The first feature is always the relevance argmax: with an empty selected
//! set both combination schemes degenerate, and the redundancy term is
//! conventionally zero, which would break the quotient. Ties break to the
//! lowest feature index throughout. Selection stops early once every
//! remaining candidate's relevance is degenerate-flagged (constant columns
//! and the like).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::Dataset;
use crate::forest::{train_forest, ForestError, ForestParams};
use crate::measures::{
    f_statistic, mutual_information, pearson, rdc, Association, MeasureError, RdcParams,
    DEFAULT_MI_BINS,
};
use crate::seed::derive_seed;

/// Guard for quotient denominators: mean redundancy is floored at this
/// value so near-orthogonal candidates get large but finite scores.
pub const QUOTIENT_EPSILON: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum SelectError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error("max_features must lie in [1, {available}], got {requested}")]
    BadMaxFeatures { requested: usize, available: usize },
    #[error("selected set is empty; redundancy is undefined")]
    EmptySelectedSet,
    #[error("method requires forest parameters")]
    MissingForestParams,
    #[error("unknown method name {0:?}; valid names: MID, MIQ, FCD, FCQ, FRQ, RFCQ, RFRQ, RF")]
    UnknownMethod(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelevanceKind {
    MutualInformation,
    FStatistic,
    RandomForestImportance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RedundancyKind {
    MutualInformation,
    AbsPearson,
    Rdc,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Difference,
    Quotient,
    RelevanceOnly,
}

/// A (relevance, redundancy, scheme) combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodSpec {
    pub relevance: RelevanceKind,
    pub redundancy: RedundancyKind,
    pub scheme: Scheme,
}

/// The eight named selection methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum Method {
    MID,
    MIQ,
    FCD,
    FCQ,
    FRQ,
    RFCQ,
    RFRQ,
    RF,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::MID,
        Method::MIQ,
        Method::FCD,
        Method::FCQ,
        Method::FRQ,
        Method::RFCQ,
        Method::RFRQ,
        Method::RF,
    ];

    pub fn spec(self) -> MethodSpec {
        use RedundancyKind as Red;
        use RelevanceKind as Rel;
        let (relevance, redundancy, scheme) = match self {
            Method::MID => (Rel::MutualInformation, Red::MutualInformation, Scheme::Difference),
            Method::MIQ => (Rel::MutualInformation, Red::MutualInformation, Scheme::Quotient),
            Method::FCD => (Rel::FStatistic, Red::AbsPearson, Scheme::Difference),
            Method::FCQ => (Rel::FStatistic, Red::AbsPearson, Scheme::Quotient),
            Method::FRQ => (Rel::FStatistic, Red::Rdc, Scheme::Quotient),
            Method::RFCQ => (Rel::RandomForestImportance, Red::AbsPearson, Scheme::Quotient),
            Method::RFRQ => (Rel::RandomForestImportance, Red::Rdc, Scheme::Quotient),
            Method::RF => (Rel::RandomForestImportance, Red::None, Scheme::RelevanceOnly),
        };
        MethodSpec {
            relevance,
            redundancy,
            scheme,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::MID => "MID",
            Method::MIQ => "MIQ",
            Method::FCD => "FCD",
            Method::FCQ => "FCQ",
            Method::FRQ => "FRQ",
            Method::RFCQ => "RFCQ",
            Method::RFRQ => "RFRQ",
            Method::RF => "RF",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = SelectError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SelectError::UnknownMethod(s.to_owned()))
    }
}

/// Everything a selection run needs beyond the data.
#[derive(Debug, Clone)]
pub struct SelectConfig {
    pub method: MethodSpec,
    pub max_features: usize,
    /// Quantile bins for mutual-information estimates.
    pub mi_bins: usize,
    /// Denominator floor for quotient schemes.
    pub quotient_epsilon: f64,
    /// Use signed Pearson for redundancy instead of |rho|. Off by default:
    /// a strongly anti-correlated feature is equally redundant, and signed
    /// values can turn quotient denominators negative.
    pub signed_redundancy: bool,
    pub forest_params: Option<ForestParams>,
    pub rdc_params: Option<RdcParams>,
}

impl SelectConfig {
    pub fn new(method: MethodSpec, max_features: usize) -> Self {
        SelectConfig {
            method,
            max_features,
            mi_bins: DEFAULT_MI_BINS,
            quotient_epsilon: QUOTIENT_EPSILON,
            signed_redundancy: false,
            forest_params: None,
            rdc_params: None,
        }
    }
}

/// One greedy step: the chosen feature with its score breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionStep {
    pub feature: usize,
    pub relevance: f64,
    pub mean_redundancy: f64,
    pub score: f64,
}

/// Ranked feature indices with per-step score breakdowns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionResult {
    pub ranked: Vec<usize>,
    pub steps: Vec<SelectionStep>,
    pub method: MethodSpec,
}

/// Per-feature relevance against the label.
///
/// Mutual information and the F-statistic are computed feature by feature;
/// forest importance trains one forest on the full feature set and reads
/// its importance vector (the model-based relevance is a single fit, not a
/// refit per step).
pub fn relevance_scores(
    data: &Dataset,
    kind: RelevanceKind,
    forest_params: Option<&ForestParams>,
    mi_bins: usize,
) -> Result<Vec<Association>, SelectError> {
    match kind {
        RelevanceKind::MutualInformation => {
            let labels = data.labels_f64();
            (0..data.n_features())
                .into_par_iter()
                .map(|i| Ok(mutual_information(data.column(i), &labels, mi_bins)?))
                .collect()
        }
        RelevanceKind::FStatistic => (0..data.n_features())
            .into_par_iter()
            .map(|i| Ok(f_statistic(data.column(i), data.labels())?))
            .collect(),
        RelevanceKind::RandomForestImportance => {
            let params = forest_params.ok_or(SelectError::MissingForestParams)?;
            let forest = train_forest(data, params)?;
            let importance = forest.feature_importance();
            let all_zero = importance.iter().all(|&v| v == 0.0);
            Ok(importance
                .iter()
                .map(|&value| Association {
                    value,
                    degenerate: all_zero,
                })
                .collect())
        }
    }
}

fn pair_value(
    data: &Dataset,
    i: usize,
    j: usize,
    kind: RedundancyKind,
    config: &SelectConfig,
) -> Result<f64, SelectError> {
    let value = match kind {
        RedundancyKind::MutualInformation => {
            mutual_information(data.column(i), data.column(j), config.mi_bins)?.value
        }
        RedundancyKind::AbsPearson => {
            let rho = pearson(data.column(i), data.column(j))?.value;
            if config.signed_redundancy {
                rho
            } else {
                rho.abs()
            }
        }
        RedundancyKind::Rdc => {
            let base = config.rdc_params.unwrap_or_default();
            let (lo, hi) = (i.min(j), i.max(j));
            let params = RdcParams {
                seed: derive_seed(base.seed, "selector.rdc.pair", ((lo as u64) << 32) | hi as u64),
                ..base
            };
            rdc(data.column(i), data.column(j), &params)?.value
        }
        RedundancyKind::None => 0.0,
    };
    Ok(value)
}

/// Mean pairwise redundancy between `candidate` and every selected feature.
/// Uncached; [`select`] keeps its own memo table.
pub fn redundancy(
    data: &Dataset,
    candidate: usize,
    selected: &[usize],
    kind: RedundancyKind,
    config: &SelectConfig,
) -> Result<f64, SelectError> {
    if selected.is_empty() {
        return Err(SelectError::EmptySelectedSet);
    }
    let mut sum = 0.0;
    for &s in selected {
        sum += pair_value(data, candidate, s, kind, config)?;
    }
    Ok(sum / selected.len() as f64)
}

fn scheme_score(scheme: Scheme, relevance: f64, mean_redundancy: f64, epsilon: f64) -> f64 {
    match scheme {
        Scheme::Difference => relevance - mean_redundancy,
        Scheme::Quotient => relevance / mean_redundancy.max(epsilon),
        Scheme::RelevanceOnly => relevance,
    }
}

/// Greedy ranking over precomputed relevances and a pairwise redundancy
/// source. Exposed to the crate so algorithm-level properties (scale
/// invariance, oracle equivalence) can be exercised without a dataset.
pub(crate) fn greedy_rank<F>(
    relevance: &[Association],
    pair: F,
    scheme: Scheme,
    epsilon: f64,
    max_features: usize,
) -> Result<(Vec<usize>, Vec<SelectionStep>), SelectError>
where
    F: Fn(usize, usize) -> Result<f64, SelectError> + Sync,
{
    let m = relevance.len();
    let mut ranked: Vec<usize> = Vec::with_capacity(max_features);
    let mut steps: Vec<SelectionStep> = Vec::with_capacity(max_features);
    let mut remaining: Vec<usize> = (0..m).collect();
    let mut memo: HashMap<(usize, usize), f64> = HashMap::new();

    while ranked.len() < max_features {
        let candidates: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !relevance[i].degenerate)
            .collect();
        if candidates.is_empty() {
            break; // only degenerate relevances remain
        }

        let step = if ranked.is_empty() {
            // First step: pure relevance argmax for every scheme.
            let &feature = candidates
                .iter()
                .reduce(|best, cand| {
                    if relevance[*cand].value > relevance[*best].value {
                        cand
                    } else {
                        best
                    }
                })
                .expect("non-empty candidates");
            SelectionStep {
                feature,
                relevance: relevance[feature].value,
                mean_redundancy: 0.0,
                score: relevance[feature].value,
            }
        } else {
            // Fill in the memo for the pairs introduced by the previous
            // pick, in parallel.
            let last = *ranked.last().expect("non-empty ranked");
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let missing: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&c| !memo.contains_key(&key(c, last)))
                .collect();
            let fresh: Vec<(usize, f64)> = missing
                .par_iter()
                .map(|&c| Ok((c, pair(c, last)?)))
                .collect::<Result<_, SelectError>>()?;
            for (c, v) in fresh {
                memo.insert(key(c, last), v);
            }

            let mut best: Option<SelectionStep> = None;
            for &c in &candidates {
                let sum: f64 = ranked.iter().map(|&s| memo[&key(c, s)]).sum();
                let mean_redundancy = sum / ranked.len() as f64;
                let score = scheme_score(scheme, relevance[c].value, mean_redundancy, epsilon);
                let better = match &best {
                    None => true,
                    Some(b) => score > b.score,
                };
                if better {
                    best = Some(SelectionStep {
                        feature: c,
                        relevance: relevance[c].value,
                        mean_redundancy,
                        score,
                    });
                }
            }
            best.expect("non-empty candidates")
        };

        remaining.retain(|&i| i != step.feature);
        ranked.push(step.feature);
        steps.push(step);
    }

    Ok((ranked, steps))
}

/// Rank up to `config.max_features` features of `data` by the configured
/// method. See the module docs for the greedy rules.
pub fn select(data: &Dataset, config: &SelectConfig) -> Result<SelectionResult, SelectError> {
    let m = data.n_features();
    if config.max_features == 0 || config.max_features > m {
        return Err(SelectError::BadMaxFeatures {
            requested: config.max_features,
            available: m,
        });
    }
    let spec = config.method;
    let relevance = relevance_scores(
        data,
        spec.relevance,
        config.forest_params.as_ref(),
        config.mi_bins,
    )?;
    let (ranked, steps) = greedy_rank(
        &relevance,
        |i, j| pair_value(data, i, j, spec.redundancy, config),
        spec.scheme,
        config.quotient_epsilon,
        config.max_features,
    )?;
    Ok(SelectionResult {
        ranked,
        steps,
        method: spec,
    })
}

/// Pairwise Pearson among the listed features plus each feature's
/// correlation with the label, for report and plot output.
///
/// Returns a `(k+1) x (k+1)` symmetric matrix; the last row/column is the
/// label. The diagonal is exactly 1.
pub fn redundancy_heatmap(data: &Dataset, indices: &[usize]) -> Result<Vec<Vec<f64>>, SelectError> {
    let labels = data.labels_f64();
    let k = indices.len();
    let column = |i: usize| -> &[f64] {
        if i < k {
            data.column(indices[i])
        } else {
            &labels
        }
    };
    let mut matrix = vec![vec![0.0; k + 1]; k + 1];
    for a in 0..=k {
        matrix[a][a] = 1.0;
        for b in a + 1..=k {
            let rho = pearson(column(a), column(b))?.value;
            matrix[a][b] = rho;
            matrix[b][a] = rho;
        }
    }
    Ok(matrix)
}
