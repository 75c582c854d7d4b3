//! Evaluation harness: run every (selection method x classifier x
//! feature-count) cell over cross-validation folds or fresh-data trials,
//! collect AUC/F1 and per-method ranking timings, and pick a production
//! feature count from a forest AUC curve.
//!
//! Ranking is the timed section (classifier fitting is excluded) and is
//! pinned to a single-threaded pool so timing comparisons are not distorted
//! by contention; the classifier grid runs in parallel afterwards. A
//! failing method is recorded in its cells and the run continues.
//!
//! Reports serialize deterministically: wall-clock timings are written to a
//! separate `timings.json` so `report.json` and `cells.csv` are
//! byte-identical across reruns with the same configuration and seed.

mod logreg;
mod metrics;
mod naive_bayes;

pub use logreg::{loss_and_gradient, train_logreg, LogisticRegression};
pub use metrics::{auc, f1};
pub use naive_bayes::{train_naive_bayes, GaussianNb};

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{kfold, split, Dataset, DatasetError};
use crate::forest::{train_forest, ForestError, ForestParams};
use crate::measures::{MeasureError, RdcParams, DEFAULT_MI_BINS};
use crate::seed::derive_seed;
use crate::selector::{select, Method, SelectConfig, SelectError};
use crate::synth::{generate, SynthError, SyntheticSpec};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("input lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("labels contain a single class only")]
    SingleClass,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Downstream classifier family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierKind {
    NaiveBayes,
    LogisticRegression,
    RandomForest,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 3] = [
        ClassifierKind::NaiveBayes,
        ClassifierKind::LogisticRegression,
        ClassifierKind::RandomForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::NaiveBayes => "naive_bayes",
            ClassifierKind::LogisticRegression => "logistic_regression",
            ClassifierKind::RandomForest => "random_forest",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierKind {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "naive_bayes" | "nb" => Ok(ClassifierKind::NaiveBayes),
            "logistic_regression" | "logreg" | "lr" => Ok(ClassifierKind::LogisticRegression),
            "random_forest" | "rf" => Ok(ClassifierKind::RandomForest),
            other => Err(EvalError::InvalidConfig(format!(
                "unknown classifier {other:?}; valid: naive_bayes, logistic_regression, random_forest"
            ))),
        }
    }
}

/// How train/test iterations are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// k-fold cross-validation on one dataset.
    CrossValidation { folds: usize },
    /// Fresh synthetic data per trial, split 50/50 once per trial.
    Trials { trials: usize },
}

/// Input data for a benchmark run.
#[derive(Debug, Clone)]
pub enum DataSource {
    Loaded(Dataset),
    Synthetic(SyntheticSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalConfig {
    pub methods: Vec<Method>,
    pub classifiers: Vec<ClassifierKind>,
    /// Features to rank per method.
    pub top_k: usize,
    /// Cut points at which classifiers are evaluated.
    pub feature_counts: Vec<usize>,
    pub protocol: Protocol,
    pub seed: u64,
    pub mi_bins: usize,
    pub forest_params: ForestParams,
    pub rdc_params: RdcParams,
    /// When set, pick the production feature count per method by scanning
    /// forest AUC over top-n features for n up to this bound.
    #[serde(default)]
    pub choose_n: Option<usize>,
    /// Tolerance for the feature-count rule; 0 is the literal
    /// lowest-n-with-highest-AUC rule.
    #[serde(default)]
    pub choose_n_tolerance: f64,
}

impl EvalConfig {
    /// The full comparison grid: all methods, all classifiers, cut points
    /// 1..=top_k.
    pub fn full_grid(top_k: usize, protocol: Protocol, seed: u64) -> Self {
        EvalConfig {
            methods: Method::ALL.to_vec(),
            classifiers: ClassifierKind::ALL.to_vec(),
            top_k,
            feature_counts: (1..=top_k).collect(),
            protocol,
            seed,
            mi_bins: DEFAULT_MI_BINS,
            forest_params: ForestParams::default(),
            rdc_params: RdcParams::default(),
            choose_n: None,
            choose_n_tolerance: 0.0,
        }
    }

    fn validate(&self) -> Result<(), EvalError> {
        if self.methods.is_empty() {
            return Err(EvalError::InvalidConfig("no methods configured".into()));
        }
        if self.classifiers.is_empty() {
            return Err(EvalError::InvalidConfig("no classifiers configured".into()));
        }
        if self.top_k == 0 {
            return Err(EvalError::InvalidConfig("top_k must be >= 1".into()));
        }
        if self.feature_counts.is_empty() {
            return Err(EvalError::InvalidConfig("no feature counts configured".into()));
        }
        if self
            .feature_counts
            .iter()
            .any(|&m| m == 0 || m > self.top_k)
        {
            return Err(EvalError::InvalidConfig(format!(
                "feature counts must lie in [1, top_k={}]",
                self.top_k
            )));
        }
        if self.mi_bins < 2 {
            return Err(EvalError::InvalidConfig("mi_bins must be >= 2".into()));
        }
        match self.protocol {
            Protocol::CrossValidation { folds } if folds < 2 => {
                Err(EvalError::InvalidConfig("folds must be >= 2".into()))
            }
            Protocol::Trials { trials } if trials < 1 => {
                Err(EvalError::InvalidConfig("trials must be >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    fn select_config(&self, method: Method, iteration: usize) -> SelectConfig {
        let mut config = SelectConfig::new(method.spec(), self.top_k);
        config.mi_bins = self.mi_bins;
        config.forest_params = Some(
            self.forest_params
                .with_seed(derive_seed(self.seed, "eval.rank_forest", iteration as u64)),
        );
        config.rdc_params = Some(RdcParams {
            seed: derive_seed(self.seed, "eval.rdc", iteration as u64),
            ..self.rdc_params
        });
        config
    }
}

/// Aggregated metrics of one (method, classifier, feature-count) cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellResult {
    pub method: Method,
    pub classifier: ClassifierKind,
    pub n_features: usize,
    pub auc_mean: f64,
    /// Population standard deviation across iterations (extra diagnostic,
    /// not part of the headline metric).
    pub auc_std: f64,
    pub f1_mean: f64,
    pub f1_std: f64,
    /// Iterations that produced a value for this cell.
    pub n_iterations: usize,
    /// First error encountered, when any iteration failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Ranking produced by one method in one iteration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationRanking {
    pub iteration: usize,
    pub method: Method,
    pub ranked: Vec<usize>,
    pub names: Vec<String>,
}

/// Wall-clock seconds spent ranking `top_k` features, per method.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodTiming {
    pub method: Method,
    pub seconds_per_iteration: Vec<f64>,
    pub seconds_total: f64,
}

/// Production feature count chosen for one method's ranking.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChosenFeatureCount {
    pub method: Method,
    pub count: usize,
    pub auc_curve: Vec<f64>,
}

/// Full benchmark output. `timings` is serialized separately so the main
/// report files stay byte-stable across reruns.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub config: EvalConfig,
    pub dataset_fingerprint: String,
    pub cells: Vec<CellResult>,
    pub rankings: Vec<IterationRanking>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen_feature_counts: Option<Vec<ChosenFeatureCount>>,
    #[serde(skip)]
    pub timings: Vec<MethodTiming>,
}

fn timing_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool")
    })
}

fn fit_predict(
    kind: ClassifierKind,
    train: &Dataset,
    test: &Dataset,
    forest_params: &ForestParams,
) -> Result<Vec<f64>, EvalError> {
    match kind {
        ClassifierKind::NaiveBayes => Ok(train_naive_bayes(train)?.predict_proba(test)?),
        ClassifierKind::LogisticRegression => Ok(train_logreg(train)?.predict_proba(test)?),
        ClassifierKind::RandomForest => Ok(train_forest(train, forest_params)?.predict_proba(test)?),
    }
}

struct Iteration {
    train: Dataset,
    test: Dataset,
}

fn build_iterations(
    source: &DataSource,
    config: &EvalConfig,
) -> Result<(Vec<Iteration>, String, Dataset), EvalError> {
    match (config.protocol, source) {
        (Protocol::Trials { trials }, DataSource::Synthetic(spec)) => {
            let mut iterations = Vec::with_capacity(trials);
            let mut first_data = None;
            for t in 0..trials {
                let trial_spec = SyntheticSpec {
                    seed: derive_seed(config.seed, "eval.trial", t as u64),
                    ..spec.clone()
                };
                let (data, _) = generate(&trial_spec)?;
                let (train, test) =
                    split(&data, 0.5, derive_seed(config.seed, "eval.split", t as u64))?;
                if t == 0 {
                    first_data = Some(data);
                }
                iterations.push(Iteration { train, test });
            }
            let fingerprint = format!(
                "synthetic(seed={}, n={}, features={})",
                spec.seed,
                spec.n,
                spec.total_features()
            );
            Ok((iterations, fingerprint, first_data.expect("trials >= 1")))
        }
        (Protocol::Trials { .. }, DataSource::Loaded(_)) => Err(EvalError::InvalidConfig(
            "the trials protocol generates fresh data per trial and requires a synthetic source; \
             use cross-validation for loaded datasets"
                .into(),
        )),
        (Protocol::CrossValidation { folds }, source) => {
            let data = match source {
                DataSource::Loaded(d) => d.clone(),
                DataSource::Synthetic(spec) => generate(spec)?.0,
            };
            let fingerprint = data.fingerprint();
            let assignment = kfold(&data, folds, derive_seed(config.seed, "eval.kfold", 0))?;
            let iterations = (0..folds)
                .map(|f| Iteration {
                    train: data.subset_rows(&assignment.train_rows(f)),
                    test: data.subset_rows(&assignment.test_rows(f)),
                })
                .collect();
            Ok((iterations, fingerprint, data))
        }
    }
}

/// Run the full benchmark grid.
pub fn run_benchmark(source: &DataSource, config: &EvalConfig) -> Result<EvalReport, EvalError> {
    config.validate()?;
    let (iterations, dataset_fingerprint, base_data) = build_iterations(source, config)?;
    let n_iterations = iterations.len();
    let n_methods = config.methods.len();
    let n_classifiers = config.classifiers.len();
    let n_counts = config.feature_counts.len();

    let mut rankings: Vec<IterationRanking> = Vec::new();
    let mut timings: Vec<MethodTiming> = config
        .methods
        .iter()
        .map(|&method| MethodTiming {
            method,
            seconds_per_iteration: Vec::with_capacity(n_iterations),
            seconds_total: 0.0,
        })
        .collect();

    // cell_values[method][classifier][count] collects per-iteration
    // (auc, f1) pairs.
    type CellGrid = Vec<Vec<Vec<Vec<(f64, f64)>>>>;
    let mut cell_values: CellGrid =
        vec![vec![vec![Vec::with_capacity(n_iterations); n_counts]; n_classifiers]; n_methods];
    let mut cell_errors: Vec<Vec<Vec<Option<String>>>> =
        vec![vec![vec![None; n_counts]; n_classifiers]; n_methods];

    for (it_idx, iteration) in iterations.iter().enumerate() {
        // Step 2 (timed): rank top_k features per method on the training
        // rows, single-threaded.
        let mut ranked_per_method: Vec<Option<Vec<usize>>> = Vec::with_capacity(n_methods);
        for (m_idx, &method) in config.methods.iter().enumerate() {
            let select_config = config.select_config(method, it_idx);
            let started = Instant::now();
            let outcome = timing_pool().install(|| select(&iteration.train, &select_config));
            let seconds = started.elapsed().as_secs_f64();
            timings[m_idx].seconds_per_iteration.push(seconds);
            timings[m_idx].seconds_total += seconds;
            match outcome {
                Ok(result) => {
                    rankings.push(IterationRanking {
                        iteration: it_idx,
                        method,
                        names: result
                            .ranked
                            .iter()
                            .map(|&i| iteration.train.names()[i].clone())
                            .collect(),
                        ranked: result.ranked.clone(),
                    });
                    ranked_per_method.push(Some(result.ranked));
                }
                Err(err) => {
                    let message = err.to_string();
                    for c_idx in 0..n_classifiers {
                        for k_idx in 0..n_counts {
                            cell_errors[m_idx][c_idx][k_idx].get_or_insert(message.clone());
                        }
                    }
                    ranked_per_method.push(None);
                }
            }
        }

        // Steps 3-5 (untimed): fit each classifier on each top-m subset and
        // score the held-out rows. Parallel across the grid.
        let clf_forest_params = config
            .forest_params
            .with_seed(derive_seed(config.seed, "eval.clf_forest", it_idx as u64));
        let mut tasks: Vec<(usize, usize, usize)> = Vec::new();
        for m_idx in 0..n_methods {
            if ranked_per_method[m_idx].is_none() {
                continue;
            }
            for c_idx in 0..n_classifiers {
                for k_idx in 0..n_counts {
                    tasks.push((m_idx, c_idx, k_idx));
                }
            }
        }
        type CellOutcome = ((usize, usize, usize), Result<(f64, f64), String>);
        let outcomes: Vec<CellOutcome> = tasks
            .par_iter()
            .map(|&(m_idx, c_idx, k_idx)| {
                let ranked = ranked_per_method[m_idx].as_ref().expect("checked above");
                let count = config.feature_counts[k_idx].min(ranked.len());
                let chosen = &ranked[..count];
                let run = || -> Result<(f64, f64), EvalError> {
                    let train_sub = iteration.train.select_columns(chosen);
                    let test_sub = iteration.test.select_columns(chosen);
                    let probs = fit_predict(
                        config.classifiers[c_idx],
                        &train_sub,
                        &test_sub,
                        &clf_forest_params,
                    )?;
                    Ok((
                        auc(&probs, test_sub.labels())?,
                        f1(&probs, test_sub.labels(), 0.5)?,
                    ))
                };
                ((m_idx, c_idx, k_idx), run().map_err(|e| e.to_string()))
            })
            .collect();
        for ((m_idx, c_idx, k_idx), outcome) in outcomes {
            match outcome {
                Ok(pair) => cell_values[m_idx][c_idx][k_idx].push(pair),
                Err(message) => {
                    cell_errors[m_idx][c_idx][k_idx].get_or_insert(message);
                }
            }
        }
    }

    // Aggregate cells in fixed (method, classifier, count) order.
    let mut cells = Vec::with_capacity(n_methods * n_classifiers * n_counts);
    for (m_idx, &method) in config.methods.iter().enumerate() {
        for (c_idx, &classifier) in config.classifiers.iter().enumerate() {
            for (k_idx, &n_features) in config.feature_counts.iter().enumerate() {
                let values = &cell_values[m_idx][c_idx][k_idx];
                let stats = |pick: fn(&(f64, f64)) -> f64| -> (f64, f64) {
                    if values.is_empty() {
                        return (f64::NAN, f64::NAN);
                    }
                    let n = values.len() as f64;
                    let mean = values.iter().map(pick).sum::<f64>() / n;
                    let var = values
                        .iter()
                        .map(|v| (pick(v) - mean).powi(2))
                        .sum::<f64>()
                        / n;
                    (mean, var.sqrt())
                };
                let (auc_mean, auc_std) = stats(|v| v.0);
                let (f1_mean, f1_std) = stats(|v| v.1);
                cells.push(CellResult {
                    method,
                    classifier,
                    n_features,
                    auc_mean,
                    auc_std,
                    f1_mean,
                    f1_std,
                    n_iterations: values.len(),
                    error: cell_errors[m_idx][c_idx][k_idx].take(),
                });
            }
        }
    }

    // Production feature-count rule, using each method's first-iteration
    // ranking on the base dataset.
    let chosen_feature_counts = match config.choose_n {
        None => None,
        Some(max_n) => {
            let mut chosen = Vec::new();
            for &method in &config.methods {
                let ranking = rankings
                    .iter()
                    .find(|r| r.iteration == 0 && r.method == method);
                if let Some(ranking) = ranking {
                    let params = config
                        .forest_params
                        .with_seed(derive_seed(config.seed, "eval.choose_forest", 0));
                    let (count, auc_curve) = choose_num_features(
                        &base_data,
                        &ranking.ranked,
                        max_n,
                        &params,
                        config.choose_n_tolerance,
                        derive_seed(config.seed, "eval.choose_split", 0),
                    )?;
                    chosen.push(ChosenFeatureCount {
                        method,
                        count,
                        auc_curve,
                    });
                }
            }
            Some(chosen)
        }
    };

    Ok(EvalReport {
        config: config.clone(),
        dataset_fingerprint,
        cells,
        rankings,
        chosen_feature_counts,
        timings,
    })
}

/// Smallest n whose AUC is within `tolerance` of the curve maximum;
/// `tolerance = 0` is the literal lowest-n-with-highest-AUC rule.
pub fn choose_from_curve(auc_curve: &[f64], tolerance: f64) -> usize {
    let max = auc_curve.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    auc_curve
        .iter()
        .position(|&v| v >= max - tolerance)
        .map_or(1, |i| i + 1)
}

/// Scan n = 1..=min(max_n, ranked.len()) forests over the top-n features of
/// `ranked`, scoring held-out AUC on an internal 50/50 split, and apply
/// [`choose_from_curve`]. Returns the chosen count and the AUC curve.
pub fn choose_num_features(
    data: &Dataset,
    ranked: &[usize],
    max_n: usize,
    params: &ForestParams,
    tolerance: f64,
    seed: u64,
) -> Result<(usize, Vec<f64>), EvalError> {
    if ranked.is_empty() {
        return Err(EvalError::InvalidConfig("ranked feature list is empty".into()));
    }
    let limit = max_n.min(ranked.len());
    let (train, test) = split(data, 0.5, derive_seed(seed, "choose_n.split", 0))?;
    let curve: Vec<f64> = (1..=limit)
        .into_par_iter()
        .map(|n| {
            let chosen = &ranked[..n];
            let forest = train_forest(
                &train.select_columns(chosen),
                &params.with_seed(derive_seed(params.seed, "choose_n.forest", n as u64)),
            )?;
            let probs = forest.predict_proba(&test.select_columns(chosen))?;
            auc(&probs, test.labels())
        })
        .collect::<Result<_, EvalError>>()?;
    Ok((choose_from_curve(&curve, tolerance), curve))
}

impl EvalReport {
    /// AUC/F1 cells as a flat CSV (one row per cell), for plotting.
    pub fn cells_csv(&self) -> String {
        let mut out = String::from(
            "method,classifier,n_features,auc_mean,auc_std,f1_mean,f1_std,n_iterations,error\n",
        );
        for cell in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                cell.method,
                cell.classifier,
                cell.n_features,
                cell.auc_mean,
                cell.auc_std,
                cell.f1_mean,
                cell.f1_std,
                cell.n_iterations,
                cell.error.as_deref().unwrap_or("")
            ));
        }
        out
    }

    /// Write `report.json`, `cells.csv`, and `timings.json` under `dir`.
    /// The first two are byte-stable across reruns; `timings.json` holds
    /// the volatile wall-clock numbers.
    pub fn write_files(&self, dir: &Path) -> Result<Vec<PathBuf>, EvalError> {
        std::fs::create_dir_all(dir).map_err(|source| EvalError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let write = |name: &str, body: String| -> Result<PathBuf, EvalError> {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|source| EvalError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(path)
        };
        let report = write(
            "report.json",
            serde_json::to_string_pretty(self).expect("report serializes") + "\n",
        )?;
        let cells = write("cells.csv", self.cells_csv())?;
        #[derive(Serialize)]
        struct TimingsDoc<'a> {
            timings: &'a [MethodTiming],
        }
        let timings = write(
            "timings.json",
            serde_json::to_string_pretty(&TimingsDoc {
                timings: &self.timings,
            })
            .expect("timings serialize")
                + "\n",
        )?;
        Ok(vec![report, cells, timings])
    }

    /// Cell lookup by coordinates.
    pub fn cell(
        &self,
        method: Method,
        classifier: ClassifierKind,
        n_features: usize,
    ) -> Option<&CellResult> {
        self.cells.iter().find(|c| {
            c.method == method && c.classifier == classifier && c.n_features == n_features
        })
    }
}
