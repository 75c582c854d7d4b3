//! Synthetic classification benchmark with known feature structure.
//!
//! The generated table has four feature groups: independent informative
//! features (spline transforms of the latent covariates that drive the
//! label), linear redundant features (random linear combinations of
//! informative features), nonlinear redundant features (a random spline
//! applied to such a combination), and irrelevant standard-normal noise.
//! Labels come from a logistic model over the latent covariates, thresholded
//! at probability 0.5.
//!
//! All randomness flows from `spec.seed` through named sub-streams (see
//! [`crate::seed`]), so a spec reproduces its dataset bit for bit.

mod spline;

pub use spline::{random_spline, Spline, RANDOM_SPLINE_KNOTS};

use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{Dataset, DatasetError};
use crate::seed::{derive_seed, derived_rng};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Parameters of the synthetic benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n: usize,
    pub n_informative: usize,
    pub n_linear_redundant: usize,
    pub n_nonlinear_redundant: usize,
    pub n_irrelevant: usize,
    pub error_sd: f64,
    pub n_splines: usize,
    pub spline_knots: usize,
    pub knot_range: (f64, f64),
    pub seed: u64,
}

impl Default for SyntheticSpec {
    /// The 70-feature layout: 10 informative, 20 linear redundant, 20
    /// nonlinear redundant, 20 irrelevant.
    fn default() -> Self {
        SyntheticSpec {
            n: 100_000,
            n_informative: 10,
            n_linear_redundant: 20,
            n_nonlinear_redundant: 20,
            n_irrelevant: 20,
            error_sd: 0.1,
            n_splines: 10,
            spline_knots: RANDOM_SPLINE_KNOTS,
            knot_range: (-3.0, 3.0),
            seed: 0,
        }
    }
}

impl SyntheticSpec {
    /// Default layout with the given size and seed.
    pub fn with_size(n: usize, seed: u64) -> Self {
        SyntheticSpec {
            n,
            seed,
            ..SyntheticSpec::default()
        }
    }

    pub fn total_features(&self) -> usize {
        self.n_informative + self.n_linear_redundant + self.n_nonlinear_redundant + self.n_irrelevant
    }

    fn validate(&self) -> Result<(), SynthError> {
        if self.n < 2 {
            return Err(SynthError::InvalidSpec("need at least 2 rows".into()));
        }
        if self.total_features() == 0 {
            return Err(SynthError::InvalidSpec("no features requested".into()));
        }
        if self.n_informative == 0 {
            return Err(SynthError::InvalidSpec(
                "need at least one informative feature (labels depend on them)".into(),
            ));
        }
        if !self.error_sd.is_finite() || self.error_sd < 0.0 {
            return Err(SynthError::InvalidSpec(
                "error_sd must be finite and >= 0".into(),
            ));
        }
        if self.n_splines == 0 {
            return Err(SynthError::InvalidSpec("need at least one spline".into()));
        }
        if self.spline_knots < 2 {
            return Err(SynthError::InvalidSpec("need at least two knots".into()));
        }
        if self.knot_range.0.partial_cmp(&self.knot_range.1) != Some(std::cmp::Ordering::Less) {
            return Err(SynthError::InvalidSpec("empty knot range".into()));
        }
        Ok(())
    }
}

/// Which structural group a generated feature belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureGroup {
    Informative,
    LinearRedundant,
    NonlinearRedundant,
    Irrelevant,
}

/// Parent subset and combination weights of a redundant feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mixing {
    /// Indices into the informative feature block.
    pub parents: Vec<usize>,
    pub weights: Vec<f64>,
}

/// Everything the generator knows that a consumer of the CSV would not.
#[derive(Debug, Clone)]
pub struct SyntheticGroundTruth {
    /// Latent covariates, column-major, n x n_informative.
    pub latent: Vec<Vec<f64>>,
    /// Logistic coefficients, one per latent column.
    pub beta: Vec<f64>,
    /// Per-row, per-latent-column noise inside the logit sum.
    pub noise: Vec<Vec<f64>>,
    /// Conversion probability per row.
    pub probability: Vec<f64>,
    pub group_of_feature: Vec<FeatureGroup>,
    /// Parent structure for redundant features, `None` elsewhere.
    pub mixing: Vec<Option<Mixing>>,
    /// Spline id applied to the feature, `None` for untransformed groups.
    pub spline_of_feature: Vec<Option<usize>>,
    pub seed: u64,
}

impl SyntheticGroundTruth {
    /// Per-group feature indices, in layout order.
    pub fn indices_of_group(&self, group: FeatureGroup) -> Vec<usize> {
        self.group_of_feature
            .iter()
            .enumerate()
            .filter(|&(_, &g)| g == group)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Generate the benchmark dataset plus its ground truth.
pub fn generate(spec: &SyntheticSpec) -> Result<(Dataset, SyntheticGroundTruth), SynthError> {
    spec.validate()?;
    let n = spec.n;
    let seed = spec.seed;

    // Latent covariates and logit noise, one sub-stream per column.
    let latent: Vec<Vec<f64>> = (0..spec.n_informative)
        .map(|j| {
            let mut rng = derived_rng(seed, "synth.z", j as u64);
            (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
        })
        .collect();
    let noise: Vec<Vec<f64>> = (0..spec.n_informative)
        .map(|j| {
            let mut rng = derived_rng(seed, "synth.e", j as u64);
            let dist = Normal::new(0.0, spec.error_sd).expect("valid sd");
            (0..n).map(|_| dist.sample(&mut rng)).collect()
        })
        .collect();
    let beta: Vec<f64> = {
        let mut rng = derived_rng(seed, "synth.beta", 0);
        (0..spec.n_informative)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect()
    };

    // Logistic model over the latent covariates.
    let mut probability = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let logit: f64 = (0..spec.n_informative)
            .map(|j| latent[j][i] * beta[j] + noise[j][i])
            .sum();
        let p = 1.0 / (1.0 + (-logit).exp());
        labels.push(u8::from(p >= 0.5));
        probability.push(p);
    }

    // Spline pool.
    let splines: Vec<Spline> = (0..spec.n_splines)
        .map(|s| {
            random_spline(
                derive_seed(seed, "synth.spline", s as u64),
                spec.spline_knots,
                spec.knot_range.0,
                spec.knot_range.1,
            )
        })
        .collect();

    let total = spec.total_features();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(total);
    let mut names: Vec<String> = Vec::with_capacity(total);
    let mut group_of_feature = Vec::with_capacity(total);
    let mut mixing: Vec<Option<Mixing>> = Vec::with_capacity(total);
    let mut spline_of_feature: Vec<Option<usize>> = Vec::with_capacity(total);

    // Informative block: spline transforms of the latent columns.
    let mut assign_rng = derived_rng(seed, "synth.spline_assign", 0);
    for j in 0..spec.n_informative {
        let sid = assign_rng.gen_range(0..spec.n_splines);
        columns.push(latent[j].iter().map(|&z| splines[sid].evaluate(z)).collect());
        names.push(format!("inf_{j:02}"));
        group_of_feature.push(FeatureGroup::Informative);
        mixing.push(None);
        spline_of_feature.push(Some(sid));
    }
    let informative: Vec<Vec<f64>> = columns.clone();

    let max_parents = spec.n_informative.min(10);
    let draw_mixing = |rng: &mut rand_chacha::ChaCha8Rng| -> Mixing {
        let size = rng.gen_range(1..=max_parents);
        // Sample `size` distinct informative indices.
        let mut pool: Vec<usize> = (0..spec.n_informative).collect();
        crate::seed::shuffle(&mut pool, rng);
        let mut parents = pool[..size].to_vec();
        parents.sort_unstable();
        let weight_dist = Normal::new(0.0, 1.0).expect("valid sd");
        let weights = (0..size).map(|_| weight_dist.sample(rng)).collect();
        Mixing { parents, weights }
    };
    let combine = |mix: &Mixing| -> Vec<f64> {
        let mut col = vec![0.0; n];
        for (&p, &w) in mix.parents.iter().zip(&mix.weights) {
            for (acc, &v) in col.iter_mut().zip(&informative[p]) {
                *acc += w * v;
            }
        }
        col
    };

    // Linear redundant block.
    for l in 0..spec.n_linear_redundant {
        let mut rng = derived_rng(seed, "synth.linear", l as u64);
        let mix = draw_mixing(&mut rng);
        columns.push(combine(&mix));
        names.push(format!("linred_{l:02}"));
        group_of_feature.push(FeatureGroup::LinearRedundant);
        mixing.push(Some(mix));
        spline_of_feature.push(None);
    }

    // Nonlinear redundant block: spline of an intermediate linear combination.
    for l in 0..spec.n_nonlinear_redundant {
        let mut rng = derived_rng(seed, "synth.nonlinear", l as u64);
        let mix = draw_mixing(&mut rng);
        let sid = rng.gen_range(0..spec.n_splines);
        let intermediate = combine(&mix);
        columns.push(intermediate.iter().map(|&v| splines[sid].evaluate(v)).collect());
        names.push(format!("nonlinred_{l:02}"));
        group_of_feature.push(FeatureGroup::NonlinearRedundant);
        mixing.push(Some(mix));
        spline_of_feature.push(Some(sid));
    }

    // Irrelevant block.
    for l in 0..spec.n_irrelevant {
        let mut rng = derived_rng(seed, "synth.irrelevant", l as u64);
        columns.push((0..n).map(|_| StandardNormal.sample(&mut rng)).collect());
        names.push(format!("irr_{l:02}"));
        group_of_feature.push(FeatureGroup::Irrelevant);
        mixing.push(None);
        spline_of_feature.push(None);
    }

    let dataset = Dataset::new(columns, labels, names)?;
    let truth = SyntheticGroundTruth {
        latent,
        beta,
        noise,
        probability,
        group_of_feature,
        mixing,
        spline_of_feature,
        seed,
    };
    Ok((dataset, truth))
}

/// Sidecar metadata schema for generated datasets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub version: u32,
    pub seed: u64,
    pub spec: SyntheticSpec,
    pub label_column: String,
    pub beta: Vec<f64>,
    pub columns: Vec<ColumnMeta>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnMeta {
    pub name: String,
    pub group: FeatureGroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spline: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parents: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

/// Name of the label column in generated CSV files.
pub const LABEL_COLUMN: &str = "label";

/// Write `data.csv` (features plus label) and `metadata.json` (group tags,
/// coefficients, mixing structure) under `dir`. Returns the two paths.
pub fn write_csv(
    data: &Dataset,
    truth: &SyntheticGroundTruth,
    spec: &SyntheticSpec,
    dir: &Path,
) -> Result<(std::path::PathBuf, std::path::PathBuf), SynthError> {
    std::fs::create_dir_all(dir).map_err(|source| SynthError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let csv_path = dir.join("data.csv");
    crate::dataset::write_csv(data, &csv_path, LABEL_COLUMN)?;

    let columns = data
        .names()
        .iter()
        .enumerate()
        .map(|(i, name)| ColumnMeta {
            name: name.clone(),
            group: truth.group_of_feature[i],
            spline: truth.spline_of_feature[i],
            parents: truth.mixing[i].as_ref().map(|m| m.parents.clone()),
            weights: truth.mixing[i].as_ref().map(|m| m.weights.clone()),
        })
        .collect();
    let meta = Metadata {
        version: 1,
        seed: truth.seed,
        spec: spec.clone(),
        label_column: LABEL_COLUMN.to_owned(),
        beta: truth.beta.clone(),
        columns,
    };
    let meta_path = dir.join("metadata.json");
    let body = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    std::fs::write(&meta_path, body).map_err(|source| SynthError::Io {
        path: meta_path.display().to_string(),
        source,
    })?;
    Ok((csv_path, meta_path))
}
