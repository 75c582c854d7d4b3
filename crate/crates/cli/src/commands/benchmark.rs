//! `mrmr benchmark`: the method x classifier x feature-count grid.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use mrmr_core::dataset::load_csv;
use mrmr_core::eval::{
    run_benchmark, ClassifierKind, DataSource, EvalConfig, Protocol,
};
use mrmr_core::seed::derive_seed;
use mrmr_core::selector::Method;
use mrmr_core::synth::SyntheticSpec;
use serde::{Deserialize, Serialize};

use crate::manifest::{
    fingerprint_file, now_unix_ms, tool_version, write_manifest, InputFingerprint, Manifest,
};

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// Labeled CSV to benchmark on (cross-validation protocol).
    #[arg(long, conflicts_with = "synthetic")]
    pub data: Option<PathBuf>,

    /// Name of the label column in --data.
    #[arg(long, default_value = "label")]
    pub label: String,

    /// Benchmark on generated synthetic data (fresh-data trials protocol).
    #[arg(long)]
    pub synthetic: bool,

    /// Synthetic rows per trial.
    #[arg(long)]
    pub n: Option<usize>,

    /// Root seed driving every sub-seed of the run.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Comma-separated methods (default: all eight).
    #[arg(long)]
    pub methods: Option<String>,

    /// Comma-separated classifiers (default: all three).
    #[arg(long)]
    pub classifiers: Option<String>,

    /// Cut points, either "a..b" (inclusive) or a comma list (default 1..top-k).
    #[arg(long)]
    pub feature_counts: Option<String>,

    /// Features to rank per method.
    #[arg(long, default_value_t = 20)]
    pub top_k: usize,

    /// Cross-validation folds (loaded data; default 4).
    #[arg(long, conflicts_with = "trials")]
    pub folds: Option<usize>,

    /// Fresh-data trials (synthetic source; default 10).
    #[arg(long)]
    pub trials: Option<usize>,

    /// Also pick the production feature count per method (forest AUC
    /// curve up to this many features).
    #[arg(long, num_args = 0..=1, default_missing_value = "50")]
    pub choose_n: Option<usize>,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// JSON config file (same schema as the manifest's config); replaces
    /// the grid flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Data source part of the resolved configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceConfig {
    Csv { path: PathBuf, label: String },
    Synthetic { spec: SyntheticSpec },
}

/// Resolved configuration echoed into the manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkCommandConfig {
    pub source: SourceConfig,
    pub eval: EvalConfig,
}

fn parse_list<T: std::str::FromStr>(input: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    input
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .with_context(|| format!("bad {what} entry {s:?}"))
        })
        .collect()
}

fn parse_counts(input: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = input.split_once("..") {
        let lo: usize = lo.trim().parse().context("bad range start")?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().context("bad range end")?;
        if lo == 0 || hi < lo {
            bail!("bad feature-count range {input:?}");
        }
        return Ok((lo..=hi).collect());
    }
    parse_list(input, "feature count")
}

fn resolve(args: &BenchmarkArgs) -> Result<BenchmarkCommandConfig> {
    if let Some(path) = &args.config {
        return super::load_config(path);
    }

    let source = if args.synthetic {
        let mut spec = SyntheticSpec::default();
        if let Some(n) = args.n {
            spec.n = n;
        }
        spec.seed = derive_seed(args.seed, "bench.synth", 0);
        SourceConfig::Synthetic { spec }
    } else if let Some(path) = &args.data {
        SourceConfig::Csv {
            path: path.clone(),
            label: args.label.clone(),
        }
    } else {
        bail!("either --data FILE or --synthetic is required (or provide --config)");
    };

    let protocol = match (&source, args.trials, args.folds) {
        (SourceConfig::Synthetic { .. }, trials, None) => Protocol::Trials {
            trials: trials.unwrap_or(10),
        },
        (SourceConfig::Synthetic { .. }, None, Some(folds)) => {
            Protocol::CrossValidation { folds }
        }
        (SourceConfig::Csv { .. }, None, folds) => Protocol::CrossValidation {
            folds: folds.unwrap_or(4),
        },
        (SourceConfig::Csv { .. }, Some(_), _) => {
            bail!("--trials requires --synthetic (fresh data per trial)")
        }
        (SourceConfig::Synthetic { .. }, Some(_), Some(_)) => {
            bail!("--trials and --folds are mutually exclusive")
        }
    };

    let mut eval = EvalConfig::full_grid(args.top_k, protocol, args.seed);
    if let Some(methods) = &args.methods {
        eval.methods = parse_list::<Method>(methods, "method")?;
    }
    if let Some(classifiers) = &args.classifiers {
        eval.classifiers = parse_list::<ClassifierKind>(classifiers, "classifier")?;
    }
    if let Some(counts) = &args.feature_counts {
        eval.feature_counts = parse_counts(counts)?;
    }
    eval.choose_n = args.choose_n;

    Ok(BenchmarkCommandConfig { source, eval })
}

pub fn run(args: BenchmarkArgs) -> Result<()> {
    let started = now_unix_ms();
    let config = resolve(&args)?;

    let mut inputs: Vec<InputFingerprint> = Vec::new();
    let source = match &config.source {
        SourceConfig::Csv { path, label } => {
            inputs.push(fingerprint_file(path)?);
            DataSource::Loaded(load_csv(path, label)?)
        }
        SourceConfig::Synthetic { spec } => DataSource::Synthetic(spec.clone()),
    };

    let report = run_benchmark(&source, &config.eval).context("benchmark failed")?;
    let outputs = report.write_files(&args.out)?;

    let iterations = match config.eval.protocol {
        Protocol::CrossValidation { folds } => folds,
        Protocol::Trials { trials } => trials,
    };
    println!(
        "{} methods x {} classifiers x {} feature counts over {} iterations -> {} cells",
        config.eval.methods.len(),
        config.eval.classifiers.len(),
        config.eval.feature_counts.len(),
        iterations,
        report.cells.len()
    );
    for timing in &report.timings {
        println!(
            "ranking time {:<5} {:>9.3} s total ({:.3} s/iteration)",
            timing.method.name(),
            timing.seconds_total,
            timing.seconds_total / timing.seconds_per_iteration.len().max(1) as f64
        );
    }
    if let Some(chosen) = &report.chosen_feature_counts {
        for entry in chosen {
            println!(
                "chosen feature count {:<5} -> {}",
                entry.method.name(),
                entry.count
            );
        }
    }
    let failed: Vec<&str> = report
        .cells
        .iter()
        .filter(|c| c.error.is_some())
        .map(|c| c.method.name())
        .collect();
    if !failed.is_empty() {
        let mut names = failed;
        names.sort_unstable();
        names.dedup();
        println!("cells with failures: {}", names.join(", "));
    }

    let manifest = Manifest {
        tool: "mrmr",
        tool_version: tool_version(),
        command: "benchmark",
        root_seed: config.eval.seed,
        config: serde_json::to_value(&config)?,
        inputs,
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        started_unix_ms: started,
        finished_unix_ms: now_unix_ms(),
    };
    write_manifest(&args.out, &manifest)?;
    Ok(())
}
