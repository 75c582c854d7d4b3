//! `mrmr synth`: generate the synthetic benchmark dataset.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use mrmr_core::synth::{generate, write_csv, SyntheticSpec};

use crate::manifest::{now_unix_ms, tool_version, write_manifest, Manifest};

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Rows to generate.
    #[arg(long)]
    pub n: Option<usize>,

    /// Root seed; identical seeds reproduce identical files.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory for data.csv, metadata.json, manifest.json.
    #[arg(long)]
    pub out: PathBuf,

    /// Number of informative features.
    #[arg(long)]
    pub informative: Option<usize>,

    /// Number of linear redundant features.
    #[arg(long)]
    pub linear_redundant: Option<usize>,

    /// Number of nonlinear redundant features.
    #[arg(long)]
    pub nonlinear_redundant: Option<usize>,

    /// Number of irrelevant noise features.
    #[arg(long)]
    pub irrelevant: Option<usize>,

    /// Standard deviation of the logit noise term.
    #[arg(long)]
    pub error_sd: Option<f64>,

    /// Size of the random spline pool.
    #[arg(long)]
    pub splines: Option<usize>,

    /// JSON spec file (same schema as the manifest's config). Explicit
    /// flags override individual fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn resolve_spec(args: &SynthArgs) -> Result<SyntheticSpec> {
    let mut spec: SyntheticSpec = match &args.config {
        Some(path) => super::load_config(path)?,
        None => SyntheticSpec::default(),
    };
    if let Some(n) = args.n {
        spec.n = n;
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(v) = args.informative {
        spec.n_informative = v;
    }
    if let Some(v) = args.linear_redundant {
        spec.n_linear_redundant = v;
    }
    if let Some(v) = args.nonlinear_redundant {
        spec.n_nonlinear_redundant = v;
    }
    if let Some(v) = args.irrelevant {
        spec.n_irrelevant = v;
    }
    if let Some(v) = args.error_sd {
        spec.error_sd = v;
    }
    if let Some(v) = args.splines {
        spec.n_splines = v;
    }
    Ok(spec)
}

pub fn run(args: SynthArgs) -> Result<()> {
    let started = now_unix_ms();
    let spec = resolve_spec(&args)?;

    let (data, truth) = generate(&spec).context("generation failed")?;
    let (csv_path, meta_path) =
        write_csv(&data, &truth, &spec, &args.out).context("writing dataset failed")?;

    let ones = data.labels().iter().filter(|&&y| y == 1).count();
    println!(
        "wrote {} rows x {} features to {} (class-1 fraction {:.3})",
        data.n_rows(),
        data.n_features(),
        csv_path.display(),
        ones as f64 / data.n_rows() as f64
    );

    let manifest = Manifest {
        tool: "mrmr",
        tool_version: tool_version(),
        command: "synth",
        root_seed: spec.seed,
        config: serde_json::to_value(&spec)?,
        inputs: Vec::new(),
        outputs: vec![
            csv_path.display().to_string(),
            meta_path.display().to_string(),
        ],
        started_unix_ms: started,
        finished_unix_ms: now_unix_ms(),
    };
    write_manifest(&args.out, &manifest)?;
    Ok(())
}
