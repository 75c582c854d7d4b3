//! `mrmr select`: rank features of a labeled CSV.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use mrmr_core::dataset::load_csv;
use mrmr_core::forest::ForestParams;
use mrmr_core::measures::{RdcParams, DEFAULT_MI_BINS};
use mrmr_core::seed::derive_seed;
use mrmr_core::selector::{redundancy_heatmap, select, Method, SelectConfig, SelectionStep};
use serde::{Deserialize, Serialize};

use crate::manifest::{fingerprint_file, now_unix_ms, tool_version, write_manifest, Manifest};

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    pub data: Option<PathBuf>,

    /// Name of the label column (values must be 0 or 1).
    #[arg(long, default_value = "label")]
    pub label: String,

    /// Selection method: MID, MIQ, FCD, FCQ, FRQ, RFCQ, RFRQ, or RF.
    #[arg(long)]
    pub method: Option<String>,

    /// Number of features to rank.
    #[arg(long, default_value_t = 20)]
    pub top_k: usize,

    /// Root seed for forest training and RDC projections.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Also write a Pearson heatmap (ranked features plus label).
    #[arg(long)]
    pub heatmap: bool,

    /// Quantile bins for mutual-information estimates.
    #[arg(long, default_value_t = DEFAULT_MI_BINS)]
    pub mi_bins: usize,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// JSON config file (same schema as the manifest's config). Explicit
    /// flags override individual fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Resolved configuration echoed into the manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectCommandConfig {
    pub data: PathBuf,
    pub label: String,
    pub method: Method,
    pub top_k: usize,
    pub seed: u64,
    pub mi_bins: usize,
    pub heatmap: bool,
    pub forest: ForestParams,
    pub rdc: RdcParams,
}

fn resolve(args: &SelectArgs) -> Result<SelectCommandConfig> {
    let mut config: SelectCommandConfig = match &args.config {
        Some(path) => super::load_config(path)?,
        None => {
            let data = args
                .data
                .clone()
                .context("--data is required (or provide --config)")?;
            let method: Method = args
                .method
                .as_deref()
                .context("--method is required (or provide --config)")?
                .parse()?;
            SelectCommandConfig {
                data,
                label: args.label.clone(),
                method,
                top_k: args.top_k,
                seed: args.seed,
                mi_bins: args.mi_bins,
                heatmap: args.heatmap,
                forest: ForestParams::default(),
                rdc: RdcParams::default(),
            }
        }
    };
    if args.config.is_some() {
        if let Some(data) = &args.data {
            config.data = data.clone();
        }
        if let Some(method) = &args.method {
            config.method = method.parse()?;
        }
    }
    Ok(config)
}

#[derive(Serialize)]
struct RankingDoc<'a> {
    method: Method,
    data: String,
    label: &'a str,
    seed: u64,
    ranked: &'a [usize],
    names: Vec<&'a str>,
    steps: &'a [SelectionStep],
}

pub fn run(args: SelectArgs) -> Result<()> {
    let started = now_unix_ms();
    let config = resolve(&args)?;

    let dataset = load_csv(&config.data, &config.label)?;
    let input = fingerprint_file(&config.data)?;

    let mut select_config = SelectConfig::new(config.method.spec(), config.top_k);
    select_config.mi_bins = config.mi_bins;
    select_config.forest_params = Some(
        config
            .forest
            .with_seed(derive_seed(config.seed, "select.forest", 0)),
    );
    select_config.rdc_params = Some(RdcParams {
        seed: derive_seed(config.seed, "select.rdc", 0),
        ..config.rdc
    });

    let result = select(&dataset, &select_config).context("selection failed")?;

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let ranking_path = args.out.join("ranking.json");
    let doc = RankingDoc {
        method: config.method,
        data: config.data.display().to_string(),
        label: &config.label,
        seed: config.seed,
        ranked: &result.ranked,
        names: result
            .ranked
            .iter()
            .map(|&i| dataset.names()[i].as_str())
            .collect(),
        steps: &result.steps,
    };
    std::fs::write(&ranking_path, serde_json::to_string_pretty(&doc)? + "\n")
        .with_context(|| format!("cannot write {}", ranking_path.display()))?;

    println!("{} ranking of {}:", config.method, config.data.display());
    for (rank, step) in result.steps.iter().enumerate() {
        println!(
            "{:>3}  {:<24} relevance {:>12.6}  mean redundancy {:>10.6}  score {:>14.6}",
            rank + 1,
            dataset.names()[step.feature],
            step.relevance,
            step.mean_redundancy,
            step.score
        );
    }

    let mut outputs = vec![ranking_path.display().to_string()];
    if config.heatmap {
        let matrix = redundancy_heatmap(&dataset, &result.ranked)?;
        let mut body = String::from("feature");
        for &i in &result.ranked {
            let _ = write!(body, ",{}", dataset.names()[i]);
        }
        body.push_str(",label\n");
        let mut row_names: Vec<&str> = result
            .ranked
            .iter()
            .map(|&i| dataset.names()[i].as_str())
            .collect();
        row_names.push("label");
        for (name, row) in row_names.iter().zip(&matrix) {
            body.push_str(name);
            for v in row {
                let _ = write!(body, ",{v}");
            }
            body.push('\n');
        }
        let heatmap_path = args.out.join("heatmap.csv");
        std::fs::write(&heatmap_path, body)
            .with_context(|| format!("cannot write {}", heatmap_path.display()))?;
        outputs.push(heatmap_path.display().to_string());
    }

    let manifest = Manifest {
        tool: "mrmr",
        tool_version: tool_version(),
        command: "select",
        root_seed: config.seed,
        config: serde_json::to_value(&config)?,
        inputs: vec![input],
        outputs,
        started_unix_ms: started,
        finished_unix_ms: now_unix_ms(),
    };
    write_manifest(&args.out, &manifest)?;
    Ok(())
}
