pub mod benchmark;
pub mod select;
pub mod synth;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use std::path::Path;

/// Load a JSON config file (the same schema the manifest echoes).
pub fn load_config<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let body = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    serde_json::from_str(&body)
        .with_context(|| format!("cannot parse config {}", path.display()))
}
