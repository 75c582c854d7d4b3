//! Run manifests: the resolved configuration, input fingerprints, and
//! timestamps of one command invocation, written as `manifest.json` into
//! the output directory.
//!
//! Re-running a command with the manifest's config reproduces every data
//! output byte for byte; the timestamps (and wall-clock timing sidecars)
//! are the only volatile parts.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputFingerprint {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub root_seed: u64,
    pub config: serde_json::Value,
    pub inputs: Vec<InputFingerprint>,
    pub outputs: Vec<String>,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

pub fn now_unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// Size + SHA-256 fingerprint of one input file.
pub fn fingerprint_file(path: &Path) -> Result<InputFingerprint> {
    let body = std::fs::read(path)
        .with_context(|| format!("cannot read input {}", path.display()))?;
    let mut hasher = Sha256::new();
    hasher.update(&body);
    let digest = hasher.finalize();
    let mut sha256 = String::with_capacity(64);
    for byte in digest {
        sha256.push_str(&format!("{byte:02x}"));
    }
    Ok(InputFingerprint {
        path: path.display().to_string(),
        bytes: body.len() as u64,
        sha256,
    })
}

/// Serialize the manifest into `dir/manifest.json`.
pub fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<PathBuf> {
    let path = dir.join("manifest.json");
    let body = serde_json::to_string_pretty(manifest)? + "\n";
    std::fs::write(&path, body)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
