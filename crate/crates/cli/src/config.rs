//! Flat TOML configuration file. Every key has a command-line twin; flags win.

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dump: Option<PathBuf>,
    pub mode: Option<String>,
    pub ns: Option<Vec<i64>>,
    pub tier: Option<String>,
    pub tags: Option<PathBuf>,
    pub aliases: Option<Vec<String>>,
    pub vectors: Option<PathBuf>,
    pub sidecar: Option<String>,
    pub sidecar_cmd: Option<String>,
    pub timeout_secs: Option<u64>,
    pub baseline: Option<f64>,
    pub no_semantic: Option<bool>,
    pub threshold: Option<f64>,
    pub ratings: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
