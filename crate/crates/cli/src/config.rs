//! Optional TOML config file with the same keys as the command-line flags.
//! Flags always win; the file only fills in what was not given.

use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub q: Option<f64>,
    pub k: Option<u32>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub series_file: Option<String>,
    pub tau: Option<Vec<String>>,
    pub grid_step: Option<f64>,
    pub truncation: Option<usize>,
    pub output: Option<String>,
    pub format: Option<String>,
    pub seed: Option<u64>,
    pub coeffs: Option<Vec<f64>>,
    pub q_ladder: Option<Vec<f64>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}
