use std::path::Path;

use anyhow::{Context, Result};
use duke_bounds::optimizer::OptimConfig;
use duke_bounds::specfun::EvalOptions;
use serde::Deserialize;

/// Flat `key = value` overrides read from a TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub grid_resolution: Option<usize>,
    pub nm_restarts: Option<usize>,
    pub nm_tol: Option<f64>,
    pub max_evals: Option<u64>,
    pub seed: Option<u64>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub tail_cutoff: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: FileConfig =
            toml::from_str(&text).map_err(|e| Usage(format!("config {}: {e}", path.display())))?;
        Ok(cfg)
    }

    pub fn apply(&self, optim: &mut OptimConfig, eval: &mut EvalOptions) {
        macro_rules! set {
            ($dst:expr, $src:expr) => {
                if let Some(v) = $src {
                    $dst = v;
                }
            };
        }
        set!(optim.grid_resolution, self.grid_resolution);
        set!(optim.nm_restarts, self.nm_restarts);
        set!(optim.nm_tol, self.nm_tol);
        set!(optim.max_evals, self.max_evals);
        set!(optim.seed, self.seed);
        set!(eval.abs_tol, self.abs_tol);
        set!(eval.rel_tol, self.rel_tol);
        set!(eval.tail_cutoff, self.tail_cutoff);
    }
}

/// An error caused by bad flags or input, reported with exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}
