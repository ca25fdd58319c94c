use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use chrono::{SecondsFormat, Utc};
use duke_bounds::optimizer::OptimConfig;
use duke_bounds::specfun::EvalOptions;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ConfigSnapshot {
    pub optim: OptimConfig,
    pub eval: EvalOptions,
    pub threads: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub tool_version: &'static str,
    pub started: String,
    pub wall_time_s: f64,
    pub exit_code: u8,
    pub config: ConfigSnapshot,
    pub outputs: Vec<String>,
}

pub struct Recorder {
    start: Instant,
    manifest: RunManifest,
}

impl Recorder {
    pub fn new(config: ConfigSnapshot) -> Self {
        Recorder {
            start: Instant::now(),
            manifest: RunManifest {
                command: std::env::args().collect(),
                tool_version: env!("CARGO_PKG_VERSION"),
                started: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
                wall_time_s: 0.0,
                exit_code: 0,
                config,
                outputs: Vec::new(),
            },
        }
    }

    pub fn output(&mut self, path: &Path) {
        self.manifest.outputs.push(path.display().to_string());
    }

    /// Write the manifest to `dest`, or to stderr when `dest` is None.
    pub fn finish(mut self, exit_code: u8, dest: Option<&PathBuf>) -> Result<()> {
        self.manifest.wall_time_s = self.start.elapsed().as_secs_f64();
        self.manifest.exit_code = exit_code;
        let json = serde_json::to_string_pretty(&self.manifest)?;
        match dest {
            Some(path) => std::fs::write(path, json + "\n")
                .with_context(|| format!("writing manifest {}", path.display()))?,
            None => eprintln!("{json}"),
        }
        Ok(())
    }
}
