//! Run configuration: built-in defaults, an optional `key = value` file,
//! the `CAPAX_THREADS` environment variable and command-line flags.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use capax_core::ech::DEFAULT_MAX_PREFIX;
use capax_core::ellipsoid::DEFAULT_TRUNCATION;
use capax_core::selftest::DEFAULT_SEED;
use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub default_truncation_j: usize,
    pub max_prefix: usize,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            default_truncation_j: DEFAULT_TRUNCATION,
            max_prefix: DEFAULT_MAX_PREFIX,
            output_format: OutputFormat::Json,
            seed: DEFAULT_SEED,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// Values given on the command line; `None` falls through to the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub default_truncation_j: Option<usize>,
    pub max_prefix: Option<usize>,
    pub output_format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

fn positive(key: &str, v: &str) -> Result<usize, CliError> {
    match v.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::Usage(format!("{key} must be a positive integer, got {v:?}"))),
    }
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            match key {
                "default_truncation_j" => self.default_truncation_j = positive(key, value)?,
                "max_prefix" => self.max_prefix = positive(key, value)?,
                "threads" => self.threads = positive(key, value)?,
                "seed" => {
                    self.seed = value
                        .parse()
                        .map_err(|_| CliError::Usage(format!("seed must be an integer, got {value:?}")))?
                }
                "output_format" => self.output_format = value.parse().map_err(CliError::Usage)?,
                other => return Err(CliError::Usage(format!("unknown config key {other:?}"))),
            }
        }
        Ok(())
    }

    /// Precedence: flags, then the config file, then `CAPAX_THREADS` (for
    /// `threads` only), then the defaults.
    pub fn resolve(
        file: Option<&Path>,
        env_threads: Option<String>,
        flags: &Overrides,
    ) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(v) = env_threads {
            cfg.threads = positive("CAPAX_THREADS", &v)?;
        }
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            cfg.apply_text(&text)?;
        }
        if let Some(v) = flags.default_truncation_j {
            cfg.default_truncation_j = positive("--jmax", &v.to_string())?;
        }
        if let Some(v) = flags.max_prefix {
            cfg.max_prefix = positive("--max-prefix", &v.to_string())?;
        }
        if let Some(v) = flags.threads {
            cfg.threads = positive("--threads", &v.to_string())?;
        }
        if let Some(v) = flags.output_format {
            cfg.output_format = v;
        }
        if let Some(v) = flags.seed {
            cfg.seed = v;
        }
        Ok(cfg)
    }
}
