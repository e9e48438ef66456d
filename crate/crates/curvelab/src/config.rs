//! Run configuration: parsed from CLI flags and an optional key-value
//! config file. Unknown keys are rejected.

use crate::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "dot" => Ok(OutputFormat::Dot),
            "text" => Ok(OutputFormat::Text),
            other => Err(invalid(format!("unknown output format '{other}'"))),
        }
    }
}

/// Validated run configuration shared by the subcommands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub surface: Option<String>,
    pub family: Option<String>,
    pub k: Option<u64>,
    pub edge: Option<String>,
    pub edge_preset: Option<String>,
    pub budget: Option<u64>,
    pub seed: u64,
    pub format: OutputFormat,
    /// Whether the systolic family also joins two separating vertices at
    /// two intersections (the definition reads either way; this is the
    /// implemented toggle).
    pub sc_separating_pairs: bool,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            surface: None,
            family: None,
            k: None,
            edge: None,
            edge_preset: None,
            budget: None,
            seed: 0,
            format: OutputFormat::Text,
            sc_separating_pairs: true,
            threads: None,
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "surface",
    "family",
    "k",
    "edge",
    "edge-preset",
    "budget",
    "seed",
    "format",
    "sc-separating-pairs",
    "threads",
];

impl RunConfig {
    /// Parse the documented key-value text format: one `key = value` pair
    /// per line, `#` comments allowed.
    pub fn from_file_text(text: &str) -> Result<Self> {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                invalid(format!("config line {} is not key = value", lineno + 1))
            })?;
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(invalid(format!("unknown config key '{key}'")));
            }
            map.insert(key, value.trim().to_string());
        }
        let mut cfg = RunConfig::default();
        cfg.apply(&map)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, map: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in map {
            match k.as_str() {
                "surface" => self.surface = Some(v.clone()),
                "family" => self.family = Some(v.clone()),
                "k" => {
                    self.k = Some(v.parse().map_err(|_| invalid(format!("bad k '{v}'")))?)
                }
                "edge" => self.edge = Some(v.clone()),
                "edge-preset" => self.edge_preset = Some(v.clone()),
                "budget" => {
                    self.budget =
                        Some(v.parse().map_err(|_| invalid(format!("bad budget '{v}'")))?)
                }
                "seed" => {
                    self.seed = v.parse().map_err(|_| invalid(format!("bad seed '{v}'")))?
                }
                "format" => self.format = OutputFormat::parse(v)?,
                "sc-separating-pairs" => {
                    self.sc_separating_pairs = match v.as_str() {
                        "true" | "1" => true,
                        "false" | "0" => false,
                        _ => return Err(invalid(format!("bad boolean '{v}'"))),
                    }
                }
                "threads" => {
                    self.threads =
                        Some(v.parse().map_err(|_| invalid(format!("bad threads '{v}'")))?)
                }
                other => return Err(invalid(format!("unknown config key '{other}'"))),
            }
        }
        Ok(())
    }

    /// Resolve the thread cap: explicit config, then CURVELAB_THREADS, then
    /// single-threaded. Computations are sequential, so the cap only needs
    /// to be respected, never exceeded.
    pub fn thread_cap(&self) -> usize {
        self.threads
            .or_else(|| {
                std::env::var("CURVELAB_THREADS")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(1)
            .max(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let cfg = RunConfig::from_file_text(
            "surface = g1p1\nk = 2\nformat = json\n# comment\nseed = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.surface.as_deref(), Some("g1p1"));
        assert_eq!(cfg.k, Some(2));
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(RunConfig::from_file_text("mystery = 3\n").is_err());
        assert!(RunConfig::from_file_text("k : 3\n").is_err());
    }
}
