//! Optional `key = value` configuration file.
//!
//! Blank lines and lines starting with `#` are ignored. Command-line flags
//! take precedence over anything set here.

use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub enumeration_cap: Option<usize>,
    pub term_cap: Option<usize>,
    pub panels_per_unit_frequency: Option<usize>,
    pub nodes_per_panel: Option<usize>,
    pub absolute_tolerance: Option<f64>,
    pub oscillation_cap: Option<f64>,
    pub bench_max_n: Option<usize>,
    pub bench_reps: Option<usize>,
    pub bench_max_abs: Option<i64>,
    pub verify_trials: Option<usize>,
    pub verify_max_n: Option<usize>,
    pub verify_max_abs: Option<i64>,
}

pub const CONFIG_ENV: &str = "SIGNSUM_CONFIG";

impl FileConfig {
    /// Reads `path`, or the file named by `SIGNSUM_CONFIG` when no path is
    /// given. No file at all yields the empty config.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let from_env = std::env::var_os(CONFIG_ENV);
        let Some(path) = path.or(from_env.as_deref().map(Path::new)) else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Parse(format!("cannot read config file {}: {e}", path.display()))
        })?;
        FileConfig::parse(&text)
            .map_err(|e| CliError::Parse(format!("config file {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = FileConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = lineno + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {lineno}: expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => cfg.seed = Some(num(key, value, lineno)?),
                "enumeration_cap" => cfg.enumeration_cap = Some(num(key, value, lineno)?),
                "term_cap" => cfg.term_cap = Some(num(key, value, lineno)?),
                "quadrature.panels_per_unit_frequency" => {
                    cfg.panels_per_unit_frequency = Some(num(key, value, lineno)?)
                }
                "quadrature.nodes_per_panel" => {
                    cfg.nodes_per_panel = Some(num(key, value, lineno)?)
                }
                "quadrature.absolute_tolerance" => {
                    cfg.absolute_tolerance = Some(num(key, value, lineno)?)
                }
                "quadrature.oscillation_cap" => {
                    cfg.oscillation_cap = Some(num(key, value, lineno)?)
                }
                "bench.max_n" => cfg.bench_max_n = Some(num(key, value, lineno)?),
                "bench.reps" => cfg.bench_reps = Some(num(key, value, lineno)?),
                "bench.max_abs" => cfg.bench_max_abs = Some(num(key, value, lineno)?),
                "verify.trials" => cfg.verify_trials = Some(num(key, value, lineno)?),
                "verify.max_n" => cfg.verify_max_n = Some(num(key, value, lineno)?),
                "verify.max_abs" => cfg.verify_max_abs = Some(num(key, value, lineno)?),
                _ => return Err(format!("line {lineno}: unknown key {key:?}")),
            }
        }
        Ok(cfg)
    }
}

fn num<T: FromStr>(key: &str, value: &str, lineno: usize) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("line {lineno}: invalid value {value:?} for {key}"))
}
