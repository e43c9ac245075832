//! Engine thresholds and the flat `key = value` config file format.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trace::EditKind;

pub const KEYS: [&str; 6] = [
    "t_par",
    "t_dl_rm",
    "t_dl_ex",
    "mp_threshold",
    "la_threshold",
    "max_iterations",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value {value:?} for {key}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("{key} = {value} is out of range: {reason}")]
    Invalid {
        key: &'static str,
        value: String,
        reason: &'static str,
    },
}

/// Search thresholds and caps.
///
/// `t_par`, `t_dl_rm` and `t_dl_ex` multiply the current sentence's score in the
/// acceptance gate; `mp_threshold` and `la_threshold` are the hard-filter cutoffs
/// for meaning preservation and linguistic acceptability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub t_par: f64,
    pub t_dl_rm: f64,
    pub t_dl_ex: f64,
    pub mp_threshold: f64,
    pub la_threshold: f64,
    pub max_iterations: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            t_par: 0.8,
            t_dl_rm: 1.1,
            t_dl_ex: 1.25,
            mp_threshold: 0.7,
            la_threshold: 0.3,
            max_iterations: 10,
        }
    }
}

impl EngineConfig {
    /// Gate multiplier for an edit kind.
    pub fn t_op(&self, kind: EditKind) -> f64 {
        match kind {
            EditKind::Paraphrase => self.t_par,
            EditKind::DeleteRemoval => self.t_dl_rm,
            EditKind::DeleteExtraction => self.t_dl_ex,
        }
    }

    /// Gate multipliers must be finite and strictly positive; filter cutoffs
    /// finite and non-negative (a zero cutoff disables the filter).
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (key, value) in [
            ("t_par", self.t_par),
            ("t_dl_rm", self.t_dl_rm),
            ("t_dl_ex", self.t_dl_ex),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ConfigError::Invalid {
                    key,
                    value: value.to_string(),
                    reason: "must be a finite number > 0",
                });
            }
        }
        for (key, value) in [
            ("mp_threshold", self.mp_threshold),
            ("la_threshold", self.la_threshold),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ConfigError::Invalid {
                    key,
                    value: value.to_string(),
                    reason: "must be a finite number >= 0",
                });
            }
        }
        if self.max_iterations == 0 {
            return Err(ConfigError::Invalid {
                key: "max_iterations",
                value: "0".into(),
                reason: "must be >= 1",
            });
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.parse()
    }

    /// Renders the config in the file format accepted by [`FromStr`].
    pub fn to_config_string(&self) -> String {
        self.to_string()
    }
}

/// Reads a config file; file values override the defaults.
pub fn load_config(path: impl AsRef<Path>) -> Result<EngineConfig, ConfigError> {
    EngineConfig::load(path)
}

impl FromStr for EngineConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut config = EngineConfig::default();
        let mut seen = [false; KEYS.len()];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    text: raw.to_owned(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(slot) = KEYS.iter().position(|k| *k == key) else {
                return Err(ConfigError::UnknownKey {
                    line: line_no,
                    key: key.to_owned(),
                });
            };
            if std::mem::replace(&mut seen[slot], true) {
                return Err(ConfigError::DuplicateKey {
                    line: line_no,
                    key: key.to_owned(),
                });
            }
            let bad = || ConfigError::BadValue {
                line: line_no,
                key: key.to_owned(),
                value: value.to_owned(),
            };
            if key == "max_iterations" {
                config.max_iterations = value.parse().map_err(|_| bad())?;
            } else {
                let v: f64 = value.parse().map_err(|_| bad())?;
                match key {
                    "t_par" => config.t_par = v,
                    "t_dl_rm" => config.t_dl_rm = v,
                    "t_dl_ex" => config.t_dl_ex = v,
                    "mp_threshold" => config.mp_threshold = v,
                    "la_threshold" => config.la_threshold = v,
                    _ => unreachable!(),
                }
            }
        }
        config.validate()?;
        Ok(config)
    }
}

impl fmt::Display for EngineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t_par = {:?}", self.t_par)?;
        writeln!(f, "t_dl_rm = {:?}", self.t_dl_rm)?;
        writeln!(f, "t_dl_ex = {:?}", self.t_dl_ex)?;
        writeln!(f, "mp_threshold = {:?}", self.mp_threshold)?;
        writeln!(f, "la_threshold = {:?}", self.la_threshold)?;
        writeln!(f, "max_iterations = {}", self.max_iterations)
    }
}
