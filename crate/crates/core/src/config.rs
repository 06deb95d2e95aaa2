//! Analyzer thresholds and the `liveref.json` workspace file.

use std::path::Path;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONFIG_FILE: &str = "liveref.json";

/// Which candidates are surfaced to the user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every candidate, with overlapping gutters.
    #[default]
    All,
    /// Only the most severe candidate.
    Top1,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Mode::All),
            "top1" => Ok(Mode::Top1),
            other => Err(Error::Config(format!("unknown mode `{other}` (expected `all` or `top1`)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config<T> {
    pub min_method_loc: u32,
    pub min_cyclomatic: u32,
    pub min_cognitive: u32,
    pub min_halstead_effort: T,
    pub min_candidate_statements: u32,
    pub max_candidate_fraction: T,
    pub edit_trigger_chars: u32,
    pub mode: Mode,
    /// Small edits add up until they reach `edit_trigger_chars`; when false,
    /// each edit is judged on its own.
    pub accumulate_edits: bool,
}

impl<T: Float> Default for Config<T> {
    fn default() -> Self {
        Config {
            min_method_loc: 50,
            min_cyclomatic: 15,
            min_cognitive: 15,
            min_halstead_effort: T::from(50.0).unwrap(),
            min_candidate_statements: 4,
            max_candidate_fraction: T::from(0.8).unwrap(),
            edit_trigger_chars: 10,
            mode: Mode::All,
            accumulate_edits: true,
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "min_method_loc",
    "min_cyclomatic",
    "min_cognitive",
    "min_halstead_effort",
    "min_candidate_statements",
    "max_candidate_fraction",
    "edit_trigger_chars",
    "mode",
    "accumulate_edits",
];

impl<T: Float> Config<T> {
    pub fn validate(&self) -> Result<()> {
        let fraction = self.max_candidate_fraction;
        if !(fraction > T::zero() && fraction < T::one()) {
            return Err(Error::Config("max_candidate_fraction must lie strictly between 0 and 1".into()));
        }
        if self.min_candidate_statements < 1 {
            return Err(Error::Config("min_candidate_statements must be at least 1".into()));
        }
        if self.min_halstead_effort.is_nan() || self.min_halstead_effort < T::zero() || !self.min_halstead_effort.is_finite() {
            return Err(Error::Config("min_halstead_effort must be a non-negative number".into()));
        }
        Ok(())
    }
}

impl<T> Config<T>
where
    T: Float + for<'de> Deserialize<'de>,
{
    /// Parse a JSON config. Missing keys take their defaults; unknown keys
    /// are returned as warnings.
    pub fn from_json(text: &str) -> Result<(Self, Vec<String>)> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut warnings = Vec::new();
        if let Some(map) = value.as_object() {
            for key in map.keys() {
                if !KNOWN_KEYS.contains(&key.as_str()) {
                    warnings.push(format!("unknown configuration key `{key}` ignored"));
                }
            }
        }
        let cfg: Config<T> = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok((cfg, warnings))
    }

    pub fn load(path: &Path) -> Result<(Self, Vec<String>)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// `liveref.json` from `root`, or defaults when the file is absent.
    pub fn load_workspace(root: &Path) -> Result<(Self, Vec<String>)> {
        let path = root.join(CONFIG_FILE);
        if path.is_file() {
            Self::load(&path)
        } else {
            Ok((Self::default(), Vec::new()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_published_thresholds() {
        let c = Config::<f64>::default();
        assert_eq!((c.min_method_loc, c.min_cyclomatic, c.min_cognitive), (50, 15, 15));
        assert_eq!(c.min_halstead_effort, 50.0);
        assert_eq!(c.min_candidate_statements, 4);
        assert_eq!(c.max_candidate_fraction, 0.8);
        assert_eq!(c.edit_trigger_chars, 10);
        assert_eq!(c.mode, Mode::All);
        c.validate().unwrap();
    }

    #[test]
    fn partial_file_and_unknown_keys() {
        let (c, warnings) = Config::<f64>::from_json(r#"{"min_method_loc": 10, "mode": "top1", "colour": 3}"#).unwrap();
        assert_eq!(c.min_method_loc, 10);
        assert_eq!(c.mode, Mode::Top1);
        assert_eq!(c.min_cyclomatic, 15);
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("colour"));
    }

    #[test]
    fn invalid_fraction_rejected() {
        assert!(Config::<f64>::from_json(r#"{"max_candidate_fraction": 1.0}"#).is_err());
        assert!(Config::<f32>::from_json(r#"{"max_candidate_fraction": 0.0}"#).is_err());
        assert!(Config::<f64>::from_json(r#"{"min_candidate_statements": 0}"#).is_err());
        assert!(Config::<f64>::from_json(r#"{"min_halstead_effort": -1}"#).is_err());
    }

    #[test]
    fn missing_workspace_file_gives_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let (c, w) = Config::<f64>::load_workspace(dir.path()).unwrap();
        assert_eq!(c, Config::default());
        assert!(w.is_empty());
    }
}
