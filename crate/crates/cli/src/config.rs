//! Tool configuration: defaults, then a JSON config file, then flags.

use std::fs;
use std::path::Path;

use loggen_core::backend::DEFAULT_BEAM_SIZE;
use loggen_core::baseline::{DEFAULT_ALPHA, DEFAULT_WINDOW};
use loggen_core::chunker::{
    Policy, SplitConfig, DEFAULT_CONTEXT_STATEMENTS, DEFAULT_MAX_CHUNK_LEN, DEFAULT_MAX_INPUT_LEN,
};
use loggen_core::corpus::DEFAULT_LOGGER_PATTERN;
use loggen_core::pipeline::{PipelineConfig, DEFAULT_SUGGEST_BUDGET, DEFAULT_SUGGEST_THRESHOLD};
use loggen_core::{EvalConfig, MessageNormalization};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToolConfig {
    pub max_input_len: usize,
    pub max_chunk_len: usize,
    pub context_statements: usize,
    pub policy: String,
    pub beam: usize,
    pub suggest_budget: usize,
    pub suggest_threshold: f64,
    pub backend: Option<String>,
    pub logger_pattern: String,
    pub fold_literal_whitespace: bool,
    pub baseline_window: usize,
    pub baseline_alpha: f64,
    pub timeout_s: f64,
}

impl Default for ToolConfig {
    fn default() -> Self {
        ToolConfig {
            max_input_len: DEFAULT_MAX_INPUT_LEN,
            max_chunk_len: DEFAULT_MAX_CHUNK_LEN,
            context_statements: DEFAULT_CONTEXT_STATEMENTS,
            policy: Policy::AverageSplitStatement.as_str().into(),
            beam: DEFAULT_BEAM_SIZE,
            suggest_budget: DEFAULT_SUGGEST_BUDGET,
            suggest_threshold: DEFAULT_SUGGEST_THRESHOLD,
            backend: None,
            logger_pattern: DEFAULT_LOGGER_PATTERN.into(),
            fold_literal_whitespace: false,
            baseline_window: DEFAULT_WINDOW,
            baseline_alpha: DEFAULT_ALPHA,
            timeout_s: 30.0,
        }
    }
}

/// Flag values that override the config file when present.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub max_input_len: Option<usize>,
    pub max_chunk_len: Option<usize>,
    pub context_statements: Option<usize>,
    pub policy: Option<String>,
    pub beam: Option<usize>,
    pub suggest_budget: Option<usize>,
    pub suggest_threshold: Option<f64>,
    pub backend: Option<String>,
    pub logger_pattern: Option<String>,
    pub fold_literal_whitespace: bool,
    pub baseline_window: Option<usize>,
    pub baseline_alpha: Option<f64>,
}

impl ToolConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(ToolConfig::default()),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::new("config", format!("{}: {e}", p.display())))
            }
        }
    }

    pub fn apply(mut self, o: &Overrides) -> Self {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { self.$f = v; } )* };
        }
        set!(
            max_input_len,
            max_chunk_len,
            context_statements,
            policy,
            beam,
            suggest_budget,
            suggest_threshold,
            logger_pattern,
            baseline_window,
            baseline_alpha
        );
        if o.backend.is_some() {
            self.backend = o.backend.clone();
        }
        self.fold_literal_whitespace |= o.fold_literal_whitespace;
        self
    }

    /// `L`, `m`, `k` from the config, then the named policy on top. A
    /// parameterised policy name (`average-split-300-statement-5`) sets its
    /// own `m` and `k`.
    pub fn split(&self) -> Result<SplitConfig, CliError> {
        let base = SplitConfig {
            max_input_len: self.max_input_len,
            max_chunk_len: self.max_chunk_len,
            context_statements: self.context_statements,
            policy: Policy::AverageSplitStatement,
        };
        let cfg = base.with_strategy(&self.policy)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn pipeline(&self) -> Result<PipelineConfig, CliError> {
        let cfg = PipelineConfig {
            split: self.split()?,
            beam_size: self.beam,
            suggest_budget: self.suggest_budget,
            suggest_threshold: self.suggest_threshold,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn eval(&self) -> Result<EvalConfig, CliError> {
        Ok(EvalConfig {
            pipeline: self.pipeline()?,
            normalization: MessageNormalization {
                fold_literal_whitespace: self.fold_literal_whitespace,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: ToolConfig =
            serde_json::from_str(r#"{"beam": 4, "max_chunk_len": 200}"#).unwrap();
        assert_eq!(file.beam, 4);
        assert_eq!(file.max_input_len, 512);
        let o = Overrides {
            beam: Some(7),
            ..Default::default()
        };
        let cfg = file.apply(&o);
        assert_eq!(cfg.beam, 7);
        assert_eq!(cfg.max_chunk_len, 200);
        assert_eq!(cfg.pipeline().unwrap().split.max_chunk_len, 200);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ToolConfig>(r#"{"beams": 4}"#).is_err());
    }

    #[test]
    fn parameterised_policy() {
        let cfg = ToolConfig {
            policy: "average-split-300-statement-1".into(),
            ..Default::default()
        };
        let s = cfg.split().unwrap();
        assert_eq!((s.max_chunk_len, s.context_statements), (300, 1));
        let cfg = ToolConfig {
            policy: "nope".into(),
            ..Default::default()
        };
        assert!(cfg.split().is_err());
    }

    #[test]
    fn invalid_values_are_errors() {
        let cfg = ToolConfig {
            beam: 0,
            ..Default::default()
        };
        assert!(cfg.pipeline().is_err());
        let cfg = ToolConfig {
            suggest_threshold: 1.5,
            ..Default::default()
        };
        assert!(cfg.pipeline().is_err());
        let cfg = ToolConfig {
            max_chunk_len: 600,
            ..Default::default()
        };
        assert!(cfg.split().is_err());
    }
}
