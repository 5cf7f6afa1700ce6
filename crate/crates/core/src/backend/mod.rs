//! Model backend contract.
//!
//! Every learned component is reached through [`PositionScorer`] and
//! [`StatementGenerator`]. Messages carry token texts as arrays so a backend
//! can never re-tokenize inconsistently with stage-1 indices.

mod http;
pub mod scripted;

pub use http::HttpBackend;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Placeholder token marking where stage 2 must generate a statement.
pub const MASK: &str = "<mask>";

pub const DEFAULT_BEAM_SIZE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error("backend unavailable: {0}")]
    Unavailable(String),
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("expected exactly one {MASK} token, found {0}")]
    NoMask(usize),
    #[error("backend has no retrieval entries")]
    EmptyModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRequest {
    pub tokens: Vec<String>,
    pub candidate_indices: Vec<usize>,
}

impl ScoreRequest {
    pub fn validate(&self) -> Result<(), BackendError> {
        if self.tokens.is_empty() {
            return Err(BackendError::Protocol("score request has no tokens".into()));
        }
        if let Some(bad) = self
            .candidate_indices
            .iter()
            .find(|&&i| i >= self.tokens.len())
        {
            return Err(BackendError::Protocol(format!(
                "candidate index {bad} outside {} tokens",
                self.tokens.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreResponse {
    pub probabilities: Vec<f64>,
}

impl ScoreResponse {
    pub fn validate_for(&self, req: &ScoreRequest) -> Result<(), BackendError> {
        if self.probabilities.len() != req.tokens.len() {
            return Err(BackendError::Protocol(format!(
                "{} probabilities for {} tokens",
                self.probabilities.len(),
                req.tokens.len()
            )));
        }
        if let Some(p) = self
            .probabilities
            .iter()
            .find(|p| !(0.0..=1.0).contains(*p))
        {
            return Err(BackendError::Protocol(format!(
                "probability {p} outside [0, 1]"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateRequest {
    pub tokens: Vec<String>,
    pub beam_size: usize,
}

impl GenerateRequest {
    pub fn mask_position(&self) -> Result<usize, BackendError> {
        mask_position(&self.tokens)
    }

    pub fn validate(&self) -> Result<(), BackendError> {
        if self.beam_size == 0 {
            return Err(BackendError::Protocol("beam size must be positive".into()));
        }
        self.mask_position().map(|_| ())
    }
}

/// Index of the single mask token in `tokens`.
pub fn mask_position<S: AsRef<str>>(tokens: &[S]) -> Result<usize, BackendError> {
    let mut found = None;
    let mut count = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.as_ref() == MASK {
            found.get_or_insert(i);
            count += 1;
        }
    }
    match (found, count) {
        (Some(i), 1) => Ok(i),
        _ => Err(BackendError::NoMask(count)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub text: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateResponse {
    pub candidates: Vec<Candidate>,
}

impl GenerateResponse {
    /// Checks ranking and shape. An empty candidate list is accepted here;
    /// the pipeline reports it separately.
    pub fn validate_for(&self, req: &GenerateRequest) -> Result<(), BackendError> {
        if self.candidates.len() > req.beam_size {
            return Err(BackendError::Protocol(format!(
                "{} candidates for beam size {}",
                self.candidates.len(),
                req.beam_size
            )));
        }
        if self.candidates.windows(2).any(|w| w[1].score > w[0].score) {
            return Err(BackendError::Protocol(
                "candidate scores are not ranked".into(),
            ));
        }
        if let Some(c) = self
            .candidates
            .iter()
            .find(|c| !c.text.trim_end().ends_with(';'))
        {
            return Err(BackendError::Protocol(format!(
                "candidate is not a single statement: {:?}",
                c.text
            )));
        }
        Ok(())
    }
}

/// Stage 1: per-token probability that a statement follows the token.
pub trait PositionScorer: Send + Sync {
    fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse, BackendError>;
}

/// Stage 2: ranked statements for a masked token sequence.
pub trait StatementGenerator: Send + Sync {
    fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse, BackendError>;
}

impl<T: PositionScorer + ?Sized> PositionScorer for &T {
    fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse, BackendError> {
        (**self).score(req)
    }
}

impl<T: StatementGenerator + ?Sized> StatementGenerator for &T {
    fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse, BackendError> {
        (**self).generate(req)
    }
}

impl<T: PositionScorer + ?Sized> PositionScorer for Box<T> {
    fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse, BackendError> {
        (**self).score(req)
    }
}

impl<T: StatementGenerator + ?Sized> StatementGenerator for Box<T> {
    fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse, BackendError> {
        (**self).generate(req)
    }
}
