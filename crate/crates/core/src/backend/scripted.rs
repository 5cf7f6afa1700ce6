//! Closure-driven backends for tests, benchmarks and offline experiments.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{
    BackendError, Candidate, GenerateRequest, GenerateResponse, PositionScorer, ScoreRequest,
    ScoreResponse, StatementGenerator,
};

type ScoreFn = dyn Fn(&ScoreRequest) -> Vec<f64> + Send + Sync;
type GenerateFn = dyn Fn(&GenerateRequest) -> Vec<Candidate> + Send + Sync;

pub struct ScriptedScorer {
    f: Box<ScoreFn>,
}

impl ScriptedScorer {
    pub fn new(f: impl Fn(&ScoreRequest) -> Vec<f64> + Send + Sync + 'static) -> Self {
        ScriptedScorer { f: Box::new(f) }
    }

    pub fn constant(p: f64) -> Self {
        Self::new(move |req| vec![p; req.tokens.len()])
    }

    /// Pseudo-random probabilities derived from `seed` and each token's text
    /// and position. Deterministic for a given build.
    pub fn hashed(seed: u64) -> Self {
        Self::new(move |req| {
            req.tokens
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let mut h = DefaultHasher::new();
                    (seed, i, t).hash(&mut h);
                    (h.finish() >> 11) as f64 / (1u64 << 53) as f64
                })
                .collect()
        })
    }
}

impl PositionScorer for ScriptedScorer {
    fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse, BackendError> {
        req.validate()?;
        let resp = ScoreResponse {
            probabilities: (self.f)(req),
        };
        resp.validate_for(req)?;
        Ok(resp)
    }
}

pub struct ScriptedGenerator {
    f: Box<GenerateFn>,
}

impl ScriptedGenerator {
    pub fn new(f: impl Fn(&GenerateRequest) -> Vec<Candidate> + Send + Sync + 'static) -> Self {
        ScriptedGenerator { f: Box::new(f) }
    }

    /// Always proposes `texts` in order, truncated to the beam size.
    pub fn fixed<I, S>(texts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let texts: Vec<String> = texts.into_iter().map(Into::into).collect();
        Self::new(move |req| {
            texts
                .iter()
                .take(req.beam_size)
                .enumerate()
                .map(|(i, t)| Candidate {
                    text: t.clone(),
                    score: -(i as f64),
                })
                .collect()
        })
    }
}

impl StatementGenerator for ScriptedGenerator {
    fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse, BackendError> {
        req.validate()?;
        let resp = GenerateResponse {
            candidates: (self.f)(req),
        };
        resp.validate_for(req)?;
        Ok(resp)
    }
}

/// A backend that fails every call, for error-path tests.
pub struct Unreachable;

impl PositionScorer for Unreachable {
    fn score(&self, _: &ScoreRequest) -> Result<ScoreResponse, BackendError> {
        Err(BackendError::Unavailable("scripted outage".into()))
    }
}

impl StatementGenerator for Unreachable {
    fn generate(&self, _: &GenerateRequest) -> Result<GenerateResponse, BackendError> {
        Err(BackendError::Unavailable("scripted outage".into()))
    }
}
