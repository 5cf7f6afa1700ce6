//! Offline statistical backend.
//!
//! Position scores come from counts of how often a statement followed an
//! anchor given the `W` tokens ending at that anchor, with add-alpha
//! smoothing and back-off to shorter windows. Statements come from
//! nearest-context retrieval over the training samples. No neural model is
//! involved; the backend exists so the whole pipeline runs and can be tested
//! without one.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::{
    mask_position, BackendError, Candidate, GenerateRequest, GenerateResponse, PositionScorer,
    ScoreRequest, ScoreResponse, StatementGenerator,
};
use crate::corpus::{CorpusError, Sample};
use crate::lexer::anchors_of;
use crate::pipeline::build_masked_input;

pub const DEFAULT_WINDOW: usize = 4;
pub const DEFAULT_ALPHA: f64 = 1.0;
pub const MODEL_FORMAT: &str = "loggen-baseline/1";

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("invalid training parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Sample(#[from] CorpusError),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("model file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub insert: u64,
    pub total: u64,
}

impl Counts {
    fn smoothed(self, alpha: f64) -> f64 {
        let den = self.total as f64 + 2.0 * alpha;
        if den == 0.0 {
            0.5
        } else {
            (self.insert as f64 + alpha) / den
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetrievalEntry {
    pub id: usize,
    /// Up to `W` tokens on each side of the insertion point.
    pub context: Vec<String>,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct NgramRecord {
    context: Vec<String>,
    insert: u64,
    total: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ModelFile {
    format: String,
    window: usize,
    alpha: f64,
    base: Counts,
    ngrams: Vec<NgramRecord>,
    index: Vec<RetrievalEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    window: usize,
    alpha: f64,
    /// Counts over every anchor seen in training.
    base: Counts,
    ngrams: BTreeMap<Vec<String>, Counts>,
    index: Vec<RetrievalEntry>,
}

impl BaselineModel {
    pub fn train(corpus: &[Sample], window: usize, alpha: f64) -> Result<Self, BaselineError> {
        if corpus.is_empty() {
            return Err(BaselineError::EmptyCorpus);
        }
        if window == 0 || !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(BaselineError::InvalidParams(format!(
                "window={window}, alpha={alpha}"
            )));
        }
        let mut model = BaselineModel {
            window,
            alpha,
            base: Counts::default(),
            ngrams: BTreeMap::new(),
            index: Vec::with_capacity(corpus.len()),
        };
        for sample in corpus {
            let stream = sample.validate()?;
            let texts = stream.owned_texts();
            for anchor in anchors_of(&texts) {
                let hit = anchor == sample.target_index;
                model.base.total += 1;
                model.base.insert += hit as u64;
                for w in 1..=window.min(anchor + 1) {
                    let c = model
                        .ngrams
                        .entry(texts[anchor + 1 - w..=anchor].to_vec())
                        .or_default();
                    c.total += 1;
                    c.insert += hit as u64;
                }
            }
            let masked = build_masked_input(&texts, sample.target_index)
                .map_err(|e| BaselineError::Format(e.to_string()))?;
            model.index.push(RetrievalEntry {
                id: model.index.len(),
                context: mask_context(&masked, sample.target_index + 1, window),
                statement: sample.target_statement.trim().to_string(),
            });
        }
        Ok(model)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn index(&self) -> &[RetrievalEntry] {
        &self.index
    }

    pub fn counts(&self, context: &[String]) -> Option<Counts> {
        self.ngrams.get(context).copied()
    }

    /// Probability assigned when no window ending at the anchor was seen:
    /// half the smoothed overall insertion rate.
    pub fn unseen_prior(&self) -> f64 {
        0.5 * self.base.smoothed(self.alpha)
    }

    /// Smoothed probability for each position; 0 outside `candidates`.
    pub fn score_positions<S: AsRef<str>>(&self, tokens: &[S], candidates: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; tokens.len()];
        let texts: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
        for &i in candidates {
            if i >= texts.len() {
                continue;
            }
            out[i] = (1..=self.window.min(i + 1))
                .rev()
                .find_map(|w| self.ngrams.get(&texts[i + 1 - w..=i]))
                .map_or_else(|| self.unseen_prior(), |c| c.smoothed(self.alpha));
        }
        out
    }

    /// Distinct stored statements ranked by Jaccard similarity between the
    /// query's mask context and each entry's context; ties by lower id.
    pub fn generate_retrieval<S: AsRef<str>>(
        &self,
        masked: &[S],
        beam_size: usize,
    ) -> Result<Vec<Candidate>, BackendError> {
        let pos = mask_position(masked)?;
        if self.index.is_empty() {
            return Err(BackendError::EmptyModel);
        }
        let owned: Vec<String> = masked.iter().map(|t| t.as_ref().to_string()).collect();
        let context = mask_context(&owned, pos, self.window);
        let query: BTreeSet<&str> = context.iter().map(String::as_str).collect();
        let mut ranked: Vec<(f64, usize)> = self
            .index
            .iter()
            .map(|e| (jaccard(&query, &e.context), e.id))
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (sim, id) in ranked {
            if out.len() == beam_size {
                break;
            }
            let stmt = &self.index[id].statement;
            if seen.insert(stmt.as_str()) {
                out.push(Candidate {
                    text: stmt.clone(),
                    score: sim,
                });
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: MODEL_FORMAT.into(),
            window: self.window,
            alpha: self.alpha,
            base: self.base,
            ngrams: self
                .ngrams
                .iter()
                .map(|(k, c)| NgramRecord {
                    context: k.clone(),
                    insert: c.insert,
                    total: c.total,
                })
                .collect(),
            index: self.index.clone(),
        };
        serde_json::to_string(&file).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, BaselineError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| BaselineError::Format(e.to_string()))?;
        if file.format != MODEL_FORMAT {
            return Err(BaselineError::Format(format!(
                "unsupported format {:?}",
                file.format
            )));
        }
        let mut ngrams = BTreeMap::new();
        for r in file.ngrams {
            if r.insert > r.total {
                return Err(BaselineError::Format(format!(
                    "insert > total for {:?}",
                    r.context
                )));
            }
            ngrams.insert(
                r.context,
                Counts {
                    insert: r.insert,
                    total: r.total,
                },
            );
        }
        for (i, e) in file.index.iter().enumerate() {
            if e.id != i || !e.statement.trim_end().ends_with(';') {
                return Err(BaselineError::Format(format!("bad index entry {i}")));
            }
        }
        Ok(BaselineModel {
            window: file.window,
            alpha: file.alpha,
            base: file.base,
            ngrams,
            index: file.index,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), BaselineError> {
        Ok(fs::write(path, self.to_json())?)
    }

    pub fn load(path: &Path) -> Result<Self, BaselineError> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// `W` tokens before and after position `pos` (exclusive of it).
fn mask_context(tokens: &[String], pos: usize, window: usize) -> Vec<String> {
    let before = &tokens[pos.saturating_sub(window)..pos];
    let after = &tokens[(pos + 1).min(tokens.len())..(pos + 1 + window).min(tokens.len())];
    before.iter().chain(after).cloned().collect()
}

fn jaccard(query: &BTreeSet<&str>, context: &[String]) -> f64 {
    let other: BTreeSet<&str> = context.iter().map(String::as_str).collect();
    let union = query.union(&other).count();
    if union == 0 {
        return 1.0;
    }
    query.intersection(&other).count() as f64 / union as f64
}

impl PositionScorer for BaselineModel {
    fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse, BackendError> {
        req.validate()?;
        Ok(ScoreResponse {
            probabilities: self.score_positions(&req.tokens, &req.candidate_indices),
        })
    }
}

impl StatementGenerator for BaselineModel {
    fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse, BackendError> {
        req.validate()?;
        Ok(GenerateResponse {
            candidates: self.generate_retrieval(&req.tokens, req.beam_size)?,
        })
    }
}
