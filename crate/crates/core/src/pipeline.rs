//! Two-stage insertion: pick an anchor, then generate a statement for it.

use std::ops::Range;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::{
    mask_position, BackendError, Candidate, GenerateRequest, PositionScorer, ScoreRequest,
    StatementGenerator, DEFAULT_BEAM_SIZE, MASK,
};
use crate::chunker::{merge_scores, plan_texts, render_chunk, ChunkError, SplitConfig};
use crate::edit::{insert_after, strip_range};
use crate::lexer::{anchors_of, is_anchor_text, LexError, TokenStream};
use crate::statement::LoggingStatement;

pub const DEFAULT_SUGGEST_BUDGET: usize = 10;
pub const DEFAULT_SUGGEST_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub split: SplitConfig,
    pub beam_size: usize,
    pub suggest_budget: usize,
    pub suggest_threshold: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            split: SplitConfig::default(),
            beam_size: DEFAULT_BEAM_SIZE,
            suggest_budget: DEFAULT_SUGGEST_BUDGET,
            suggest_threshold: DEFAULT_SUGGEST_THRESHOLD,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        self.split.validate()?;
        if self.beam_size == 0 {
            return Err(PipelineError::InvalidConfig(
                "beam size must be at least 1".into(),
            ));
        }
        if self.suggest_budget == 0 {
            return Err(PipelineError::InvalidConfig(
                "suggestion budget must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.suggest_threshold) {
            return Err(PipelineError::InvalidConfig(
                "threshold must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Chunk(#[from] ChunkError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("method has no `{{ }} ; :` token to insert after")]
    NoAnchors,
    #[error("token index {index} out of range for {len} tokens")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("generator returned no candidates")]
    GenerationEmpty,
    #[error("no positions to allocate suggestions to")]
    EmptyPositions,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionPrediction {
    pub token_index: usize,
    pub probability: f64,
    /// Every anchor, by descending probability then ascending index.
    pub ranked_alternatives: Vec<(usize, f64)>,
}

/// Merged per-token probabilities for a whole token sequence.
pub fn score_tokens<S: AsRef<str> + Sync>(
    texts: &[S],
    scorer: &dyn PositionScorer,
    split: &SplitConfig,
) -> Result<Vec<f64>, PipelineError> {
    let plan = plan_texts(texts, split)?;
    let rows = plan
        .chunks
        .par_iter()
        .map(|chunk| {
            let rendered = render_chunk(texts, chunk, split);
            let content = rendered.content().to_vec();
            let candidate_indices = anchors_of(&content);
            let req = ScoreRequest {
                tokens: content,
                candidate_indices,
            };
            let mut row = if req.tokens.is_empty() {
                Vec::new()
            } else {
                scorer.score(&req)?.probabilities
            };
            row.resize(split.max_input_len, 0.0);
            Ok(row)
        })
        .collect::<Result<Vec<_>, PipelineError>>()?;
    Ok(merge_scores(&plan, &rows, split)?)
}

/// Argmax over anchors; ties go to the smaller index.
pub fn predict_from_scores<S: AsRef<str>>(
    texts: &[S],
    scores: &[f64],
) -> Result<PositionPrediction, PipelineError> {
    let mut ranked: Vec<(usize, f64)> = texts
        .iter()
        .enumerate()
        .filter(|(_, t)| is_anchor_text(t.as_ref()))
        .map(|(i, _)| (i, scores[i]))
        .collect();
    if ranked.is_empty() {
        return Err(PipelineError::NoAnchors);
    }
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(PositionPrediction {
        token_index: ranked[0].0,
        probability: ranked[0].1,
        ranked_alternatives: ranked,
    })
}

pub fn predict_position(
    stream: &TokenStream,
    scorer: &dyn PositionScorer,
    cfg: &PipelineConfig,
) -> Result<PositionPrediction, PipelineError> {
    let texts = stream.texts();
    if !texts.iter().any(|t| is_anchor_text(t)) {
        return Err(PipelineError::NoAnchors);
    }
    let scores = score_tokens(&texts, scorer, &cfg.split)?;
    predict_from_scores(&texts, &scores)
}

/// Token texts with [`MASK`] inserted right after `index`.
pub fn build_masked_input<S: AsRef<str>>(
    texts: &[S],
    index: usize,
) -> Result<Vec<String>, PipelineError> {
    if index >= texts.len() {
        return Err(PipelineError::IndexOutOfRange {
            index,
            len: texts.len(),
        });
    }
    let mut out = Vec::with_capacity(texts.len() + 1);
    out.extend(texts[..=index].iter().map(|t| t.as_ref().to_string()));
    out.push(MASK.to_string());
    out.extend(texts[index + 1..].iter().map(|t| t.as_ref().to_string()));
    Ok(out)
}

/// The stage-2 model input: the whole masked sequence when it fits, else the
/// chunk (contexts included) whose core holds the mask.
pub fn select_mask_chunk(
    masked: &[String],
    split: &SplitConfig,
) -> Result<Vec<String>, PipelineError> {
    let pos = mask_position(masked)?;
    if masked.len() <= split.max_input_len {
        return Ok(masked.to_vec());
    }
    let plan = plan_texts(masked, split)?;
    let window = match plan.chunk_for(pos) {
        Some(chunk) => chunk.window(),
        // truncate-discard leaves the tail uncovered; centre a window on the mask.
        None => centred_window(pos, masked.len(), split.max_input_len),
    };
    Ok(masked[window].to_vec())
}

fn centred_window(pos: usize, len: usize, width: usize) -> Range<usize> {
    let start = pos.saturating_sub(width / 2).min(len - width);
    start..start + width
}

/// Stage 2 for a fixed insertion index. Depends on stage 1 only through
/// `index`.
pub fn generate_at(
    stream: &TokenStream,
    index: usize,
    generator: &dyn StatementGenerator,
    split: &SplitConfig,
    beam_size: usize,
) -> Result<Vec<Candidate>, PipelineError> {
    let masked = build_masked_input(&stream.texts(), index)?;
    let window = select_mask_chunk(&masked, split)?;
    let resp = generator.generate(&GenerateRequest {
        tokens: window,
        beam_size,
    })?;
    Ok(resp.candidates)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub stage1_ms: f64,
    pub stage2_ms: f64,
}

impl StageTimings {
    pub fn new(stage1: Duration, stage2: Duration) -> Self {
        StageTimings {
            stage1_ms: stage1.as_secs_f64() * 1e3,
            stage2_ms: stage2.as_secs_f64() * 1e3,
        }
    }

    pub fn total_ms(&self) -> f64 {
        self.stage1_ms + self.stage2_ms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InsertionResult {
    pub output_source: String,
    /// Byte range of the inserted newline, indent and statement.
    pub inserted_range: Range<usize>,
    pub inserted_statement: LoggingStatement,
    pub insertion_token_index: usize,
    pub position: PositionPrediction,
    pub candidates: Vec<Candidate>,
    pub timings: StageTimings,
}

impl InsertionResult {
    /// The input method, recovered by removing the inserted statement.
    pub fn strip(&self) -> String {
        strip_range(&self.output_source, self.inserted_range.clone())
    }
}

pub fn run(
    stream: &TokenStream,
    scorer: &dyn PositionScorer,
    generator: &dyn StatementGenerator,
    cfg: &PipelineConfig,
) -> Result<InsertionResult, PipelineError> {
    let t0 = Instant::now();
    let position = predict_position(stream, scorer, cfg)?;
    let stage1 = t0.elapsed();
    let t1 = Instant::now();
    let candidates = generate_at(
        stream,
        position.token_index,
        generator,
        &cfg.split,
        cfg.beam_size,
    )?;
    let stage2 = t1.elapsed();
    let best = candidates.first().ok_or(PipelineError::GenerationEmpty)?;
    let insertion = insert_after(stream, position.token_index, &best.text);
    Ok(InsertionResult {
        output_source: insertion.output,
        inserted_range: insertion.inserted,
        inserted_statement: LoggingStatement::parse(&best.text),
        insertion_token_index: position.token_index,
        position,
        candidates,
        timings: StageTimings::new(stage1, stage2),
    })
}

/// Distributes `budget` statements over positions ranked by descending
/// probability.
///
/// Passes over the first p, p-1, ..., 1 positions give one statement each;
/// once a full cycle ends the passes start again at p. The last pass stops
/// when the budget runs out.
pub fn allocate_budget(ranked_probs: &[f64], budget: usize) -> Result<Vec<usize>, PipelineError> {
    let p = ranked_probs.len();
    if p == 0 {
        return Err(PipelineError::EmptyPositions);
    }
    let mut counts = vec![0; p];
    let mut left = budget;
    'outer: loop {
        for width in (1..=p).rev() {
            for c in counts.iter_mut().take(width) {
                if left == 0 {
                    break 'outer;
                }
                *c += 1;
                left -= 1;
            }
        }
    }
    Ok(counts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suggestion {
    pub token_index: usize,
    pub probability: f64,
    pub statement: String,
    /// Rank of the position (0 = most probable).
    pub position_rank: usize,
    /// Rank of the statement within its position's beam.
    pub beam_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuggestionSet {
    pub suggestions: Vec<Suggestion>,
    pub allocation: Vec<(usize, usize)>,
    /// True when no anchor reached the threshold and the argmax was used.
    pub fell_back: bool,
}

pub fn suggest(
    stream: &TokenStream,
    scorer: &dyn PositionScorer,
    generator: &dyn StatementGenerator,
    cfg: &PipelineConfig,
) -> Result<SuggestionSet, PipelineError> {
    let prediction = predict_position(stream, scorer, cfg)?;
    let mut positions: Vec<(usize, f64)> = prediction
        .ranked_alternatives
        .iter()
        .copied()
        .filter(|(_, p)| *p >= cfg.suggest_threshold)
        .collect();
    let fell_back = positions.is_empty();
    if fell_back {
        positions.push((prediction.token_index, prediction.probability));
    }
    let probs: Vec<f64> = positions.iter().map(|(_, p)| *p).collect();
    let counts = allocate_budget(&probs, cfg.suggest_budget)?;
    let beam = counts.iter().copied().max().unwrap_or(0).max(cfg.beam_size);
    let mut suggestions = Vec::new();
    let mut allocation = Vec::new();
    for (rank, (&(index, probability), &count)) in positions.iter().zip(&counts).enumerate() {
        if count == 0 {
            continue;
        }
        allocation.push((index, count));
        let candidates = generate_at(stream, index, generator, &cfg.split, beam)?;
        suggestions.extend(
            candidates
                .into_iter()
                .take(count)
                .enumerate()
                .map(|(b, c)| Suggestion {
                    token_index: index,
                    probability,
                    statement: c.text,
                    position_rank: rank,
                    beam_rank: b,
                }),
        );
    }
    Ok(SuggestionSet {
        suggestions,
        allocation,
        fell_back,
    })
}
