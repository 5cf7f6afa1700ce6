//! Splitting of long token streams into model-sized chunks.
//!
//! Inputs no longer than `max_input_len` are never split. Longer inputs are
//! cut into `ceil(N / max_chunk_len)` cores of near-equal size whose
//! boundaries are moved back onto statement ends, and each core is padded on
//! both sides with whole neighbouring statements. Only core positions are
//! scored; context positions exist to give the model surrounding code.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexer::{statement_spans_of, StatementSpan, Terminator, TokenStream};

pub const DEFAULT_MAX_INPUT_LEN: usize = 512;
pub const DEFAULT_MAX_CHUNK_LEN: usize = 300;
pub const DEFAULT_CONTEXT_STATEMENTS: usize = 5;

/// Symbol used to fill rendered chunks up to `max_input_len`.
pub const PAD: &str = "<pad>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    TruncateDiscard,
    TruncateSplit,
    AverageSplit,
    AverageSplitStatement,
}

impl Policy {
    pub fn as_str(self) -> &'static str {
        match self {
            Policy::TruncateDiscard => "truncate-discard",
            Policy::TruncateSplit => "truncate-split",
            Policy::AverageSplit => "average-split",
            Policy::AverageSplitStatement => "average-split-statement",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Policy {
    type Err = ChunkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "truncate-discard" => Ok(Policy::TruncateDiscard),
            "truncate-split" | "truncated-split" => Ok(Policy::TruncateSplit),
            "average-split" => Ok(Policy::AverageSplit),
            "average-split-statement" => Ok(Policy::AverageSplitStatement),
            other => Err(ChunkError::UnknownPolicy(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChunkError {
    #[error("invalid split config: {0}")]
    InvalidConfig(String),
    #[error("unknown splitting policy `{0}`")]
    UnknownPolicy(String),
    #[error("chunk {chunk} has {actual} scores, expected {expected}")]
    ShapeMismatch {
        chunk: usize,
        expected: usize,
        actual: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitConfig {
    /// `L`: every rendered model input has exactly this many positions.
    pub max_input_len: usize,
    /// `m`: upper bound on a chunk core.
    pub max_chunk_len: usize,
    /// `k`: whole statements of context added per side.
    pub context_statements: usize,
    pub policy: Policy,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            max_input_len: DEFAULT_MAX_INPUT_LEN,
            max_chunk_len: DEFAULT_MAX_CHUNK_LEN,
            context_statements: DEFAULT_CONTEXT_STATEMENTS,
            policy: Policy::AverageSplitStatement,
        }
    }
}

impl SplitConfig {
    pub fn validate(&self) -> Result<(), ChunkError> {
        if self.max_chunk_len == 0 {
            return Err(ChunkError::InvalidConfig(
                "max chunk length must be positive".into(),
            ));
        }
        if self.max_chunk_len > self.max_input_len {
            return Err(ChunkError::InvalidConfig(format!(
                "max chunk length {} exceeds max input length {}",
                self.max_chunk_len, self.max_input_len
            )));
        }
        Ok(())
    }

    /// Per-side context budget, `floor((L - m) / 2)`.
    pub fn context_budget(&self) -> usize {
        self.max_input_len.saturating_sub(self.max_chunk_len) / 2
    }

    /// Resolves a named ablation strategy on top of this config.
    ///
    /// Accepts the bare policy names plus the parameterised forms
    /// `average-split-<m>` and `average-split-<m>-statement-<k>`.
    pub fn with_strategy(&self, name: &str) -> Result<SplitConfig, ChunkError> {
        let mut cfg = *self;
        if let Ok(policy) = name.parse::<Policy>() {
            cfg.policy = policy;
            match policy {
                Policy::TruncateDiscard | Policy::TruncateSplit | Policy::AverageSplit => {
                    cfg.context_statements = 0
                }
                Policy::AverageSplitStatement => {}
            }
            return Ok(cfg);
        }
        let unknown = || ChunkError::UnknownPolicy(name.to_string());
        let rest = name.strip_prefix("average-split-").ok_or_else(unknown)?;
        let (m, k) = match rest.split_once("-statement-") {
            Some((m, k)) => (m, Some(k)),
            None => (rest, None),
        };
        cfg.max_chunk_len = m.parse().map_err(|_| unknown())?;
        match k {
            Some(k) => {
                cfg.context_statements = k.parse().map_err(|_| unknown())?;
                cfg.policy = Policy::AverageSplitStatement;
            }
            None => {
                cfg.context_statements = 0;
                cfg.policy = Policy::AverageSplit;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub ordinal: usize,
    pub core: Range<usize>,
    pub left_context: Range<usize>,
    pub right_context: Range<usize>,
}

impl Chunk {
    /// Full token window `[left_context.start, right_context.end)`.
    pub fn window(&self) -> Range<usize> {
        self.left_context.start..self.right_context.end
    }

    pub fn content_len(&self) -> usize {
        self.window().len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkPlan {
    pub chunks: Vec<Chunk>,
    pub total_tokens: usize,
}

impl ChunkPlan {
    /// The chunk whose core holds `index`, if any.
    pub fn chunk_for(&self, index: usize) -> Option<&Chunk> {
        self.chunks.iter().find(|c| c.core.contains(&index))
    }

    pub fn is_split(&self) -> bool {
        self.chunks.len() > 1
    }
}

/// Plans chunks for a lexed stream under `cfg.policy`.
pub fn plan_chunks(stream: &TokenStream, cfg: &SplitConfig) -> Result<ChunkPlan, ChunkError> {
    plan_texts(&stream.texts(), cfg)
}

/// Plans chunks for any token text sequence (used for masked inputs too).
pub fn plan_texts<S: AsRef<str>>(texts: &[S], cfg: &SplitConfig) -> Result<ChunkPlan, ChunkError> {
    let spans = statement_spans_of(texts);
    plan_with_spans(texts.len(), &spans, cfg)
}

/// Plans chunks given only the token count and the statement layout.
pub fn plan_with_spans(
    n: usize,
    spans: &[StatementSpan],
    cfg: &SplitConfig,
) -> Result<ChunkPlan, ChunkError> {
    cfg.validate()?;
    let l = cfg.max_input_len;
    if n <= l {
        return Ok(ChunkPlan {
            chunks: vec![bare_chunk(0, 0..n)],
            total_tokens: n,
        });
    }
    let chunks = match cfg.policy {
        Policy::TruncateDiscard => vec![bare_chunk(0, 0..l)],
        Policy::TruncateSplit => (0..n)
            .step_by(l)
            .enumerate()
            .map(|(i, start)| bare_chunk(i, start..(start + l).min(n)))
            .collect(),
        Policy::AverageSplit => even_cores(n, spans, cfg.max_chunk_len)
            .into_iter()
            .enumerate()
            .map(|(i, core)| bare_chunk(i, core))
            .collect(),
        Policy::AverageSplitStatement => {
            let layout = Layout::new(n, spans);
            even_cores(n, spans, cfg.max_chunk_len)
                .into_iter()
                .enumerate()
                .map(|(i, core)| Chunk {
                    ordinal: i,
                    left_context: layout.left_context(core.start, cfg),
                    right_context: layout.right_context(core.end, cfg),
                    core,
                })
                .collect()
        }
    };
    Ok(ChunkPlan {
        chunks,
        total_tokens: n,
    })
}

fn bare_chunk(ordinal: usize, core: Range<usize>) -> Chunk {
    Chunk {
        ordinal,
        left_context: core.start..core.start,
        right_context: core.end..core.end,
        core,
    }
}

/// Even split into `ceil(n / m)` cores, each boundary moved back to the end of
/// a statement when one lies inside its admissible window.
///
/// Boundary `i` may range over `[max(prev + 1, n - (c - i) * m), min(ideal_i, prev + m)]`.
/// The lower end keeps the remaining cores within `m`; the upper end keeps
/// this core within `m` after earlier boundaries have moved back.
fn even_cores(n: usize, spans: &[StatementSpan], m: usize) -> Vec<Range<usize>> {
    let c = n.div_ceil(m);
    // Exclusive ends of complete statements, increasing.
    let ends: Vec<usize> = spans
        .iter()
        .filter(|s| s.is_complete())
        .map(|s| s.end_index + 1)
        .collect();
    let mut cores = Vec::with_capacity(c);
    let mut prev = 0;
    for i in 1..c {
        // round(i * n / c), half up
        let ideal = (2 * i * n + c) / (2 * c);
        let hi = ideal.min(prev + m);
        let lo = (prev + 1).max(n.saturating_sub((c - i) * m));
        let idx = ends.partition_point(|&e| e <= hi);
        let boundary = match idx.checked_sub(1).map(|j| ends[j]) {
            Some(e) if e >= lo => e,
            _ => hi,
        };
        cores.push(prev..boundary);
        prev = boundary;
    }
    cores.push(prev..n);
    cores
}

struct Layout<'a> {
    n: usize,
    spans: &'a [StatementSpan],
}

impl<'a> Layout<'a> {
    fn new(n: usize, spans: &'a [StatementSpan]) -> Self {
        Layout { n, spans }
    }

    /// Whole statements ending exactly at `start`, nearest first, within
    /// `k` statements and the per-side budget.
    fn left_context(&self, start: usize, cfg: &SplitConfig) -> Range<usize> {
        let budget = cfg.context_budget();
        let mut from = start;
        if start == 0 || cfg.context_statements == 0 {
            return from..start;
        }
        // Span whose last token is start - 1; absent when `start` is mid-statement.
        let Ok(mut j) = self
            .spans
            .binary_search_by(|s| s.end_index.cmp(&(start - 1)))
        else {
            return from..start;
        };
        let mut taken = 0;
        loop {
            let span = &self.spans[j];
            if (start - span.start_index) > budget {
                break;
            }
            from = span.start_index;
            taken += 1;
            if taken == cfg.context_statements || j == 0 {
                break;
            }
            j -= 1;
        }
        from..start
    }

    fn right_context(&self, end: usize, cfg: &SplitConfig) -> Range<usize> {
        let budget = cfg.context_budget();
        let mut to = end;
        if end >= self.n || cfg.context_statements == 0 {
            return end..to;
        }
        let Ok(mut j) = self.spans.binary_search_by(|s| s.start_index.cmp(&end)) else {
            return end..to;
        };
        let mut taken = 0;
        while j < self.spans.len() {
            let span = &self.spans[j];
            if !span.is_complete() || (span.end_index + 1 - end) > budget {
                break;
            }
            to = span.end_index + 1;
            taken += 1;
            if taken == cfg.context_statements {
                break;
            }
            j += 1;
        }
        end..to
    }
}

/// Checks the structural guarantees of a plan for `texts` under `cfg`:
/// cores tile the covered prefix in order, core and window sizes respect the
/// policy's limits, and every context is a run of at most `k` complete
/// statements adjacent to its core within the per-side budget. Returns a
/// description of the first violation.
pub fn verify_plan<S: AsRef<str>>(
    texts: &[S],
    plan: &ChunkPlan,
    cfg: &SplitConfig,
) -> Result<(), String> {
    let n = texts.len();
    let l = cfg.max_input_len;
    if plan.total_tokens != n {
        return Err(format!("total_tokens {} != {n}", plan.total_tokens));
    }
    let is_term = |i: usize| Terminator::from_text(texts[i].as_ref()).is_some();
    let starts_statement = |i: usize| i == 0 || is_term(i - 1);
    let covered = match (n <= l, cfg.policy) {
        (true, _) => n,
        (false, Policy::TruncateDiscard) => l,
        (false, _) => n,
    };
    let core_limit = match cfg.policy {
        _ if n <= l => l,
        Policy::TruncateDiscard | Policy::TruncateSplit => l,
        Policy::AverageSplit | Policy::AverageSplitStatement => cfg.max_chunk_len,
    };
    let mut next = 0;
    for (i, c) in plan.chunks.iter().enumerate() {
        if c.ordinal != i {
            return Err(format!("chunk {i} has ordinal {}", c.ordinal));
        }
        if c.core.start != next || c.core.is_empty() && n > 0 {
            return Err(format!(
                "chunk {i} core {:?} does not continue at {next}",
                c.core
            ));
        }
        if c.core.len() > core_limit {
            return Err(format!(
                "chunk {i} core length {} > {core_limit}",
                c.core.len()
            ));
        }
        if c.content_len() > l {
            return Err(format!("chunk {i} window length {} > {l}", c.content_len()));
        }
        if c.left_context.end != c.core.start || c.right_context.start != c.core.end {
            return Err(format!("chunk {i} contexts are not adjacent to the core"));
        }
        for (side, ctx) in [("left", &c.left_context), ("right", &c.right_context)] {
            if ctx.is_empty() {
                continue;
            }
            if n <= l || cfg.policy != Policy::AverageSplitStatement {
                return Err(format!("chunk {i} has {side} context under {}", cfg.policy));
            }
            if ctx.len() > cfg.context_budget() {
                return Err(format!(
                    "chunk {i} {side} context {} > budget {}",
                    ctx.len(),
                    cfg.context_budget()
                ));
            }
            if !starts_statement(ctx.start) || !is_term(ctx.end - 1) {
                return Err(format!(
                    "chunk {i} {side} context {ctx:?} is not whole statements"
                ));
            }
            let statements = (ctx.start..ctx.end).filter(|&j| is_term(j)).count();
            if statements > cfg.context_statements {
                return Err(format!(
                    "chunk {i} {side} context has {statements} statements"
                ));
            }
        }
        next = c.core.end;
    }
    if next != covered {
        return Err(format!("cores end at {next}, expected {covered}"));
    }
    Ok(())
}

/// One chunk laid out as a fixed-length model input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedChunk {
    /// Exactly `max_input_len` symbols: content followed by [`PAD`].
    pub tokens: Vec<String>,
    /// True exactly at positions that come from the chunk core.
    pub core_mask: Vec<bool>,
    pub content_len: usize,
}

impl RenderedChunk {
    pub fn content(&self) -> &[String] {
        &self.tokens[..self.content_len]
    }
}

pub fn render_chunk<S: AsRef<str>>(texts: &[S], chunk: &Chunk, cfg: &SplitConfig) -> RenderedChunk {
    let l = cfg.max_input_len;
    let window = chunk.window();
    let content_len = window.len().min(l);
    let mut tokens = Vec::with_capacity(l.max(content_len));
    let mut core_mask = Vec::with_capacity(l);
    for i in window.clone().take(content_len) {
        tokens.push(texts[i].as_ref().to_string());
        core_mask.push(chunk.core.contains(&i));
    }
    tokens.resize(l, PAD.to_string());
    core_mask.resize(l, false);
    RenderedChunk {
        tokens,
        core_mask,
        content_len,
    }
}

/// Combines per-chunk score rows (each of length `max_input_len`) into one
/// score per token. Context and padding scores are dropped; tokens outside
/// every core (truncate-discard tail) score 0.
pub fn merge_scores(
    plan: &ChunkPlan,
    per_chunk: &[Vec<f64>],
    cfg: &SplitConfig,
) -> Result<Vec<f64>, ChunkError> {
    if per_chunk.len() != plan.chunks.len() {
        return Err(ChunkError::ShapeMismatch {
            chunk: per_chunk.len().min(plan.chunks.len()),
            expected: plan.chunks.len(),
            actual: per_chunk.len(),
        });
    }
    let mut merged = vec![0.0; plan.total_tokens];
    for (chunk, scores) in plan.chunks.iter().zip(per_chunk) {
        if scores.len() != cfg.max_input_len {
            return Err(ChunkError::ShapeMismatch {
                chunk: chunk.ordinal,
                expected: cfg.max_input_len,
                actual: scores.len(),
            });
        }
        let offset = chunk.window().start;
        for i in chunk.core.clone() {
            merged[i] = scores[i - offset];
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::Terminator;

    /// Layout with a terminator at every listed token index.
    fn spans_with_terminators(n: usize, terms: &[usize]) -> Vec<StatementSpan> {
        let mut texts = vec!["x"; n];
        for &t in terms {
            texts[t] = ";";
        }
        statement_spans_of(&texts)
    }

    fn cfg(l: usize, m: usize, k: usize, policy: Policy) -> SplitConfig {
        SplitConfig {
            max_input_len: l,
            max_chunk_len: m,
            context_statements: k,
            policy,
        }
    }

    fn cores(plan: &ChunkPlan) -> Vec<Range<usize>> {
        plan.chunks.iter().map(|c| c.core.clone()).collect()
    }

    #[test]
    fn short_input_is_single_chunk() {
        let spans = spans_with_terminators(250, &[99, 249]);
        let plan = plan_with_spans(250, &spans, &SplitConfig::default()).unwrap();
        assert_eq!(cores(&plan), vec![0..250]);
        assert!(plan.chunks[0].left_context.is_empty());
        assert!(plan.chunks[0].right_context.is_empty());
    }

    #[test]
    fn even_split_on_terminators() {
        let spans = spans_with_terminators(900, &[299, 599, 899]);
        let plan = plan_with_spans(900, &spans, &cfg(512, 300, 0, Policy::AverageSplit)).unwrap();
        assert_eq!(cores(&plan), vec![0..300, 300..600, 600..900]);
    }

    #[test]
    fn rounding_of_ideal_boundaries() {
        // round(700/3) = 233, round(1400/3) = 467
        let spans = spans_with_terminators(700, &[232, 466, 699]);
        let plan = plan_with_spans(700, &spans, &cfg(512, 300, 0, Policy::AverageSplit)).unwrap();
        assert_eq!(cores(&plan), vec![0..233, 233..467, 467..700]);
    }

    #[test]
    fn boundaries_snap_back_to_statement_ends() {
        let spans = spans_with_terminators(700, &[200, 450, 699]);
        let plan = plan_with_spans(700, &spans, &cfg(512, 300, 0, Policy::AverageSplit)).unwrap();
        assert_eq!(cores(&plan), vec![0..201, 201..451, 451..700]);
    }

    #[test]
    fn snapping_is_bounded_below() {
        // Snapping boundary 1 back to 51 would force a 416-token second core.
        let spans = spans_with_terminators(700, &[50, 699]);
        let plan = plan_with_spans(700, &spans, &cfg(512, 300, 0, Policy::AverageSplit)).unwrap();
        assert_eq!(cores(&plan), vec![0..233, 233..467, 467..700]);
    }

    #[test]
    fn context_budget_uses_floor() {
        assert_eq!(SplitConfig::default().context_budget(), 106);
        assert_eq!(
            cfg(513, 300, 5, Policy::AverageSplitStatement).context_budget(),
            106
        );
    }

    #[test]
    fn contexts_are_whole_statements_within_budget() {
        // Statements of 10 tokens each.
        let terms: Vec<usize> = (9..1000).step_by(10).collect();
        let spans = spans_with_terminators(1000, &terms);
        let c = cfg(512, 300, 5, Policy::AverageSplitStatement);
        let plan = plan_with_spans(1000, &spans, &c).unwrap();
        assert_eq!(plan.chunks.len(), 4);
        let first = &plan.chunks[0];
        assert!(first.left_context.is_empty());
        assert_eq!(first.right_context.len(), 50);
        let mid = &plan.chunks[1];
        assert_eq!(mid.left_context.len(), 50);
        assert_eq!(mid.left_context.end, mid.core.start);
        assert_eq!(mid.right_context.start, mid.core.end);
    }

    #[test]
    fn oversized_statement_is_dropped_not_cut() {
        // The 150-token statement after the first core cannot fit in 106.
        let spans = spans_with_terminators(700, &[99, 249, 400, 699]);
        let c = cfg(512, 300, 5, Policy::AverageSplitStatement);
        let plan = plan_with_spans(700, &spans, &c).unwrap();
        let second = &plan.chunks[1];
        assert_eq!(second.core.start, 100);
        assert_eq!(second.left_context, 0..100);
        assert!(plan.chunks[0].right_context.is_empty());
    }

    #[test]
    fn truncate_policies() {
        let spans = spans_with_terminators(600, &[599]);
        let plan =
            plan_with_spans(600, &spans, &cfg(512, 300, 0, Policy::TruncateDiscard)).unwrap();
        assert_eq!(cores(&plan), vec![0..512]);
        let plan = plan_with_spans(600, &spans, &cfg(512, 300, 0, Policy::TruncateSplit)).unwrap();
        assert_eq!(cores(&plan), vec![0..512, 512..600]);
    }

    #[test]
    fn average_split_512_without_terminators() {
        let spans = statement_spans_of(&vec!["x"; 600]);
        let c = SplitConfig::default()
            .with_strategy("average-split-512")
            .unwrap();
        let plan = plan_with_spans(600, &spans, &c).unwrap();
        assert_eq!(cores(&plan), vec![0..300, 300..600]);
    }

    #[test]
    fn invalid_configs() {
        let spans = spans_with_terminators(10, &[9]);
        assert!(matches!(
            plan_with_spans(10, &spans, &cfg(512, 600, 0, Policy::AverageSplit)),
            Err(ChunkError::InvalidConfig(_))
        ));
        assert!(matches!(
            plan_with_spans(10, &spans, &cfg(512, 0, 0, Policy::AverageSplit)),
            Err(ChunkError::InvalidConfig(_))
        ));
    }

    #[test]
    fn strategy_names() {
        let base = SplitConfig::default();
        let c = base
            .with_strategy("average-split-300-statement-10")
            .unwrap();
        assert_eq!(
            (c.max_chunk_len, c.context_statements, c.policy),
            (300, 10, Policy::AverageSplitStatement)
        );
        let c = base.with_strategy("truncated-split").unwrap();
        assert_eq!(c.policy, Policy::TruncateSplit);
        assert!(matches!(
            base.with_strategy("sliding-window"),
            Err(ChunkError::UnknownPolicy(_))
        ));
        assert!(matches!(
            base.with_strategy("average-split-x"),
            Err(ChunkError::UnknownPolicy(_))
        ));
        assert!(matches!(
            base.with_strategy("average-split-600"),
            Err(ChunkError::InvalidConfig(_))
        ));
    }

    #[test]
    fn render_pads_to_l() {
        let texts: Vec<String> = (0..400).map(|i| i.to_string()).collect();
        let chunk = Chunk {
            ordinal: 0,
            left_context: 0..50,
            core: 50..350,
            right_context: 350..400,
        };
        let r = render_chunk(&texts, &chunk, &SplitConfig::default());
        assert_eq!(r.tokens.len(), 512);
        assert_eq!(r.content_len, 400);
        assert_eq!(r.tokens[400..].iter().filter(|t| *t == PAD).count(), 112);
        assert_eq!(r.core_mask.iter().filter(|b| **b).count(), 300);
        assert!(r.core_mask[50] && !r.core_mask[49] && !r.core_mask[350]);
    }

    #[test]
    fn render_full_method() {
        let texts = vec!["t"; 250];
        let r = render_chunk(&texts, &bare_chunk(0, 0..250), &SplitConfig::default());
        assert_eq!(r.content_len, 250);
        assert_eq!(r.tokens.len() - r.content_len, 262);
        assert!(r.core_mask[..250].iter().all(|b| *b));
        assert!(!r.core_mask[250..].iter().any(|b| *b));
    }

    #[test]
    fn render_last_chunk_without_right_context() {
        let texts = vec!["t"; 700];
        let chunk = Chunk {
            ordinal: 2,
            left_context: 400..467,
            core: 467..700,
            right_context: 700..700,
        };
        let r = render_chunk(&texts, &chunk, &SplitConfig::default());
        assert_eq!(r.core_mask.iter().filter(|b| **b).count(), 233);
        assert!(r.core_mask[67..300].iter().all(|b| *b));
    }

    #[test]
    fn merge_identity_single_chunk() {
        let c = SplitConfig::default();
        let plan = ChunkPlan {
            chunks: vec![bare_chunk(0, 0..3)],
            total_tokens: 3,
        };
        let mut row = vec![0.9; 512];
        row[..3].copy_from_slice(&[0.1, 0.2, 0.3]);
        assert_eq!(
            merge_scores(&plan, &[row], &c).unwrap(),
            vec![0.1, 0.2, 0.3]
        );
    }

    #[test]
    fn merge_concatenates_cores_and_drops_context() {
        let c = cfg(4, 2, 1, Policy::AverageSplitStatement);
        let plan = ChunkPlan {
            chunks: vec![
                Chunk {
                    ordinal: 0,
                    left_context: 0..0,
                    core: 0..2,
                    right_context: 2..3,
                },
                Chunk {
                    ordinal: 1,
                    left_context: 1..2,
                    core: 2..4,
                    right_context: 4..4,
                },
            ],
            total_tokens: 4,
        };
        let rows = vec![vec![0.1, 0.2, 0.99, 0.0], vec![0.98, 0.3, 0.4, 0.0]];
        assert_eq!(
            merge_scores(&plan, &rows, &c).unwrap(),
            vec![0.1, 0.2, 0.3, 0.4]
        );
    }

    #[test]
    fn merge_rejects_wrong_length() {
        let c = SplitConfig::default();
        let plan = ChunkPlan {
            chunks: vec![bare_chunk(0, 0..3)],
            total_tokens: 3,
        };
        assert_eq!(
            merge_scores(&plan, &[vec![0.0; 3]], &c),
            Err(ChunkError::ShapeMismatch {
                chunk: 0,
                expected: 512,
                actual: 3
            })
        );
    }

    #[test]
    fn truncate_discard_tail_scores_zero() {
        let c = cfg(512, 300, 0, Policy::TruncateDiscard);
        let spans = spans_with_terminators(600, &[599]);
        let plan = plan_with_spans(600, &spans, &c).unwrap();
        let merged = merge_scores(&plan, &[vec![0.5; 512]], &c).unwrap();
        assert!(merged[..512].iter().all(|p| *p == 0.5));
        assert!(merged[512..].iter().all(|p| *p == 0.0));
    }

    #[test]
    fn mid_statement_boundary_gets_no_context() {
        let texts = vec!["x"; 620];
        let spans = statement_spans_of(&texts);
        assert_eq!(spans[0].terminator, None::<Terminator>);
        let c = cfg(512, 300, 5, Policy::AverageSplitStatement);
        let plan = plan_with_spans(620, &spans, &c).unwrap();
        assert_eq!(cores(&plan), vec![0..207, 207..413, 413..620]);
        assert!(plan.chunks.iter().all(|c| c.window() == c.core));
    }
}
