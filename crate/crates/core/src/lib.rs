//! Logging statement insertion for Java methods.
//!
//! Stage 1 predicts the anchor token after which a logging statement belongs;
//! stage 2 generates the statement from the method with a `<mask>`
//! placeholder at that position. Both learned components sit behind the
//! [`backend`] traits, so the pipeline itself is deterministic and preserves
//! every byte of the input outside the inserted statement.

pub mod backend;
pub mod baseline;
pub mod chunker;
pub mod corpus;
pub mod edit;
pub mod eval;
pub mod lexer;
pub mod pipeline;
pub mod statement;
pub mod synth;

pub use backend::{
    BackendError, Candidate, GenerateRequest, GenerateResponse, HttpBackend, PositionScorer,
    ScoreRequest, ScoreResponse, StatementGenerator, MASK,
};
pub use baseline::{BaselineError, BaselineModel};
pub use chunker::{Chunk, ChunkError, ChunkPlan, Policy, SplitConfig};
pub use corpus::{CorpusError, LoggerPattern, Sample, SampleMeta};
pub use eval::{AblationReport, EvalConfig, EvalError, EvalReport};
pub use lexer::{tokenize, LexError, Token, TokenKind, TokenStream};
pub use pipeline::{InsertionResult, PipelineConfig, PipelineError, StageTimings, SuggestionSet};
pub use statement::{Level, LoggingStatement, MessageNormalization};
