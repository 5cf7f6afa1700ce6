//! Logging statements: level parsing and message normalization.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexer::{tokenize, TokenKind};

/// Log severity, ordered Trace (1) through Fatal (6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Trace,
    Debug,
    Info,
    Warn,
    Error,
    Fatal,
}

impl Level {
    pub const ALL: [Level; 6] = [
        Level::Trace,
        Level::Debug,
        Level::Info,
        Level::Warn,
        Level::Error,
        Level::Fatal,
    ];

    pub fn rank(self) -> u8 {
        self as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Trace => "trace",
            Level::Debug => "debug",
            Level::Info => "info",
            Level::Warn => "warn",
            Level::Error => "error",
            Level::Fatal => "fatal",
        }
    }

    /// Case-insensitive match against the six level names.
    pub fn from_call_name(name: &str) -> Option<Level> {
        Level::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Level::from_call_name(s).ok_or_else(|| format!("unknown log level `{s}`"))
    }
}

/// Stand-in for the level call name when comparing messages.
pub const LEVEL_PLACEHOLDER: &str = "<level>";

/// Options for message equality. The default compares lexer tokens exactly,
/// with the level call name replaced by [`LEVEL_PLACEHOLDER`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageNormalization {
    /// Collapse whitespace runs inside string literals to one space.
    #[serde(default)]
    pub fold_literal_whitespace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoggingStatement {
    pub raw_text: String,
    pub tokens: Vec<String>,
    pub level: Option<Level>,
    /// Position in `tokens` of the call name that fixed the level.
    pub level_token: Option<usize>,
}

impl LoggingStatement {
    pub fn parse(raw: &str) -> Self {
        let trimmed = raw.trim();
        let (tokens, kinds): (Vec<String>, Vec<Option<TokenKind>>) = match tokenize(trimmed) {
            Ok(stream) => stream
                .tokens()
                .iter()
                .map(|t| (t.text.clone(), Some(t.kind)))
                .unzip(),
            Err(_) => trimmed
                .split_whitespace()
                .map(|w| (w.to_string(), None))
                .unzip(),
        };
        let level_token = level_call_index(&tokens, &kinds);
        LoggingStatement {
            raw_text: trimmed.to_string(),
            level: level_token.and_then(|i| Level::from_call_name(&tokens[i])),
            level_token,
            tokens,
        }
    }

    pub fn message_tokens(&self, norm: &MessageNormalization) -> Vec<String> {
        self.tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if Some(i) == self.level_token {
                    LEVEL_PLACEHOLDER.to_string()
                } else if norm.fold_literal_whitespace && t.starts_with('"') {
                    t.split_whitespace().collect::<Vec<_>>().join(" ")
                } else {
                    t.clone()
                }
            })
            .collect()
    }
}

/// First identifier directly followed by `(` whose name is a level.
fn level_call_index(tokens: &[String], kinds: &[Option<TokenKind>]) -> Option<usize> {
    (0..tokens.len().saturating_sub(1)).find(|&i| {
        kinds[i].is_none_or(|k| k == TokenKind::Identifier)
            && tokens[i + 1] == "("
            && Level::from_call_name(&tokens[i]).is_some()
    })
}

pub fn parse_level(statement: &str) -> Option<Level> {
    LoggingStatement::parse(statement).level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_follow_severity() {
        let ranks: Vec<u8> = Level::ALL.iter().map(|l| l.rank()).collect();
        assert_eq!(ranks, [1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn level_parsing() {
        assert_eq!(parse_level("logger.error(\"x\", e);"), Some(Level::Error));
        assert_eq!(parse_level("LOG.warn(msg);"), Some(Level::Warn));
        assert_eq!(parse_level("log.log(x);"), None);
        assert_eq!(parse_level("LOGGER.Debug(a.info());"), Some(Level::Debug));
        assert_eq!(parse_level("log.info(\"unterminated);"), None);
    }

    #[test]
    fn level_name_inside_literal_is_ignored() {
        assert_eq!(
            parse_level("log.trace(\"error(\" + x);"),
            Some(Level::Trace)
        );
    }

    #[test]
    fn message_canonicalizes_level_only() {
        let a = LoggingStatement::parse("log.info(\"done {}\", id);");
        let b = LoggingStatement::parse("log.error( \"done {}\",id ) ;");
        let n = MessageNormalization::default();
        assert_eq!(a.message_tokens(&n), b.message_tokens(&n));
        let c = LoggingStatement::parse("log.info(\"done  {}\", id);");
        assert_ne!(a.message_tokens(&n), c.message_tokens(&n));
        let fold = MessageNormalization {
            fold_literal_whitespace: true,
        };
        assert_eq!(a.message_tokens(&fold), c.message_tokens(&fold));
    }
}
