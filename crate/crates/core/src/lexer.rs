//! Java method lexer.
//!
//! The lexer produces a flat, indexed token stream without building a parse
//! tree. Whitespace and comments are kept verbatim in the gaps between tokens
//! so that [`TokenStream::reconstruct`] reproduces the input byte for byte.
//! Token indices produced here are the coordinate system shared by position
//! prediction, chunking, masking and evaluation.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tokens after which a logging statement may be inserted.
pub const ANCHORS: [&str; 4] = ["{", "}", ";", ":"];

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "var",
    "yield",
    "record",
    "true",
    "false",
    "null",
];

// Longest first within each length class.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    Keyword,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    Operator,
    Punctuation,
    AnnotationMarker,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub index: usize,
    /// Byte offsets `[start, end)` into the original source.
    pub span: Range<usize>,
    pub kind: TokenKind,
}

impl Token {
    pub fn is_anchor(&self) -> bool {
        is_anchor_text(&self.text)
    }
}

pub fn is_anchor_text(text: &str) -> bool {
    ANCHORS.contains(&text)
}

/// An indexed token stream over one Java method.
///
/// `gaps` always has `tokens.len() + 1` entries: `gaps[0]` precedes the first
/// token and `gaps[i + 1]` follows token `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream {
    source: String,
    tokens: Vec<Token>,
    gaps: Vec<Range<usize>>,
}

impl TokenStream {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, index: usize) -> Option<&Token> {
        self.tokens.get(index)
    }

    pub fn texts(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }

    pub fn owned_texts(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.text.clone()).collect()
    }

    /// Whitespace and comments between token `i - 1` and token `i`
    /// (`gap(0)` is the leading gap, `gap(len)` the trailing one).
    pub fn gap(&self, i: usize) -> &str {
        &self.source[self.gaps[i].clone()]
    }

    pub fn gap_range(&self, i: usize) -> Range<usize> {
        self.gaps[i].clone()
    }

    pub fn reconstruct(&self) -> String {
        let mut out = String::with_capacity(self.source.len());
        for (i, tok) in self.tokens.iter().enumerate() {
            out.push_str(self.gap(i));
            out.push_str(&tok.text);
        }
        out.push_str(self.gap(self.tokens.len()));
        out
    }

    /// Leading whitespace of the source line holding token `index`.
    pub fn line_indent(&self, index: usize) -> &str {
        let start = self.tokens[index].span.start;
        let line_start = self.source[..start].rfind('\n').map_or(0, |p| p + 1);
        let line = &self.source[line_start..];
        let width = line
            .char_indices()
            .find(|(_, c)| *c != ' ' && *c != '\t')
            .map_or(line.len(), |(i, _)| i);
        &line[..width]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("unterminated {what} starting at offset {offset}")]
    UnterminatedLiteral { what: LiteralKind, offset: usize },
    #[error("unexpected character {ch:?} at offset {offset}")]
    UnexpectedChar { ch: char, offset: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralKind {
    String,
    TextBlock,
    Char,
    Comment,
}

impl fmt::Display for LiteralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiteralKind::String => "string literal",
            LiteralKind::TextBlock => "text block",
            LiteralKind::Char => "char literal",
            LiteralKind::Comment => "block comment",
        })
    }
}

struct Scanner<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn byte_at(&self, offset: usize) -> Option<u8> {
        self.bytes.get(self.pos + offset).copied()
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.pos..].starts_with(s)
    }

    fn skip_trivia(&mut self) -> Result<(), LexError> {
        loop {
            match self.peek_char() {
                Some(c) if c.is_whitespace() => self.pos += c.len_utf8(),
                Some('/') if self.byte_at(1) == Some(b'/') => {
                    self.pos = self.src[self.pos..]
                        .find('\n')
                        .map_or(self.src.len(), |p| self.pos + p);
                }
                Some('/') if self.byte_at(1) == Some(b'*') => {
                    let start = self.pos;
                    match self.src[self.pos + 2..].find("*/") {
                        Some(p) => self.pos = self.pos + 2 + p + 2,
                        None => {
                            return Err(LexError::UnterminatedLiteral {
                                what: LiteralKind::Comment,
                                offset: start,
                            })
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn quoted(&mut self, quote: u8, what: LiteralKind) -> Result<(), LexError> {
        let start = self.pos;
        self.pos += 1;
        while let Some(b) = self.byte_at(0) {
            match b {
                b'\\' => self.pos += 2,
                b'\n' => break,
                _ if b == quote => {
                    self.pos += 1;
                    return Ok(());
                }
                _ => self.pos += 1,
            }
        }
        Err(LexError::UnterminatedLiteral {
            what,
            offset: start,
        })
    }

    fn text_block(&mut self) -> Result<(), LexError> {
        let start = self.pos;
        self.pos += 3;
        while self.pos < self.bytes.len() {
            if self.bytes[self.pos] == b'\\' {
                self.pos += 2;
            } else if self.starts_with("\"\"\"") {
                self.pos += 3;
                return Ok(());
            } else {
                self.pos += 1;
            }
        }
        Err(LexError::UnterminatedLiteral {
            what: LiteralKind::TextBlock,
            offset: start,
        })
    }

    fn number(&mut self) {
        let hex = self.starts_with("0x") || self.starts_with("0X");
        let mut seen_dot = false;
        let mut prev = 0u8;
        while let Some(b) = self.byte_at(0) {
            let exp_sign = (b == b'+' || b == b'-')
                && if hex {
                    matches!(prev, b'p' | b'P')
                } else {
                    matches!(prev, b'e' | b'E')
                };
            let fraction_dot = b == b'.'
                && !hex
                && !seen_dot
                && self.byte_at(1).is_none_or(|n| {
                    n.is_ascii_digit()
                        || !(n.is_ascii_alphabetic() || matches!(n, b'_' | b'$' | b'.'))
                });
            if b.is_ascii_alphanumeric() || b == b'_' || exp_sign || fraction_dot {
                seen_dot |= b == b'.';
                self.pos += 1;
                prev = b;
            } else {
                break;
            }
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Tokenizes Java source into an indexed stream.
///
/// Comments and whitespace land in the gaps between tokens. String, text
/// block and char literals are single tokens including their quotes.
pub fn tokenize(source: &str) -> Result<TokenStream, LexError> {
    let mut sc = Scanner {
        src: source,
        bytes: source.as_bytes(),
        pos: 0,
    };
    let mut tokens = Vec::new();
    let mut gaps = Vec::new();
    loop {
        let gap_start = sc.pos;
        sc.skip_trivia()?;
        gaps.push(gap_start..sc.pos);
        let Some(c) = sc.peek_char() else { break };
        let start = sc.pos;
        let kind = if sc.starts_with("\"\"\"") {
            sc.text_block()?;
            TokenKind::StringLiteral
        } else if c == '"' {
            sc.quoted(b'"', LiteralKind::String)?;
            TokenKind::StringLiteral
        } else if c == '\'' {
            sc.quoted(b'\'', LiteralKind::Char)?;
            TokenKind::CharLiteral
        } else if c.is_ascii_digit()
            || (c == '.' && sc.byte_at(1).is_some_and(|b| b.is_ascii_digit()))
        {
            sc.number();
            TokenKind::NumberLiteral
        } else if is_ident_start(c) {
            let len = source[start..]
                .char_indices()
                .find(|(_, ch)| !is_ident_continue(*ch))
                .map_or(source.len() - start, |(i, _)| i);
            sc.pos += len;
            if KEYWORDS.contains(&&source[start..sc.pos]) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            }
        } else if c == '@' {
            sc.pos += 1;
            TokenKind::AnnotationMarker
        } else if let Some(op) = OPERATORS.iter().find(|op| sc.starts_with(op)) {
            sc.pos += op.len();
            if *op == "..." {
                TokenKind::Punctuation
            } else {
                TokenKind::Operator
            }
        } else {
            sc.pos += c.len_utf8();
            match c {
                '{' | '}' | '(' | ')' | '[' | ']' | ';' | ',' | '.' | ':' => TokenKind::Punctuation,
                '=' | '<' | '>' | '!' | '~' | '?' | '+' | '-' | '*' | '/' | '&' | '|' | '^'
                | '%' => TokenKind::Operator,
                '\\' | '#' | '`' => TokenKind::Operator,
                _ => {
                    return Err(LexError::UnexpectedChar {
                        ch: c,
                        offset: start,
                    })
                }
            }
        };
        tokens.push(Token {
            text: source[start..sc.pos].to_string(),
            index: tokens.len(),
            span: start..sc.pos,
            kind,
        });
    }
    Ok(TokenStream {
        source: source.to_string(),
        tokens,
        gaps,
    })
}

/// Indices of anchor tokens (`{`, `}`, `;`, `:`), increasing.
pub fn find_anchors(stream: &TokenStream) -> Vec<usize> {
    anchors_of(&stream.texts())
}

pub fn anchors_of<S: AsRef<str>>(texts: &[S]) -> Vec<usize> {
    texts
        .iter()
        .enumerate()
        .filter(|(_, t)| is_anchor_text(t.as_ref()))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Terminator {
    #[serde(rename = ";")]
    Semicolon,
    #[serde(rename = "}")]
    CloseBrace,
}

impl Terminator {
    pub fn from_text(text: &str) -> Option<Self> {
        match text {
            ";" => Some(Terminator::Semicolon),
            "}" => Some(Terminator::CloseBrace),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Terminator::Semicolon => ";",
            Terminator::CloseBrace => "}",
        }
    }
}

/// Inclusive token range of one statement. `terminator` is `None` only for a
/// trailing remainder that never reaches `;` or `}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementSpan {
    pub start_index: usize,
    pub end_index: usize,
    pub terminator: Option<Terminator>,
}

impl StatementSpan {
    pub fn len(&self) -> usize {
        self.end_index + 1 - self.start_index
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_complete(&self) -> bool {
        self.terminator.is_some()
    }

    /// Half-open token range.
    pub fn range(&self) -> Range<usize> {
        self.start_index..self.end_index + 1
    }
}

pub fn statement_spans(stream: &TokenStream) -> Vec<StatementSpan> {
    statement_spans_of(&stream.texts())
}

/// Splits a token sequence into statements ending at each `;` or `}`.
pub fn statement_spans_of<S: AsRef<str>>(texts: &[S]) -> Vec<StatementSpan> {
    let mut spans = Vec::new();
    let mut start = 0;
    for (i, t) in texts.iter().enumerate() {
        if let Some(term) = Terminator::from_text(t.as_ref()) {
            spans.push(StatementSpan {
                start_index: start,
                end_index: i,
                terminator: Some(term),
            });
            start = i + 1;
        }
    }
    if start < texts.len() {
        spans.push(StatementSpan {
            start_index: start,
            end_index: texts.len() - 1,
            terminator: None,
        });
    }
    spans
}
