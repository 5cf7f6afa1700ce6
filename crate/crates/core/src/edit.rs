//! Source edits for inserting and removing a single statement.
//!
//! An inserted statement occupies `"\n" + indent + statement` immediately
//! after its anchor token, where `indent` is the leading whitespace of the
//! anchor's line. Removal deletes exactly that byte range.

use std::ops::Range;

use crate::lexer::TokenStream;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    pub output: String,
    /// Byte range of the inserted text (newline, indent, statement) in `output`.
    pub inserted: Range<usize>,
}

impl Insertion {
    /// The original source, recovered by cutting out the inserted range.
    pub fn strip(&self) -> String {
        strip_range(&self.output, self.inserted.clone())
    }
}

/// Inserts `statement` after token `index` of `stream`.
///
/// Panics if `index` is out of bounds; callers validate indices first.
pub fn insert_after(stream: &TokenStream, index: usize, statement: &str) -> Insertion {
    let at = stream.tokens()[index].span.end;
    let indent = stream.line_indent(index);
    let source = stream.source();
    let piece = format!("\n{indent}{}", statement.trim());
    let mut output = String::with_capacity(source.len() + piece.len());
    output.push_str(&source[..at]);
    output.push_str(&piece);
    output.push_str(&source[at..]);
    Insertion {
        output,
        inserted: at..at + piece.len(),
    }
}

pub fn strip_range(text: &str, range: Range<usize>) -> String {
    let mut out = String::with_capacity(text.len() - range.len());
    out.push_str(&text[..range.start]);
    out.push_str(&text[range.end..]);
    out
}

/// Byte range to delete when extracting the statement spanning tokens
/// `first..=last`: the statement plus the whitespace run that directly
/// precedes it. Comments in the preceding gap are kept.
pub fn removal_range(stream: &TokenStream, first: usize, last: usize) -> Range<usize> {
    let gap = stream.gap_range(first);
    let gap_text = &stream.source()[gap.clone()];
    let ws = gap_text.len() - gap_text.trim_end().len();
    (gap.end - ws)..stream.tokens()[last].span.end
}
