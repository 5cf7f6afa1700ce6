//! Dataset construction: finding logging statements in Java methods,
//! cutting them out into samples, and reading/writing JSONL datasets.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;
use walkdir::WalkDir;

use crate::edit::{insert_after, removal_range, strip_range};
use crate::lexer::{
    is_anchor_text, tokenize, LexError, StatementSpan, Terminator, TokenKind, TokenStream,
};
use crate::statement::{Level, LoggingStatement};

pub const DEFAULT_LOGGER_PATTERN: &str = "(?i)log";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("no logging statement #{0} in method")]
    SpanNotDetected(usize),
    #[error("logging statement at token {0} does not follow `{{ }} ; :`")]
    PrecedingTokenNotAnchor(usize),
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("invalid sample {id}: {message}")]
    InvalidSample { id: String, message: String },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("invalid logger pattern: {0}")]
    Pattern(#[from] regex::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    #[serde(default)]
    pub repo: String,
    #[serde(default)]
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stars: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created_at: Option<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

/// A method with one logging statement removed, plus where it went.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub id: String,
    #[serde(rename = "method")]
    pub method_source: String,
    pub target_index: usize,
    pub target_statement: String,
    pub target_level: Level,
    #[serde(default)]
    pub meta: SampleMeta,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Sample {
    /// Checks that the method lexes and `target_index` is an anchor.
    pub fn validate(&self) -> Result<TokenStream, CorpusError> {
        let invalid = |message: String| CorpusError::InvalidSample {
            id: self.id.clone(),
            message,
        };
        let stream = tokenize(&self.method_source).map_err(|e| invalid(e.to_string()))?;
        match stream.token(self.target_index) {
            Some(t) if t.is_anchor() => Ok(stream),
            Some(t) => Err(invalid(format!(
                "target token {:?} is not an anchor",
                t.text
            ))),
            None => Err(invalid(format!(
                "target index {} out of range",
                self.target_index
            ))),
        }
    }

    /// The method with the target statement put back, formatted as the
    /// pipeline would insert it.
    pub fn reinsert(&self) -> Result<String, CorpusError> {
        let stream = self.validate()?;
        Ok(insert_after(&stream, self.target_index, &self.target_statement).output)
    }
}

/// Receiver test for logger calls, e.g. `log`, `LOGGER`, `auditLog`.
#[derive(Debug, Clone)]
pub struct LoggerPattern(Regex);

impl LoggerPattern {
    pub fn new(pattern: &str) -> Result<Self, CorpusError> {
        Ok(LoggerPattern(Regex::new(pattern)?))
    }

    pub fn as_str(&self) -> &str {
        self.0.as_str()
    }

    pub fn matches(&self, receiver: &str) -> bool {
        self.0.is_match(receiver)
    }
}

impl Default for LoggerPattern {
    fn default() -> Self {
        LoggerPattern(Regex::new(DEFAULT_LOGGER_PATTERN).expect("static pattern"))
    }
}

/// Statements of the form `receiver . level ( ... ) ;` whose receiver
/// matches `pattern`, in source order.
pub fn detect_logging_statements(
    stream: &TokenStream,
    pattern: &LoggerPattern,
) -> Vec<StatementSpan> {
    let toks = stream.tokens();
    let text = |i: usize| toks.get(i).map(|t| t.text.as_str());
    let mut spans = Vec::new();
    let mut i = 0;
    while i + 3 < toks.len() {
        let starts_statement = i == 0
            || matches!(
                text(i - 1),
                Some("{" | "}" | ";" | ":" | ")" | "else" | "do" | "->")
            );
        let is_call = toks[i].kind == TokenKind::Identifier
            && pattern.matches(&toks[i].text)
            && text(i + 1) == Some(".")
            && Level::from_call_name(&toks[i + 2].text).is_some()
            && text(i + 3) == Some("(");
        if starts_statement && is_call {
            if let Some(close) = matching_close(stream, i + 3) {
                if text(close + 1) == Some(";") {
                    spans.push(StatementSpan {
                        start_index: i,
                        end_index: close + 1,
                        terminator: Some(Terminator::Semicolon),
                    });
                    i = close + 2;
                    continue;
                }
            }
        }
        i += 1;
    }
    spans
}

fn matching_close(stream: &TokenStream, open: usize) -> Option<usize> {
    let (o, c) = match stream.tokens()[open].text.as_str() {
        "(" => ("(", ")"),
        "{" => ("{", "}"),
        _ => return None,
    };
    let mut depth = 0usize;
    for (j, t) in stream.tokens().iter().enumerate().skip(open) {
        if t.text == o {
            depth += 1;
        } else if t.text == c {
            depth -= 1;
            if depth == 0 {
                return Some(j);
            }
        }
    }
    None
}

/// Cuts the `span_choice`-th detected statement out of `method_source`.
pub fn extract_sample(
    method_source: &str,
    span_choice: usize,
    pattern: &LoggerPattern,
    id: impl Into<String>,
    meta: SampleMeta,
) -> Result<Sample, CorpusError> {
    let stream = tokenize(method_source)?;
    let span = *detect_logging_statements(&stream, pattern)
        .get(span_choice)
        .ok_or(CorpusError::SpanNotDetected(span_choice))?;
    extract_span(&stream, span, id.into(), meta)
}

fn extract_span(
    stream: &TokenStream,
    span: StatementSpan,
    id: String,
    meta: SampleMeta,
) -> Result<Sample, CorpusError> {
    let anchor = span
        .start_index
        .checked_sub(1)
        .filter(|&a| is_anchor_text(&stream.tokens()[a].text))
        .ok_or(CorpusError::PrecedingTokenNotAnchor(span.start_index))?;
    let toks = stream.tokens();
    let stmt_bytes = toks[span.start_index].span.start..toks[span.end_index].span.end;
    let target_statement = stream.source()[stmt_bytes].to_string();
    let removal = removal_range(stream, span.start_index, span.end_index);
    let target_level = LoggingStatement::parse(&target_statement)
        .level
        .ok_or(CorpusError::SpanNotDetected(span.start_index))?;
    Ok(Sample {
        id,
        method_source: strip_range(stream.source(), removal),
        target_index: anchor,
        target_statement,
        target_level,
        meta,
        extra: Map::new(),
    })
}

/// One sample per detected statement that follows an anchor, with the
/// method's other logging statements left in place. Rejected spans are
/// counted in the second return value.
pub fn extract_all(
    method_source: &str,
    pattern: &LoggerPattern,
    id_prefix: &str,
    meta: &SampleMeta,
) -> Result<(Vec<Sample>, usize), CorpusError> {
    let stream = tokenize(method_source)?;
    let mut samples = Vec::new();
    let mut rejected = 0;
    for (k, span) in detect_logging_statements(&stream, pattern)
        .into_iter()
        .enumerate()
    {
        match extract_span(&stream, span, format!("{id_prefix}:{k}"), meta.clone()) {
            Ok(s) => samples.push(s),
            Err(CorpusError::PrecedingTokenNotAnchor(_)) => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((samples, rejected))
}

/// Byte ranges of method declarations (header through closing brace) in a
/// Java compilation unit. Nested and anonymous-class methods stay inside
/// their enclosing method.
pub fn split_methods(stream: &TokenStream) -> Vec<Range<usize>> {
    let toks = stream.tokens();
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i].text == "{" {
            if let Some(start) = method_header_start(stream, i) {
                if let Some(close) = matching_close(stream, i) {
                    out.push(toks[start].span.start..toks[close].span.end);
                    i = close + 1;
                    continue;
                }
            }
        }
        i += 1;
    }
    out
}

fn method_header_start(stream: &TokenStream, brace: usize) -> Option<usize> {
    let toks = stream.tokens();
    let mut k = brace.checked_sub(1)?;
    if toks[k].text != ")" {
        // throws A, b.C<D>
        while k > 0
            && (toks[k].kind == TokenKind::Identifier
                || matches!(toks[k].text.as_str(), "." | "," | "<" | ">"))
        {
            k = k.checked_sub(1)?;
        }
        if toks[k].text != "throws" {
            return None;
        }
        k = k.checked_sub(1)?;
        if toks[k].text != ")" {
            return None;
        }
    }
    let mut depth = 0usize;
    let open = loop {
        match toks[k].text.as_str() {
            ")" => depth += 1,
            "(" => {
                depth -= 1;
                if depth == 0 {
                    break k;
                }
            }
            _ => {}
        }
        k = k.checked_sub(1)?;
    };
    let name = open.checked_sub(1)?;
    if toks[name].kind != TokenKind::Identifier {
        return None;
    }
    if name > 0
        && matches!(
            toks[name - 1].text.as_str(),
            "new" | "." | "=" | "(" | "," | "return"
        )
    {
        return None;
    }
    let mut start = name;
    while start > 0 && !matches!(toks[start - 1].text.as_str(), ";" | "{" | "}") {
        start -= 1;
    }
    Some(start)
}

/// Repository filters a dataset was drawn under. Crawling itself happens
/// elsewhere; these fields only travel with the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceFilters {
    pub language: String,
    pub requires_log4j: bool,
    pub created_after: Option<String>,
    pub created_before: Option<String>,
    pub min_stars: u32,
    pub exclude_forks: bool,
}

impl Default for ProvenanceFilters {
    fn default() -> Self {
        ProvenanceFilters {
            language: "Java".into(),
            requires_log4j: true,
            created_after: Some("2021-09-01".into()),
            created_before: Some("2023-05-01".into()),
            min_stars: 10,
            exclude_forks: true,
        }
    }
}

/// Metadata accompanying a source tree handed to [`extract_dir`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SourceInfo {
    #[serde(default)]
    pub repo: Option<String>,
    #[serde(default)]
    pub stars: Option<u64>,
    #[serde(default)]
    pub created_at: Option<String>,
    #[serde(default)]
    pub filters: Option<ProvenanceFilters>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ExtractionCounts {
    pub files: usize,
    pub methods: usize,
    pub samples: usize,
    pub rejected: usize,
    pub unlexable_files: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub schema: String,
    pub filters: ProvenanceFilters,
    pub logger_pattern: String,
    pub detection_note: String,
    pub counts: ExtractionCounts,
    pub mean_input_tokens: f64,
    pub mean_target_tokens: f64,
}

pub const MANIFEST_SCHEMA: &str = "loggen-dataset-manifest/1";

impl DatasetManifest {
    pub fn new(
        filters: ProvenanceFilters,
        pattern: &LoggerPattern,
        counts: ExtractionCounts,
        samples: &[Sample],
    ) -> Result<Self, CorpusError> {
        let (mean_input_tokens, mean_target_tokens) = match corpus_stats(samples) {
            Ok(s) => (s.mean_input_tokens, s.mean_target_tokens),
            Err(CorpusError::EmptyDataset) => (0.0, 0.0),
            Err(e) => return Err(e),
        };
        Ok(DatasetManifest {
            schema: MANIFEST_SCHEMA.into(),
            filters,
            logger_pattern: pattern.as_str().into(),
            detection_note:
                "heuristic detection of `receiver.level(...);` statements; approximates, \
                             does not reproduce, prior extraction rules"
                    .into(),
            counts,
            mean_input_tokens,
            mean_target_tokens,
        })
    }
}

/// Extracts samples from every `.java` file under `root`, using up to
/// `jobs` threads. Output is sorted by path, then method, then statement.
pub fn extract_dir(
    root: &Path,
    pattern: &LoggerPattern,
    info: &SourceInfo,
    jobs: usize,
) -> Result<(Vec<Sample>, ExtractionCounts), CorpusError> {
    let mut files: Vec<PathBuf> = WalkDir::new(root)
        .into_iter()
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file() && e.path().extension().is_some_and(|x| x == "java"))
        .map(|e| e.into_path())
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let per_file: Vec<Result<(Vec<Sample>, ExtractionCounts), CorpusError>> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let rel = path
                    .strip_prefix(root)
                    .unwrap_or(path)
                    .to_string_lossy()
                    .replace('\\', "/");
                let source = fs::read_to_string(path).map_err(io_err(path))?;
                let meta = SampleMeta {
                    repo: info.repo.clone().unwrap_or_default(),
                    path: rel.clone(),
                    stars: info.stars,
                    created_at: info.created_at.clone(),
                    extra: Map::new(),
                };
                Ok(extract_file(&source, pattern, &rel, &meta))
            })
            .collect()
    });
    let mut samples = Vec::new();
    let mut counts = ExtractionCounts::default();
    for r in per_file {
        let (s, c) = r?;
        samples.extend(s);
        counts.files += c.files;
        counts.methods += c.methods;
        counts.rejected += c.rejected;
        counts.unlexable_files += c.unlexable_files;
    }
    counts.samples = samples.len();
    Ok((samples, counts))
}

/// Samples from one Java source file.
pub fn extract_file(
    source: &str,
    pattern: &LoggerPattern,
    rel_path: &str,
    meta: &SampleMeta,
) -> (Vec<Sample>, ExtractionCounts) {
    let mut counts = ExtractionCounts {
        files: 1,
        ..Default::default()
    };
    let Ok(stream) = tokenize(source) else {
        counts.unlexable_files = 1;
        return (Vec::new(), counts);
    };
    let mut methods = split_methods(&stream);
    let declares_type = stream
        .tokens()
        .iter()
        .any(|t| matches!(t.text.as_str(), "class" | "interface" | "enum" | "record"));
    if methods.is_empty() && !declares_type && !stream.is_empty() {
        let toks = stream.tokens();
        methods.push(toks[0].span.start..toks[toks.len() - 1].span.end);
    }
    let mut samples = Vec::new();
    for (m, range) in methods.into_iter().enumerate() {
        counts.methods += 1;
        match extract_all(&source[range], pattern, &format!("{rel_path}#{m}"), meta) {
            Ok((s, rejected)) => {
                counts.rejected += rejected;
                samples.extend(s);
            }
            Err(_) => counts.rejected += 1,
        }
    }
    counts.samples = samples.len();
    (samples, counts)
}

pub fn write_dataset(path: &Path, samples: &[Sample]) -> Result<(), CorpusError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    write_samples(&mut w, samples).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))
}

pub fn write_samples<W: Write>(w: &mut W, samples: &[Sample]) -> io::Result<()> {
    for s in samples {
        serde_json::to_writer(&mut *w, s)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_dataset(path: &Path) -> Result<Vec<Sample>, CorpusError> {
    let file = File::open(path).map_err(io_err(path))?;
    read_samples(BufReader::new(file)).map_err(|e| match e {
        CorpusError::Io { source, .. } => CorpusError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// Parses JSONL; blank lines are skipped, line numbers are 1-based.
pub fn read_samples<R: BufRead>(r: R) -> Result<Vec<Sample>, CorpusError> {
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line.map_err(|source| CorpusError::Io {
            path: PathBuf::new(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let sample = serde_json::from_str(&line).map_err(|e| CorpusError::ParseError {
            line: n + 1,
            message: e.to_string(),
        })?;
        out.push(sample);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub count: usize,
    pub mean_input_tokens: f64,
    pub mean_target_tokens: f64,
}

pub fn corpus_stats(samples: &[Sample]) -> Result<CorpusStats, CorpusError> {
    if samples.is_empty() {
        return Err(CorpusError::EmptyDataset);
    }
    let mut input = 0usize;
    let mut target = 0usize;
    for s in samples {
        input += tokenize(&s.method_source)?.len();
        target += LoggingStatement::parse(&s.target_statement).tokens.len();
    }
    let n = samples.len() as f64;
    Ok(CorpusStats {
        count: samples.len(),
        mean_input_tokens: input as f64 / n,
        mean_target_tokens: target as f64 / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn detect(src: &str) -> Vec<StatementSpan> {
        detect_logging_statements(&tokenize(src).unwrap(), &LoggerPattern::default())
    }

    #[test]
    fn detects_single_call() {
        let spans = detect("void f() { logger.info(\"x\"); }");
        assert_eq!(spans.len(), 1);
        assert_eq!((spans[0].start_index, spans[0].end_index), (5, 11));
    }

    #[test]
    fn receiver_must_match_pattern() {
        assert!(detect("void f() { list.error(x); }").is_empty());
        let custom = LoggerPattern::new("^list$").unwrap();
        let s = tokenize("void f() { list.error(x); }").unwrap();
        assert_eq!(detect_logging_statements(&s, &custom).len(), 1);
    }

    #[test]
    fn detects_multiple_in_order() {
        let spans = detect("{ LOG.debug(a); x(); log.error(\"b\", e); }");
        assert_eq!(spans.len(), 2);
        assert!(spans[0].start_index < spans[1].start_index);
    }

    #[test]
    fn ignores_expressions_and_chains() {
        assert!(detect("{ String s = log.info(x); }").is_empty());
        assert!(detect("{ this.log.info(x); }").is_empty());
        assert!(detect("{ log.atInfo().log(x); }").is_empty());
    }

    #[test]
    fn nested_parens_in_arguments() {
        let spans = detect("{ log.warn(fmt(\"a\", g(b)), c); }");
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].end_index, 17);
    }

    #[test]
    fn extract_middle_statement() {
        let s = extract_sample(
            "{ a(); log.info(\"x\"); b(); }",
            0,
            &LoggerPattern::default(),
            "s",
            SampleMeta::default(),
        )
        .unwrap();
        assert_eq!(s.method_source, "{ a(); b(); }");
        assert_eq!(s.target_index, 4);
        assert_eq!(s.target_statement, "log.info(\"x\");");
        assert_eq!(s.target_level, Level::Info);
    }

    #[test]
    fn extract_first_in_block() {
        let src = "void f() {\n    log.debug(\"enter\");\n    a();\n}";
        let s = extract_sample(
            src,
            0,
            &LoggerPattern::default(),
            "s",
            SampleMeta::default(),
        )
        .unwrap();
        assert_eq!(s.method_source, "void f() {\n    a();\n}");
        assert_eq!(s.target_index, 4);
    }

    #[test]
    fn extract_errors() {
        let p = LoggerPattern::default();
        assert!(matches!(
            extract_sample("{ a(); }", 0, &p, "s", SampleMeta::default()),
            Err(CorpusError::SpanNotDetected(0))
        ));
        assert!(matches!(
            extract_sample("{ if (x) log.info(y); }", 0, &p, "s", SampleMeta::default()),
            Err(CorpusError::PrecedingTokenNotAnchor(_))
        ));
    }

    #[test]
    fn reinsert_then_extract_round_trip() {
        let src = "void f() {\n    a();\n    log.warn(\"w {}\", x);\n    b();\n}";
        let p = LoggerPattern::default();
        let s = extract_sample(src, 0, &p, "s", SampleMeta::default()).unwrap();
        let back = s.reinsert().unwrap();
        assert_eq!(back, src);
        let again = extract_sample(&back, 0, &p, "s", SampleMeta::default()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn one_sample_per_statement() {
        let src = "{ log.info(a); b(); log.error(c); }";
        let (samples, rejected) =
            extract_all(src, &LoggerPattern::default(), "m", &SampleMeta::default()).unwrap();
        assert_eq!(rejected, 0);
        assert_eq!(samples.len(), 2);
        assert_eq!(samples[0].method_source, "{ b(); log.error(c); }");
        assert_eq!(samples[1].method_source, "{ log.info(a); b(); }");
        assert_eq!(samples[1].id, "m:1");
    }

    #[test]
    fn method_splitting() {
        let src = r#"package a;
public class C {
    private static final Logger LOG = LogManager.getLogger(C.class);
    /** doc */
    @Override
    public void run() throws IOException, java.io.Foo {
        if (x) { y(); }
        Runnable r = new Runnable() { public void run() { z(); } };
    }
    int g(int a) { return a; }
    C() { super(); }
}"#;
        let s = tokenize(src).unwrap();
        let methods: Vec<&str> = split_methods(&s).into_iter().map(|r| &src[r]).collect();
        assert_eq!(methods.len(), 3, "{methods:#?}");
        assert!(methods[0].starts_with("@Override\n    public void run() throws"));
        assert!(methods[0].ends_with("};\n    }"));
        assert_eq!(methods[1], "int g(int a) { return a; }");
        assert_eq!(methods[2], "C() { super(); }");
    }

    #[test]
    fn dataset_round_trip_preserves_unknown_fields() {
        let line = r#"{"id":"a","method":"{ x(); }","target_index":4,"target_statement":"log.info(y);","target_level":"info","meta":{"repo":"r","path":"p","license":"mit"},"split":"test"}"#;
        let samples = read_samples(line.as_bytes()).unwrap();
        assert_eq!(samples[0].extra["split"], "test");
        assert_eq!(samples[0].meta.extra["license"], "mit");
        let mut out = Vec::new();
        write_samples(&mut out, &samples).unwrap();
        let back = read_samples(out.as_slice()).unwrap();
        assert_eq!(back, samples);
        let written = String::from_utf8(out).unwrap();
        assert!(written.starts_with(r#"{"id":"a","method":"#));
    }

    #[test]
    fn parse_error_reports_line() {
        let good = r#"{"id":"a","method":"{}","target_index":0,"target_statement":"log.info(y);","target_level":"info"}"#;
        let text = format!("{good}\n{good}\nnot json\n");
        match read_samples(text.as_bytes()) {
            Err(CorpusError::ParseError { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_file_is_empty_dataset() {
        assert!(read_samples("".as_bytes()).unwrap().is_empty());
        assert!(matches!(corpus_stats(&[]), Err(CorpusError::EmptyDataset)));
    }

    #[test]
    fn stats_single_sample() {
        let s = Sample {
            id: "a".into(),
            method_source: "void f() { a(); b(); }".into(),
            target_index: 8,
            target_statement: "log.info(x);".into(),
            target_level: Level::Info,
            meta: SampleMeta::default(),
            extra: Map::new(),
        };
        let st = corpus_stats(&[s]).unwrap();
        assert_eq!(st.count, 1);
        assert_eq!(st.mean_input_tokens, 14.0);
        assert_eq!(st.mean_target_tokens, 7.0);
    }
}
