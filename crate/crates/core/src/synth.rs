//! Seeded generator of Java sources with log4j-style logging statements.
//!
//! Used for fixtures, benchmarks and the memorization corpus; the same seed
//! always yields the same text.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{extract_all, split_methods, LoggerPattern, Sample, SampleMeta};
use crate::lexer::tokenize;
use crate::statement::Level;

const LOGGERS: [&str; 5] = ["log", "LOG", "logger", "LOGGER", "auditLog"];
const TYPES: [&str; 6] = ["int", "long", "String", "double", "boolean", "List<String>"];
const EXCEPTIONS: [&str; 4] = [
    "IOException",
    "IllegalStateException",
    "SQLException",
    "TimeoutException",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    /// Statements per method body (top level), inclusive range.
    pub min_statements: usize,
    pub max_statements: usize,
    /// Probability that a generated statement is a logging call.
    pub log_rate: f64,
    pub max_depth: usize,
    /// Emit only constructs the memorization corpus relies on: a single
    /// logging call per method, placed after a uniquely named call.
    pub single_log: bool,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            min_statements: 4,
            max_statements: 24,
            log_rate: 0.15,
            max_depth: 3,
            single_log: false,
        }
    }
}

pub struct JavaSynth {
    rng: ChaCha8Rng,
    cfg: SynthConfig,
    next_id: usize,
    indent_unit: &'static str,
    newline: &'static str,
}

impl JavaSynth {
    pub fn new(seed: u64, cfg: SynthConfig) -> Self {
        JavaSynth {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg,
            next_id: 0,
            indent_unit: "    ",
            newline: "\n",
        }
    }

    fn id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id
    }

    fn indent(&self, depth: usize) -> String {
        self.indent_unit.repeat(depth)
    }

    fn level(&mut self) -> Level {
        *Level::ALL.choose(&mut self.rng).expect("non-empty")
    }

    fn log_call(&mut self, level: Level) -> String {
        let u = self.id();
        let logger = *LOGGERS.choose(&mut self.rng).expect("non-empty");
        let name = if self.rng.random_bool(0.1) {
            level.name().to_uppercase()
        } else {
            level.name().to_string()
        };
        let args = match self.rng.random_range(0..5) {
            0 => format!("\"event {u} done\""),
            1 => format!("\"value {u} = {{}}\", v{u}"),
            2 => format!("\"failed {u}: \" + e.getMessage(), e"),
            3 => format!(
                "\"count {{}} of {{}}\",\n{}count{u}, total",
                self.indent_unit.repeat(3)
            ),
            _ => format!("String.format(\"%s-%d\", name, {u})"),
        };
        format!("{logger}.{name}({args});")
    }

    fn simple(&mut self) -> String {
        let u = self.id();
        match self.rng.random_range(0..9) {
            0 => {
                let ty = *TYPES.choose(&mut self.rng).expect("non-empty");
                format!(
                    "{ty} v{u} = compute{u}(arg, {});",
                    self.rng.random_range(0..1000)
                )
            }
            1 => format!("helper.process{u}(items, \"text {u}\\t\\\"q\\\"\");"),
            2 => format!("total{u} += size * {};", self.rng.random_range(1..9)),
            3 => format!(
                "char c{u} = '{}';",
                ["\\n", "x", "\\'", "\\u0041"]
                    .choose(&mut self.rng)
                    .expect("non-empty")
            ),
            4 => format!("items.forEach(x -> consume{u}(x));"),
            5 => format!("Map<String, List<Integer>> m{u} = new HashMap<>();"),
            6 => format!("result{u} = flag ? a{u} >>> 2 : b{u} << 1;"),
            7 => format!("step{u}();"),
            _ => format!("double d{u} = 1.5e-3 + 0x1F + 10_000L;"),
        }
    }

    fn comment(&mut self) -> String {
        let u = self.id();
        if self.rng.random_bool(0.5) {
            format!("// note {u}: braces {{ }} and ; in comments")
        } else {
            format!("/* block {u} {{ */")
        }
    }

    fn block(&mut self, depth: usize, out: &mut Vec<String>, allow_log: bool) {
        let ind = self.indent(depth);
        let u = self.id();
        let body_len = self.rng.random_range(1..4);
        match self.rng.random_range(0..5) {
            0 => {
                out.push(format!(
                    "{ind}if (x{u} > {}) {{",
                    self.rng.random_range(0..100)
                ));
                self.body(depth + 1, body_len, out, allow_log);
                if self.rng.random_bool(0.5) {
                    out.push(format!("{ind}}} else {{"));
                    self.body(depth + 1, 1, out, allow_log);
                }
                out.push(format!("{ind}}}"));
            }
            1 => {
                out.push(format!("{ind}for (int i{u} = 0; i{u} < n; i{u}++) {{"));
                self.body(depth + 1, body_len, out, allow_log);
                out.push(format!("{ind}}}"));
            }
            2 => {
                let ex = *EXCEPTIONS.choose(&mut self.rng).expect("non-empty");
                out.push(format!("{ind}try {{"));
                self.body(depth + 1, body_len, out, allow_log);
                out.push(format!("{ind}}} catch ({ex} e) {{"));
                if allow_log && !self.cfg.single_log {
                    let call = self.log_call(Level::Error);
                    out.push(format!("{}{call}", self.indent(depth + 1)));
                } else {
                    out.push(format!(
                        "{}throw new RuntimeException(e);",
                        self.indent(depth + 1)
                    ));
                }
                out.push(format!("{ind}}}"));
            }
            3 => {
                out.push(format!("{ind}switch (mode{u}) {{"));
                out.push(format!("{ind}case {}:", self.rng.random_range(0..5)));
                self.body(depth + 1, 1, out, allow_log);
                out.push(format!("{}break;", self.indent(depth + 1)));
                out.push(format!("{ind}default:"));
                self.body(depth + 1, 1, out, allow_log);
                out.push(format!("{ind}}}"));
            }
            _ => {
                out.push(format!("{ind}while (running{u}) {{"));
                self.body(depth + 1, body_len, out, allow_log);
                out.push(format!("{ind}}}"));
            }
        }
    }

    fn body(&mut self, depth: usize, count: usize, out: &mut Vec<String>, allow_log: bool) {
        let ind = self.indent(depth);
        for _ in 0..count {
            let roll: f64 = self.rng.random();
            if allow_log && !self.cfg.single_log && roll < self.cfg.log_rate {
                let level = self.level();
                let call = self.log_call(level);
                if self.rng.random_bool(0.05) {
                    // Unbraced guard: the extractor rejects these.
                    out.push(format!("{ind}if (debug) {call}"));
                } else {
                    out.push(format!("{ind}{call}"));
                }
            } else if roll < 0.3 && depth < self.cfg.max_depth {
                self.block(depth, out, allow_log);
            } else if roll < 0.36 {
                let c = self.comment();
                out.push(format!("{ind}{c}"));
            } else {
                let s = self.simple();
                out.push(format!("{ind}{s}"));
            }
            if self.rng.random_bool(0.05) {
                out.push(String::new());
            }
        }
    }

    /// A method declaration at the given nesting depth.
    pub fn method(&mut self, depth: usize) -> String {
        let ind = self.indent(depth);
        let u = self.id();
        let n = self
            .rng
            .random_range(self.cfg.min_statements..=self.cfg.max_statements);
        let mut lines = Vec::new();
        if self.rng.random_bool(0.2) {
            lines.push(format!("{ind}@Override"));
        }
        let throws = if self.rng.random_bool(0.3) {
            " throws IOException, TimeoutException"
        } else {
            ""
        };
        lines.push(format!(
            "{ind}public void method{u}(String arg, int n){throws} {{"
        ));
        if self.cfg.single_log {
            let at = self.rng.random_range(0..=n);
            let mut body = Vec::new();
            self.body(depth + 1, n, &mut body, false);
            let level = self.level();
            let call = self.log_call(level);
            let inner = self.indent(depth + 1);
            let pos = at.min(body.len());
            let step = self.id();
            body.insert(pos, format!("{inner}{call}"));
            body.insert(pos, format!("{inner}step{step}();"));
            lines.extend(body);
        } else {
            self.body(depth + 1, n, &mut lines, true);
        }
        lines.push(format!("{ind}}}"));
        lines.join(self.newline)
    }

    /// A compilation unit with a logger field and `methods` methods.
    pub fn file(&mut self, methods: usize) -> String {
        self.indent_unit = if self.rng.random_bool(0.15) {
            "\t"
        } else {
            "    "
        };
        self.newline = if self.rng.random_bool(0.1) {
            "\r\n"
        } else {
            "\n"
        };
        let u = self.id();
        let nl = self.newline;
        let mut parts = vec![
            format!("package demo.gen{u};{nl}"),
            format!("import java.util.*;{nl}import org.apache.logging.log4j.Logger;{nl}"),
            format!("/** Generated class {u}. */{nl}public class Gen{u} {{"),
            format!(
                "    private static final Logger LOG = LogManager.getLogger(Gen{u}.class);{nl}"
            ),
        ];
        if self.rng.random_bool(0.2) {
            parts.push(format!("    private static final String SQL = \"\"\"{nl}        SELECT * FROM t{u}{nl}        WHERE id = ?;{nl}        \"\"\";{nl}"));
        }
        for _ in 0..methods {
            let m = self.method(1);
            parts.push(format!("{m}{nl}"));
        }
        parts.push(format!("}}{nl}"));
        parts.join(nl)
    }
}

/// `count` generated files as `(relative path, source)`.
pub fn fixture_files(seed: u64, count: usize) -> Vec<(String, String)> {
    let mut g = JavaSynth::new(seed, SynthConfig::default());
    (0..count)
        .map(|i| {
            let methods = g.rng.random_range(1..5);
            (format!("gen/Gen{i}.java"), g.file(methods))
        })
        .collect()
}

/// Extracts samples from freshly generated methods until `count` are
/// collected.
pub fn sample_corpus(seed: u64, count: usize, cfg: SynthConfig) -> Vec<Sample> {
    let mut g = JavaSynth::new(seed, cfg);
    let pattern = LoggerPattern::default();
    let mut out = Vec::with_capacity(count);
    let mut m = 0;
    while out.len() < count {
        let method = g.method(0);
        let (samples, _) = extract_all(
            &method,
            &pattern,
            &format!("synth{seed}/m{m}"),
            &SampleMeta::default(),
        )
        .expect("generated methods lex");
        out.extend(samples.into_iter().take(count - out.len()));
        m += 1;
    }
    out
}

/// Samples with several logging statements per method, varied layout and
/// a share of methods long enough to need splitting.
pub fn fixture_corpus(seed: u64, count: usize) -> Vec<Sample> {
    sample_corpus(
        seed,
        count,
        SynthConfig {
            max_statements: 90,
            ..SynthConfig::default()
        },
    )
}

/// One logging statement per method, each after a uniquely named call, so
/// every insertion context occurs once in the corpus.
pub fn memorization_corpus(seed: u64, count: usize) -> Vec<Sample> {
    sample_corpus(
        seed,
        count,
        SynthConfig {
            single_log: true,
            ..SynthConfig::default()
        },
    )
}

/// Method bodies from `fixture_files`, for tests that want whole methods.
pub fn fixture_methods(seed: u64, files: usize) -> Vec<String> {
    fixture_files(seed, files)
        .into_iter()
        .flat_map(|(_, src)| {
            let stream = tokenize(&src).expect("generated files lex");
            split_methods(&stream)
                .into_iter()
                .map(|r| src[r].to_string())
                .collect::<Vec<_>>()
        })
        .collect()
}
