mod config;
mod error;

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use loggen_core::backend::{PositionScorer, StatementGenerator};
use loggen_core::chunker::plan_chunks;
use loggen_core::corpus::{
    corpus_stats, extract_dir, read_dataset, write_dataset, DatasetManifest, LoggerPattern,
    SourceInfo,
};
use loggen_core::eval::{ablate, evaluate};
use loggen_core::pipeline::{run, suggest};
use loggen_core::{tokenize, BaselineModel, HttpBackend, TokenStream};
use serde::Serialize;
use serde_json::{json, Value};

use config::{Overrides, ToolConfig};
use error::CliError;

const TABLE_POLICIES: &str =
    "truncate-discard,truncated-split,average-split-512,average-split-300,\
average-split-300-statement-1,average-split-300-statement-5,average-split-300-statement-10";

/// Logging statement insertion for Java methods.
#[derive(Parser)]
#[command(name = "loggen", version)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// JSON file with tool settings; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lex a Java source into tokens.
    Tokenize {
        /// Source file, or `-` for stdin.
        file: PathBuf,
    },
    /// Show how a method would be split into chunks.
    Split {
        file: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Insert one logging statement into a method.
    Run {
        #[arg(long)]
        method: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        beam: Option<usize>,
        /// Also write the edited method here.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Propose several statements over the most likely positions.
    Suggest {
        #[arg(long)]
        method: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        beam: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Fit the offline n-gram/retrieval backend on a dataset.
    TrainBaseline {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Build a dataset from a directory of Java files.
    ExtractSamples {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to `<out>.manifest.json`.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_name = "REGEX")]
        logger_pattern: Option<String>,
        #[arg(long)]
        repo: Option<String>,
        #[arg(long)]
        stars: Option<u64>,
        #[arg(long)]
        created_at: Option<String>,
    },
    /// Summarize a dataset.
    Stats { dataset: PathBuf },
    /// Evaluate a backend on a dataset.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        beam: Option<usize>,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Per-sample rows.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Treat whitespace runs inside string literals as one space.
        #[arg(long)]
        fold_literal_whitespace: bool,
    },
    /// Stage-1 accuracy per splitting policy, by input length.
    Ablate {
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        #[arg(long, value_delimiter = ',', default_value = TABLE_POLICIES)]
        policies: Vec<String>,
        #[arg(long = "L", value_name = "L")]
        max_input_len: Option<usize>,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Default)]
struct SplitArgs {
    #[arg(long)]
    policy: Option<String>,
    /// Maximum chunk core length.
    #[arg(long = "m", value_name = "M")]
    max_chunk_len: Option<usize>,
    /// Maximum model input length.
    #[arg(long = "L", value_name = "L")]
    max_input_len: Option<usize>,
    /// Context statements per side.
    #[arg(long = "k", value_name = "K")]
    context_statements: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct BackendArgs {
    /// `baseline:<model.json>` or `http://host:port`.
    #[arg(long)]
    backend: Option<String>,
}

impl SplitArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            policy: self.policy.clone(),
            max_chunk_len: self.max_chunk_len,
            max_input_len: self.max_input_len,
            context_statements: self.context_statements,
            ..Default::default()
        }
    }
}

enum Backend {
    Baseline(Box<BaselineModel>),
    Http(HttpBackend),
}

impl Backend {
    fn open(cfg: &ToolConfig) -> Result<Self, CliError> {
        let locator = cfg
            .backend
            .as_deref()
            .ok_or_else(|| CliError::new("config", "no backend given (use --backend)"))?;
        if let Some(path) = locator.strip_prefix("baseline:") {
            Ok(Backend::Baseline(Box::new(BaselineModel::load(
                Path::new(path),
            )?)))
        } else if locator.starts_with("http://") {
            let timeout = Duration::from_secs_f64(cfg.timeout_s.max(0.001));
            Ok(Backend::Http(HttpBackend::with_timeout(locator, timeout)))
        } else {
            Err(CliError::new(
                "config",
                format!("backend `{locator}` is neither baseline:<path> nor http://host:port"),
            ))
        }
    }

    fn scorer(&self) -> &dyn PositionScorer {
        match self {
            Backend::Baseline(m) => m.as_ref(),
            Backend::Http(h) => h,
        }
    }

    fn generator(&self) -> &dyn StatementGenerator {
        match self {
            Backend::Baseline(m) => m.as_ref(),
            Backend::Http(h) => h,
        }
    }
}

fn read_source(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn lex_file(path: &Path) -> Result<TokenStream, CliError> {
    Ok(tokenize(&read_source(path)?)?)
}

fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let base = ToolConfig::load(cli.config.as_deref())?;
    let json = cli.json;
    match cli.command {
        Command::Tokenize { file } => cmd_tokenize(&file, json),
        Command::Split { file, split } => {
            let cfg = base.apply(&split.overrides());
            cmd_split(&file, &cfg, json)
        }
        Command::Run {
            method,
            backend,
            split,
            beam,
            output,
        } => {
            let cfg = base.apply(&Overrides {
                backend: backend.backend,
                beam,
                ..split.overrides()
            });
            cmd_run(&method, &cfg, output.as_deref())
        }
        Command::Suggest {
            method,
            backend,
            split,
            beam,
            budget,
            threshold,
        } => {
            let cfg = base.apply(&Overrides {
                backend: backend.backend,
                beam,
                suggest_budget: budget,
                suggest_threshold: threshold,
                ..split.overrides()
            });
            cmd_suggest(&method, &cfg, json)
        }
        Command::TrainBaseline {
            corpus,
            out,
            window,
            alpha,
        } => {
            let cfg = base.apply(&Overrides {
                baseline_window: window,
                baseline_alpha: alpha,
                ..Default::default()
            });
            cmd_train(&corpus, &out, &cfg, json)
        }
        Command::ExtractSamples {
            src,
            out,
            manifest,
            jobs,
            logger_pattern,
            repo,
            stars,
            created_at,
        } => {
            let cfg = base.apply(&Overrides {
                logger_pattern,
                ..Default::default()
            });
            let info = SourceInfo {
                repo,
                stars,
                created_at,
                filters: None,
            };
            let manifest = manifest.unwrap_or_else(|| {
                let mut p = out.clone().into_os_string();
                p.push(".manifest.json");
                p.into()
            });
            cmd_extract(&src, &out, &manifest, jobs, &info, &cfg, json)
        }
        Command::Stats { dataset } => cmd_stats(&dataset, json),
        Command::Eval {
            dataset,
            backend,
            split,
            beam,
            report,
            csv,
            jobs,
            fold_literal_whitespace,
        } => {
            let cfg = base.apply(&Overrides {
                backend: backend.backend,
                beam,
                fold_literal_whitespace,
                ..split.overrides()
            });
            cmd_eval(
                &dataset,
                &cfg,
                report.as_deref(),
                csv.as_deref(),
                jobs,
                json,
            )
        }
        Command::Ablate {
            dataset,
            backend,
            policies,
            max_input_len,
            report,
        } => {
            let cfg = base.apply(&Overrides {
                backend: backend.backend,
                max_input_len,
                ..Default::default()
            });
            cmd_ablate(&dataset, &cfg, &policies, report.as_deref(), json)
        }
    }
}

fn cmd_tokenize(file: &Path, json: bool) -> Result<(), CliError> {
    let stream = lex_file(file)?;
    if json {
        return print_json(&stream.tokens());
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for t in stream.tokens() {
        writeln!(
            out,
            "{}\t{}..{}\t{:?}\t{}",
            t.index, t.span.start, t.span.end, t.kind, t.text
        )?;
    }
    Ok(out.flush()?)
}

fn cmd_split(file: &Path, cfg: &ToolConfig, json: bool) -> Result<(), CliError> {
    let split = cfg.split()?;
    let stream = lex_file(file)?;
    let plan = plan_chunks(&stream, &split)?;
    if json {
        return print_json(&json!({ "config": split, "plan": plan }));
    }
    println!(
        "{} tokens, policy {}, L={} m={} k={}: {} chunk(s)",
        plan.total_tokens,
        split.policy,
        split.max_input_len,
        split.max_chunk_len,
        split.context_statements,
        plan.chunks.len()
    );
    for c in &plan.chunks {
        println!(
            "  #{}: core {:?} ({} tokens), left {:?}, right {:?}, window {}",
            c.ordinal,
            c.core,
            c.core.len(),
            c.left_context,
            c.right_context,
            c.content_len()
        );
    }
    Ok(())
}

fn cmd_run(method: &Path, cfg: &ToolConfig, output: Option<&Path>) -> Result<(), CliError> {
    let pipeline = cfg.pipeline()?;
    let stream = lex_file(method)?;
    let backend = Backend::open(cfg)?;
    let r = run(&stream, backend.scorer(), backend.generator(), &pipeline)?;
    if let Some(path) = output {
        fs::write(path, &r.output_source).map_err(|e| CliError::io(path, e))?;
    }
    // Always JSON: this is the command's result format.
    print_json(&json!({
        "position": r.insertion_token_index,
        "probability": r.position.probability,
        "statement": r.inserted_statement.raw_text,
        "level": r.inserted_statement.level,
        "candidates": r.candidates,
        "timings": r.timings,
        "inserted_range": [r.inserted_range.start, r.inserted_range.end],
        "output": r.output_source,
    }))
}

fn cmd_suggest(method: &Path, cfg: &ToolConfig, json: bool) -> Result<(), CliError> {
    let pipeline = cfg.pipeline()?;
    let stream = lex_file(method)?;
    let backend = Backend::open(cfg)?;
    let set = suggest(&stream, backend.scorer(), backend.generator(), &pipeline)?;
    if json {
        return print_json(&set);
    }
    if set.fell_back {
        println!(
            "no position reached {}; using the most likely one",
            pipeline.suggest_threshold
        );
    }
    for s in &set.suggestions {
        let anchor = &stream.tokens()[s.token_index];
        println!(
            "after token {} `{}` (p={:.4}, rank {}.{}): {}",
            s.token_index,
            anchor.text,
            s.probability,
            s.position_rank + 1,
            s.beam_rank + 1,
            s.statement
        );
    }
    Ok(())
}

fn cmd_train(corpus: &Path, out: &Path, cfg: &ToolConfig, json: bool) -> Result<(), CliError> {
    let samples = read_dataset(corpus)?;
    let model = BaselineModel::train(&samples, cfg.baseline_window, cfg.baseline_alpha)?;
    model.save(out)?;
    let summary = json!({
        "model": out,
        "samples": samples.len(),
        "window": model.window(),
        "alpha": model.alpha(),
    });
    if json {
        return print_json(&summary);
    }
    println!(
        "trained on {} samples (W={}, alpha={}) -> {}",
        samples.len(),
        model.window(),
        model.alpha(),
        out.display()
    );
    Ok(())
}

fn cmd_extract(
    src: &Path,
    out: &Path,
    manifest_path: &Path,
    jobs: usize,
    info: &SourceInfo,
    cfg: &ToolConfig,
    json: bool,
) -> Result<(), CliError> {
    let pattern = LoggerPattern::new(&cfg.logger_pattern)?;
    let (samples, counts) = extract_dir(src, &pattern, info, jobs)?;
    write_dataset(out, &samples)?;
    let filters = info.filters.clone().unwrap_or_default();
    let manifest = DatasetManifest::new(filters, &pattern, counts, &samples)?;
    write_json_file(manifest_path, &manifest)?;
    if json {
        return print_json(&manifest);
    }
    println!(
        "{} samples from {} methods in {} files ({} statements rejected, {} files unlexable) -> {}",
        counts.samples,
        counts.methods,
        counts.files,
        counts.rejected,
        counts.unlexable_files,
        out.display()
    );
    Ok(())
}

fn cmd_stats(dataset: &Path, json: bool) -> Result<(), CliError> {
    let samples = read_dataset(dataset)?;
    let stats = corpus_stats(&samples)?;
    if json {
        return print_json(&stats);
    }
    println!("samples: {}", stats.count);
    println!("mean input tokens: {:.2}", stats.mean_input_tokens);
    println!("mean target tokens: {:.2}", stats.mean_target_tokens);
    Ok(())
}

fn cmd_eval(
    dataset: &Path,
    cfg: &ToolConfig,
    report_path: Option<&Path>,
    csv_path: Option<&Path>,
    jobs: usize,
    json: bool,
) -> Result<(), CliError> {
    let eval_cfg = cfg.eval()?;
    let samples = read_dataset(dataset)?;
    let backend = Backend::open(cfg)?;
    let mut report = evaluate(
        &samples,
        backend.scorer(),
        backend.generator(),
        &eval_cfg,
        jobs,
    )?;
    report.config = tool_config_value(cfg, jobs)?;
    if let Some(path) = report_path {
        write_json_file(path, &report)?;
    }
    if let Some(path) = csv_path {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        report
            .write_csv(BufWriter::new(file))
            .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    }
    if json {
        return print_json(&report);
    }
    let a = &report.accuracy;
    let t = &report.text;
    println!(
        "samples {} (evaluated {}, failed {})",
        report.counts.samples, report.counts.evaluated, report.counts.failed
    );
    println!(
        "accuracy  position {:.2}%  level {:.2}%  message {:.2}%  all-3 {:.2}%",
        a.position, a.level, a.message, a.all3
    );
    println!(
        "BLEU {:.2} (1-4: {:.2} {:.2} {:.2} {:.2})  ROUGE-1 {:.2}  ROUGE-2 {:.2}  ROUGE-L {:.2}",
        t.bleu, t.bleu_1, t.bleu_2, t.bleu_3, t.bleu_4, t.rouge_1, t.rouge_2, t.rouge_l
    );
    for (name, h) in [
        ("level distance", &report.level_distance),
        ("position distance", &report.position_distance),
    ] {
        let cells: Vec<String> = h
            .buckets
            .iter()
            .map(|b| format!("{} {:.2}%", b.label, b.percent))
            .collect();
        println!("{name}: {}", cells.join(", "));
    }
    println!(
        "time per sample (s)  total {:.4}  stage-1 {:.4}  stage-2 {:.4}",
        report.timing.total_s, report.timing.stage1_s, report.timing.stage2_s
    );
    Ok(())
}

fn cmd_ablate(
    dataset: &Path,
    cfg: &ToolConfig,
    policies: &[String],
    report_path: Option<&Path>,
    json: bool,
) -> Result<(), CliError> {
    let pipeline = cfg.pipeline()?;
    let samples = read_dataset(dataset)?;
    let backend = Backend::open(cfg)?;
    let mut report = ablate(&samples, backend.scorer(), &pipeline, policies)?;
    report.config = tool_config_value(cfg, 1)?;
    if let Some(path) = report_path {
        write_json_file(path, &report)?;
    }
    if json {
        return print_json(&report);
    }
    print!("{}", report.render_table());
    Ok(())
}

fn tool_config_value(cfg: &ToolConfig, jobs: usize) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(cfg)?;
    v["jobs"] = json!(jobs);
    Ok(v)
}
