use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use loggen_core::chunker::{plan_texts, Policy, SplitConfig};
use loggen_core::eval::{bleu, rouge};
use loggen_core::pipeline::{run, PipelineConfig};
use loggen_core::synth::{fixture_corpus, fixture_files};
use loggen_core::{tokenize, BaselineModel};

fn lexer(c: &mut Criterion) {
    let files = fixture_files(1, 50);
    let bytes: usize = files.iter().map(|(_, s)| s.len()).sum();
    let mut g = c.benchmark_group("lexer");
    g.throughput(Throughput::Bytes(bytes as u64));
    g.bench_function("tokenize_50_files", |b| {
        b.iter(|| {
            for (_, src) in &files {
                black_box(tokenize(src).unwrap());
            }
        })
    });
    g.finish();
}

fn chunker(c: &mut Criterion) {
    let texts: Vec<&str> = (0..4096)
        .map(|i| if i % 7 == 6 { ";" } else { "x" })
        .collect();
    let mut g = c.benchmark_group("chunker");
    for policy in [
        Policy::TruncateSplit,
        Policy::AverageSplit,
        Policy::AverageSplitStatement,
    ] {
        let cfg = SplitConfig {
            policy,
            ..SplitConfig::default()
        };
        g.bench_with_input(
            BenchmarkId::new("plan_4096", policy.as_str()),
            &cfg,
            |b, cfg| b.iter(|| black_box(plan_texts(&texts, cfg).unwrap())),
        );
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let corpus = fixture_corpus(5, 100);
    let model = BaselineModel::train(&corpus, 4, 1.0).unwrap();
    let streams: Vec<_> = corpus.iter().map(|s| s.validate().unwrap()).collect();
    let cfg = PipelineConfig::default();
    c.bench_function("pipeline/baseline_run_100", |b| {
        b.iter(|| {
            for s in &streams {
                black_box(run(s, &model, &model, &cfg).unwrap());
            }
        })
    });
}

fn metrics(c: &mut Criterion) {
    let h: Vec<String> = (0..40).map(|i| format!("w{}", i % 13)).collect();
    let r: Vec<String> = (0..40).map(|i| format!("w{}", (i * 3) % 17)).collect();
    c.bench_function("metrics/bleu_rouge_40", |b| {
        b.iter(|| {
            black_box(bleu(&h, &r).unwrap());
            black_box(rouge(&h, &r).unwrap());
        })
    });
}

criterion_group!(benches, lexer, chunker, pipeline, metrics);
criterion_main!(benches);
