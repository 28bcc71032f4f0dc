//! Benchmarks the data-parallel corpus classification against the
//! sequential fallback. Build with default features for a meaningful
//! comparison (`parallel` enables rayon in `classify_corpus`); with
//! `--no-default-features` both paths run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use wlc_core::canon::{enumerate_corpus, sample_corpus};
use wlc_core::verify::{classify_corpus, classify_corpus_seq};
use wlc_core::Limits;

fn bench_two_player_corpus(c: &mut Criterion) {
    let limits = Limits::default();
    let corpus = enumerate_corpus(2, 3, &limits).unwrap();
    let mut group = c.benchmark_group("classify_2p_max3");
    group.bench_function("parallel", |b| {
        b.iter(|| classify_corpus(black_box(&corpus), &limits).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| classify_corpus_seq(black_box(&corpus), &limits).unwrap())
    });
    group.finish();
}

fn bench_three_player_sample(c: &mut Criterion) {
    let limits = Limits::default();
    let corpus = sample_corpus(3, 3, 150, 99, &limits).unwrap();
    let mut group = c.benchmark_group("classify_3p_sample150");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| classify_corpus(black_box(&corpus), &limits).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| classify_corpus_seq(black_box(&corpus), &limits).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_two_player_corpus, bench_three_player_sample);
criterion_main!(benches);
