use std::sync::Arc;

use aulayout::graph::named::snake6;
use aulayout::{all_4completions, brute_force_au, find_rels, rel_lattice, DEFAULT_PAIR_CAP};
use aulayout_bench::admissible;
use criterion::{criterion_group, criterion_main, Criterion};

fn rel_search(c: &mut Criterion) {
    let exts = all_4completions(&snake6()).unwrap();
    c.bench_function("find_rels/snake6_all_completions", |b| {
        b.iter(|| exts.iter().map(|e| find_rels(e, None).map_or(0, |r| r.len())).sum::<usize>())
    });
    let richest = exts
        .into_iter()
        .max_by_key(|e| find_rels(e, None).map_or(0, |r| r.len()))
        .map(Arc::new)
        .unwrap();
    c.bench_function("rel_lattice/snake6_richest", |b| b.iter(|| rel_lattice(&richest, 1_000).unwrap()));
}

fn brute_force(c: &mut Criterion) {
    let graphs = admissible(7);
    let mut group = c.benchmark_group("brute_force_au");
    group.sample_size(10);
    group.bench_function("admissible_n7", |b| {
        b.iter(|| graphs.iter().map(|g| brute_force_au(g, DEFAULT_PAIR_CAP).unwrap().witnesses.len()).sum::<usize>())
    });
    group.finish();
}

criterion_group!(benches, rel_search, brute_force);
criterion_main!(benches);
