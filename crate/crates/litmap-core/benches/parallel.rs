//! Criterion benchmarks for the data-parallel sections, comparing a
//! single-worker pool against the default pool. Built with
//! `--no-default-features` the same entry points run the sequential
//! fallback, so the two feature configurations can be compared run-to-run.

use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use litmap_core::citnet::bootstrap_modularity;
use litmap_core::interdisc::{semantic_distance_matrix, MembershipMatrix};
use litmap_core::keywords::{build_cooccurrence, relevance_scores, select_top_k};
use litmap_core::louvain::{Layer, Partition};
use litmap_core::semnet::{build_semantic_graph, sensitivity_sweep, FilterOrder, SemanticGraph};
use litmap_core::synth::planted_block_digraph;
use litmap_core::with_parallelism;

#[cfg(feature = "parallel")]
const MODE: &str = "parallel";
#[cfg(not(feature = "parallel"))]
const MODE: &str = "sequential";

fn bench_bootstrap(c: &mut Criterion) {
    let (graph, truth) = planted_block_digraph(4, 25, 0.3, 0.01, 42);
    let partition = Partition::from_labels(Layer::Citation, graph.ids().to_vec(), truth);
    let mut group = c.benchmark_group("bootstrap_modularity_100_reps");
    group.sample_size(10);
    group.bench_function(format!("{MODE}/one_worker"), |b| {
        b.iter(|| {
            with_parallelism(Some(1), || {
                bootstrap_modularity(&graph, &partition, 100, 10, 7).unwrap()
            })
        })
    });
    group.bench_function(format!("{MODE}/default_pool"), |b| {
        b.iter(|| bootstrap_modularity(&graph, &partition, 100, 10, 7).unwrap())
    });
    group.finish();
}

fn synthetic_semantic_graph() -> SemanticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let words: Vec<String> = (0..250).map(|i| format!("term{i:03}")).collect();
    let docs: Vec<BTreeMap<String, u32>> = (0..400)
        .map(|_| {
            let mut counts = BTreeMap::new();
            // Two loose topics plus noise.
            let base = if rng.random_range(0.0..1.0) < 0.5 { 0 } else { 125 };
            for _ in 0..25 {
                let w = base + rng.random_range(0..125);
                *counts.entry(words[w].clone()).or_insert(0u32) += 1;
            }
            counts
        })
        .collect();
    let matrix = build_cooccurrence(&docs, 2);
    let scores = relevance_scores(&matrix);
    let vocab = select_top_k(&matrix, &scores, 250, false);
    build_semantic_graph(&matrix, &vocab).unwrap()
}

fn bench_sweep(c: &mut Criterion) {
    let graph = synthetic_semantic_graph();
    let theta: Vec<u32> = (1..=4).collect();
    let kmax: Vec<usize> = vec![50, 100, 200];
    let mut group = c.benchmark_group("sensitivity_sweep_4x3");
    group.sample_size(10);
    group.bench_function(format!("{MODE}/one_worker"), |b| {
        b.iter(|| {
            with_parallelism(Some(1), || {
                sensitivity_sweep(&graph, &theta, &kmax, FilterOrder::HubsFirst, 1.0, 5)
            })
        })
    });
    group.bench_function(format!("{MODE}/default_pool"), |b| {
        b.iter(|| sensitivity_sweep(&graph, &theta, &kmax, FilterOrder::HubsFirst, 1.0, 5))
    });
    group.finish();
}

fn bench_distance_matrix(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let n = 600;
    let j = 12;
    let ids: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let raw: Vec<f64> = (0..j).map(|_| rng.random_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / total).collect()
        })
        .collect();
    let membership = MembershipMatrix::from_rows(ids, rows, j);
    let mut group = c.benchmark_group("semantic_distance_matrix_600x12");
    group.sample_size(20);
    group.bench_function(format!("{MODE}/one_worker"), |b| {
        b.iter(|| with_parallelism(Some(1), || semantic_distance_matrix(&membership)))
    });
    group.bench_function(format!("{MODE}/default_pool"), |b| {
        b.iter(|| semantic_distance_matrix(&membership))
    });
    group.finish();
}

criterion_group!(benches, bench_bootstrap, bench_sweep, bench_distance_matrix);
criterion_main!(benches);
