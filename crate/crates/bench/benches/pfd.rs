use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hyperfactor::oracle::{brute_force_pfd_hypergraph, random_product_with_sizes, GeneratorConfig};
use hyperfactor::{pfd_graph, pfd_hypergraph, UndirectedGraph};
use hyperfactor_cli::bench::{instance, BenchConfig, Series};
use std::hint::black_box;

fn bounded_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfd_hypergraph/bounded-rank");
    group.sample_size(10);
    let cfg = BenchConfig { series: Series::BoundedRank, repeats: 1, min_log2: 8, max_log2: 13, r: 3, seed: 0 };
    for log2_n in cfg.min_log2..=cfg.max_log2 {
        let h = instance(&cfg, log2_n).unwrap();
        group.throughput(Throughput::Elements(h.m() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(h.n()), &h, |b, h| b.iter(|| pfd_hypergraph(black_box(h)).unwrap()));
    }
    group.finish();
}

fn hypercubes(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfd_graph/hypercube");
    for d in [6, 8, 10] {
        let g = UndirectedGraph::hypercube(d);
        group.throughput(Throughput::Elements(g.m() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(d), &g, |b, g| b.iter(|| pfd_graph(black_box(g)).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let cfg = GeneratorConfig::new(11, 2).with_rank(3);
    let (h, _) = random_product_with_sizes(&cfg, &[2, 4]).unwrap();
    c.bench_function("oracle/n=8", |b| b.iter(|| brute_force_pfd_hypergraph(black_box(&h)).unwrap()));
}

criterion_group!(benches, bounded_rank, hypercubes, oracle);
criterion_main!(benches);
