use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mpc_core::complexity::{SearchConfig, WindowSearch};
use mpc_core::generators::{example_6_3, fibonacci, tribonacci};
use mpc_core::par::Parallelism;

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    let cases = [("fibonacci", fibonacci(), 5), ("tribonacci", tribonacci(), 4), ("example-6.3", example_6_3(), 4)];
    for (name, source, k) in cases {
        for (mode, parallelism) in [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Auto)] {
            let config = SearchConfig::new(60, 20_000).with_parallelism(parallelism);
            let search = WindowSearch::new(&source, &config).unwrap();
            group.bench_with_input(BenchmarkId::new(mode, format!("{name}/k={k}")), &k, |b, &k| {
                b.iter(|| search.certify(k).unwrap().value)
            });
        }
    }
    group.finish();
}

fn table_build(c: &mut Criterion) {
    let source = fibonacci();
    c.bench_function("factor table H=60 scan=20000", |b| {
        b.iter(|| WindowSearch::new(&source, &SearchConfig::new(60, 20_000)).unwrap().table().rows())
    });
}

criterion_group!(benches, exhaustive, table_build);
criterion_main!(benches);
