use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use umemura::exec::Exec;
use umemura::families::{gen_umemura, gen_umemura_with, Orientation};
use umemura::lab::run_catalog;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn subset_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("gen_umemura_4_4_2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| gen_umemura_with(4, 4, 2, Orientation::Printed, exec))
        });
    }
    g.finish();
}

fn product(c: &mut Criterion) {
    let p = gen_umemura(3, 3, 1);
    let q = gen_umemura(2, 4, 0);
    let mut g = c.benchmark_group("poly_mul");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| p.mul_with(&q, exec)));
    }
    g.finish();
}

fn catalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog_budget_3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_catalog(3, 7, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, subset_sum, product, catalog);
criterion_main!(benches);
