//! Parallel vs sequential throughput of the counting kernels and the
//! Hooley correlation scan. The two modes share one deterministic
//! partitioning, so these benches double as a cheap determinism check.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chatelet::arith::IntPoly;
use chatelet::counting::{count_brute, count_fast, ChateletSurface, CountConfig};
use chatelet::par::ExecMode;
use chatelet::sievelab::hooley_average_report;

fn surface() -> ChateletSurface {
    ChateletSurface::new(1, IntPoly::new(vec![1, 0, 0, 0, 1])).unwrap()
}

fn bench_counting(c: &mut Criterion) {
    let s = surface();
    let mut group = c.benchmark_group("count");
    group.sample_size(10);
    for b in [200u64, 500] {
        for (name, mode) in [("par", ExecMode::Parallel), ("seq", ExecMode::Sequential)] {
            let cfg = CountConfig { mode, ..CountConfig::default() };
            group.bench_with_input(BenchmarkId::new(format!("brute_{name}"), b), &b, |bench, &b| {
                bench.iter(|| count_brute(&s, b, &cfg).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("fast_{name}"), b), &b, |bench, &b| {
                bench.iter(|| count_fast(&s, b, &cfg).unwrap())
            });
        }
    }
    // the two modes must agree bit for bit
    let par = CountConfig { mode: ExecMode::Parallel, ..CountConfig::default() };
    let seq = CountConfig { mode: ExecMode::Sequential, ..CountConfig::default() };
    assert_eq!(count_brute(&s, 300, &par).unwrap(), count_brute(&s, 300, &seq).unwrap());
    assert_eq!(count_fast(&s, 300, &par).unwrap(), count_fast(&s, 300, &seq).unwrap());
    group.finish();
}

fn bench_hooley(c: &mut Criterion) {
    let s = surface();
    let mut group = c.benchmark_group("hooley");
    group.sample_size(10);
    for (name, mode) in [("par", ExecMode::Parallel), ("seq", ExecMode::Sequential)] {
        group.bench_function(format!("avg_50k_{name}"), |bench| {
            bench.iter(|| hooley_average_report(&s, 50_000, &[50_000], mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_counting, bench_hooley);
criterion_main!(benches);
