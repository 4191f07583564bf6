use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rfree_core::jordan::partial_sum_bernoulli_with;
use rfree_core::lattice::{count_fast_with, Counter};
use rfree_core::omega::{error_scan_with, scan_points};
use rfree_core::{parse_tolerance, CountParams, Execution, MobiusTable, TotientParams};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn count(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_fast");
    for (r, k, x) in [(1u32, 3u32, 1_000_000u64), (2, 3, 1_000_000_000_000)] {
        let p = CountParams::new(r, k, x).unwrap();
        let table = MobiusTable::new(p.sieve_bound()).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("r{r}k{k}x{x}")),
                &p,
                |b, &p| b.iter(|| count_fast_with(p, &table, exec).unwrap()),
            );
        }
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let tol = parse_tolerance("1e-30").unwrap();
    let counter = Counter::new(2, 2, 11_000, &tol).unwrap();
    let points = scan_points(10_000, 11_000, 1).unwrap();
    let mut group = c.benchmark_group("error_scan_r2k2");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| error_scan_with(&counter, &points, exec).unwrap())
        });
    }
    group.finish();
}

fn partial_sum(c: &mut Criterion) {
    let x = 1_000_000u64;
    let p = TotientParams::new(1, 3).unwrap();
    let table = MobiusTable::new(x).unwrap();
    let mut group = c.benchmark_group("partial_sum_bernoulli_r1k3");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| partial_sum_bernoulli_with(x, p, &table, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, count, scan, partial_sum);
criterion_main!(benches);
