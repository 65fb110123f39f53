use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pellcf_core::{enumerate_ab, expand_sqrt, oracle, solve_ab, solve_pell, BigUint};

fn expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_sqrt");
    for d in [21u64, 414, 991, 1_000_003] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| expand_sqrt(black_box(d)).unwrap())
        });
    }
    // 10^40 + 1 has a 1-term period but 134-bit quotients
    let big = BigUint::from(10u32).pow(40) + 1u32;
    group.bench_function("1e40+1", |b| b.iter(|| expand_sqrt(black_box(big.clone())).unwrap()));
    group.finish();
}

fn pell(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_pell");
    // 991 and 4729494 have famously large fundamental solutions
    for d in [21u64, 61, 991, 4_729_494] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| solve_pell(black_box(d)).unwrap().0)
        });
    }
    group.finish();
}

fn ab(c: &mut Criterion) {
    c.bench_function("solve_ab 18 23 x3", |b| {
        b.iter(|| {
            let v = solve_ab(black_box(18u64), black_box(23u64)).unwrap();
            enumerate_ab(&v, 3).unwrap()
        })
    });
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("pell_general 21 4 1e4", |b| {
        b.iter(|| oracle::oracle_pell_general(21, 4, black_box(10_000)).unwrap())
    });
    group.bench_function("ab 18 23 1e5", |b| {
        b.iter(|| oracle::oracle_ab(18, 23, black_box(100_000)).unwrap())
    });
    group.bench_function("thue 6 5 3 1e3", |b| {
        b.iter(|| oracle::oracle_thue(6, 5, 3, black_box(1000)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, expansion, pell, ab, oracles);
criterion_main!(benches);
