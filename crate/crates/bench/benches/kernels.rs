use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use patchscope_core::grid::{assouad_estimate, auto_pairs, power_pairs};
use patchscope_core::numtheory::{find_3ap, gen_set, sieve_primes, Family};
use patchscope_core::patch::{best_patch_defect, contains_patch_exact, Strategy};
use patchscope_core::{hausdorff_distance, PointSet};

fn set(f: Family) -> PointSet {
    gen_set(&f).expect("family generates")
}

fn metric(c: &mut Criterion) {
    let a = set(Family::Cantor { depth: 9 });
    let b = set(Family::FullGrid { depth: 9, dim: 1 });
    c.bench_function("hausdorff/cantor9_vs_grid9", |bench| {
        bench.iter(|| hausdorff_distance(black_box(&a), black_box(&b)).unwrap())
    });
}

fn grid(c: &mut Criterion) {
    let cantor = set(Family::Cantor { depth: 10 });
    let pairs = power_pairs(3, 0, 10);
    c.bench_function("assouad/cantor10_triadic", |bench| {
        bench.iter(|| assouad_estimate(black_box(&cantor), &pairs).unwrap())
    });
    let plane = set(Family::FullGrid { depth: 6, dim: 2 });
    let pairs = auto_pairs(&plane, 12);
    c.bench_function("assouad/grid6_plane", |bench| {
        bench.iter(|| assouad_estimate(black_box(&plane), &pairs).unwrap())
    });
}

fn patches(c: &mut Criterion) {
    let primes = set(Family::Primes { n: 1000 });
    let mut group = c.benchmark_group("best_patch_defect/primes1000");
    for k in [3usize, 5, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |bench, &k| {
            bench.iter(|| best_patch_defect(&primes, k, Strategy::Anchored).unwrap())
        });
    }
    group.finish();

    let squares = set(Family::Squares { n: 40 });
    let mut slow = c.benchmark_group("best_patch_defect/squares40");
    slow.sample_size(10);
    slow.bench_function("k4", |bench| {
        bench.iter(|| best_patch_defect(black_box(&squares), 4, Strategy::Anchored).unwrap())
    });
    slow.finish();

    let squares = set(Family::Squares { n: 2000 });
    c.bench_function("contains_patch_exact/squares2000_k4", |bench| {
        bench.iter(|| contains_patch_exact(black_box(&squares), 4).unwrap())
    });
}

fn numtheory(c: &mut Criterion) {
    c.bench_function("sieve/1e6", |bench| bench.iter(|| sieve_primes(black_box(1_000_000)).unwrap()));
    let cubes = set(Family::EP { p: 3, n: 300 });
    c.bench_function("find_3ap/e3_300", |bench| bench.iter(|| find_3ap(black_box(&cubes)).unwrap()));
}

criterion_group!(benches, metric, grid, patches, numtheory);
criterion_main!(benches);
