use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use serieseig::algebra::rational::{int, rat};
use serieseig::hankel::{hankel_eval, hankel_roots};
use serieseig::sequence::table_for;
use serieseig::{det_exact, Backend, HankelOptions, HankelSpec, Matrix, PotentialSpec, Precision};
use serieseig_bench::{near_ground, quartic_table};

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for j in [20, 40] {
        g.bench_with_input(BenchmarkId::new("quartic", j), &j, |b, &j| {
            b.iter(|| table_for(&PotentialSpec::quartic(), &int(1), 0, black_box(j)).unwrap())
        });
        let pot = PotentialSpec::rational(int(1), rat(1, 5), j).unwrap();
        g.bench_with_input(BenchmarkId::new("rational", j), &j, |b, &j| {
            b.iter(|| table_for(&pot, &rat(1, 2), 0, black_box(j)).unwrap())
        });
    }
    g.finish();
}

fn det(c: &mut Criterion) {
    let mut g = c.benchmark_group("det_exact");
    for n in [8, 16] {
        // Hilbert-like: dense rationals with growing denominators
        let m = Matrix::from_fn(n, |i, j| rat(1, (i + j + 1) as i64) + int((i * j % 7) as i64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| det_exact(black_box(m))));
    }
    g.finish();
}

fn hankel(c: &mut Criterion) {
    let mut g = c.benchmark_group("hankel_eval");
    g.sample_size(20);
    let e = near_ground();
    for dim in [10, 18] {
        let table = quartic_table(dim);
        let spec = HankelSpec::new(dim, 0).unwrap();
        g.bench_function(BenchmarkId::new("exact", dim), |b| {
            b.iter(|| hankel_eval(&table, spec, black_box(&e), Backend::Exact).unwrap())
        });
        g.bench_function(BenchmarkId::new("float", dim), |b| {
            b.iter(|| hankel_eval(&table, spec, black_box(&e), Backend::Float(Precision::default())).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("hankel_roots");
    g.sample_size(10);
    let table = quartic_table(8);
    let spec = HankelSpec::new(8, 0).unwrap();
    let opts = HankelOptions::default();
    g.bench_function("D8_window", |b| b.iter(|| hankel_roots(&table, spec, &rat(9, 10), &rat(6, 5), &opts).unwrap()));
    g.finish();
}

criterion_group!(benches, series, det, hankel);
criterion_main!(benches);
