use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fibrep_core::exactla::{rref, Mat, Scalar};
use fibrep_core::fibrep::{binomial_plan, recursion_iterates};
use fibrep_core::spectral::{eigh, CMat};
use fibrep_core::{construct, ExtensionPolicy, RandomKind, SequenceWindow};

fn rational_matrix(n: usize, seed: i64) -> Mat {
    Mat::from_rows(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        Scalar::ratio(
                            (i as i64 * 7 + j as i64 * 3 + seed) % 11 - 5,
                            1 + (i + j) as i64 % 3,
                        )
                    })
                    .collect()
            })
            .collect(),
    )
}

fn bench_rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [4, 8, 12] {
        let m = rational_matrix(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| rref(black_box(m)))
        });
    }
    g.finish();
}

fn bench_construct(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    for n in [4, 8, 10] {
        let w = SequenceWindow::random(n + 2, n, 3, RandomKind::Dependent).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| {
            b.iter(|| construct(black_box(w), &ExtensionPolicy::HalfF3).unwrap())
        });
    }
    g.finish();
}

fn bench_eigh(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigh");
    for n in [8, 32, 64] {
        let m = CMat::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 2.0.into(),
            1 => 1.0.into(),
            _ => 0.0.into(),
        });
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| eigh(black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn bench_closed_form(c: &mut Criterion) {
    let t = rational_matrix(4, 2);
    let w = SequenceWindow::random(2, 4, 5, RandomKind::Independent).unwrap();
    let (f1, f2) = (w.f(1).clone(), w.f(2).clone());
    let mut g = c.benchmark_group("closed_form_n16");
    let plan = binomial_plan(16).unwrap();
    g.bench_function("plan", |b| {
        b.iter(|| plan.evaluate(black_box(&t), &f1, &f2))
    });
    g.bench_function("recursion", |b| {
        b.iter(|| recursion_iterates(black_box(&t), &f1, &f2, 16).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_rref,
    bench_construct,
    bench_eigh,
    bench_closed_form
);
criterion_main!(benches);
