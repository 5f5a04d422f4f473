use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qbruhat::cells::twist_general;
use qbruhat::factorize::{recover_params, upper_factorize, verify_double_ratios};
use qbruhat::gauss::ldu;
use qbruhat::quasidet::quasidet;
use qbruhat_bench::{cell_point, random_matrix};

fn quasideterminants(c: &mut Criterion) {
    let mut g = c.benchmark_group("quasidet");
    for n in [3, 4, 5] {
        let a = random_matrix(n, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| quasidet(black_box(a), 1, 1)));
    }
    g.finish();
}

fn gauss(c: &mut Criterion) {
    let mut g = c.benchmark_group("ldu");
    for n in [3, 4, 5] {
        let a = random_matrix(n, 10 + n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| ldu(black_box(a))));
    }
    g.finish();
    let a = random_matrix(4, 20);
    c.bench_function("upper_factorize/4", |b| b.iter(|| upper_factorize(black_box(&a))));
}

fn cells(c: &mut Criterion) {
    for n in [3, 4] {
        let (x, word) = cell_point(n, 30 + n as u64);
        let (u, v) = (word.u(), word.v());
        c.bench_function(&format!("twist/{n}"), |b| b.iter(|| twist_general(black_box(&x), &u, &v)));
        c.bench_function(&format!("recover/{n}"), |b| b.iter(|| recover_params(black_box(&x), &word)));
    }
    let x = random_matrix(3, 40);
    c.bench_function("double_ratios/3", |b| b.iter(|| verify_double_ratios(black_box(&x), false)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = quasideterminants, gauss, cells
}
criterion_main!(benches);
