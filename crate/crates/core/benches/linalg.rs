use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tpencil_core::field::{PrimeField, Rationals};
use tpencil_core::minors::principal_minors;
use tpencil_core::pencil::PencilInstance;

fn coefficients(n: usize) -> Vec<i64> {
    (0..=n as i64).map(|i| (i * 7 + 3) % 11 + 1).collect()
}

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("det_pencil");
    for n in [4, 8, 12] {
        let q = PencilInstance::from_i64(Rationals, &coefficients(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("rational", n), &q, |b, p| b.iter(|| p.det_pencil()));
        let f = PrimeField::new(101).unwrap();
        let g = PencilInstance::from_i64(f, &coefficients(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("gf101", n), &g, |b, p| b.iter(|| p.det_pencil()));
    }
    group.finish();
}

fn minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("principal_minors");
    for n in [4, 8, 12] {
        let q = PencilInstance::from_i64(Rationals, &coefficients(n)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, p| b.iter(|| principal_minors(p)));
    }
    group.finish();
}

criterion_group!(benches, determinants, minors);
criterion_main!(benches);
