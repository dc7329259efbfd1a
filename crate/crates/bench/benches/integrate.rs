use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dyadic::region::{build_polynomials, certify_signs, RegionParams};
use dyadic::{integrate, Closure, IntegratorConfig};
use dyadic_bench::{geometric_data, model};

fn vector_field(c: &mut Criterion) {
    let mut group = c.benchmark_group("vector_field");
    for n in [10, 20, 40] {
        let p = model(1.0, n, Closure::Mirror);
        let x = geometric_data(n);
        let mut out = vec![0.0; n];
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| p.rhs_into(black_box(&x), &mut out))
        });
    }
    group.finish();
}

fn integration(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrate");
    group.sample_size(10);
    for n in [5, 10, 15] {
        let p = model(1.0, n, Closure::Mirror);
        let x = geometric_data(n);
        let erk = IntegratorConfig::default();
        let stab = IntegratorConfig::default().stabilized();
        group.bench_with_input(BenchmarkId::new("erk45", n), &n, |b, _| {
            b.iter(|| integrate(&p, &erk, black_box(&x), 1.0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("erk45_stabilized", n), &n, |b, _| {
            b.iter(|| integrate(&p, &stab, black_box(&x), 1.0).unwrap())
        });
    }
    group.finish();
}

fn certification(c: &mut Criterion) {
    let cp = build_polynomials(&RegionParams::default());
    c.bench_function("certify_signs", |b| b.iter(|| certify_signs(black_box(&cp))));
}

criterion_group!(benches, vector_field, integration, certification);
criterion_main!(benches);
