use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stokes_core::integrals::default_tol;
use stokes_core::*;

fn sup_norm_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid_sup_sq_oracle");
    group.sample_size(10);
    let x0 = Mode::x0(2, 3).unwrap();
    let v = Mode::v(1, 2, 1).unwrap();
    let e = Direction::normalized(1.0, -2.0, -2.0).unwrap();
    for n in [100, 400] {
        let grid = GridSpec::new(n, false).unwrap();
        group.bench_with_input(BenchmarkId::new("X0(2,3)", n), &grid, |b, g| {
            b.iter(|| grid_sup_sq_oracle(black_box(&x0), None, g))
        });
        group.bench_with_input(BenchmarkId::new("V(1,2,1) directional", n), &grid, |b, g| {
            b.iter(|| grid_sup_sq_oracle(black_box(&v), Some(&e), g))
        });
    }
    let w = Mode::w(1, 1, 1).unwrap();
    for n in [40, 120] {
        let grid = GridSpec::new(n, false).unwrap();
        group.bench_with_input(BenchmarkId::new("W(1,1,1) directional", n), &grid, |b, g| {
            b.iter(|| grid_sup_sq_oracle(black_box(&w), Some(&e), g))
        });
    }
    group.finish();
}

fn integrals(c: &mut Criterion) {
    let mut group = c.benchmark_group("quad_integral");
    group.sample_size(10);
    let cases = [
        IntegralQuery::new(IntegralKind::Angular, 0.0, 0.6, 0.8, 1.0).unwrap(),
        IntegralQuery::new(IntegralKind::I1, 0.0, 0.6, 0.8, 1.0).unwrap(),
        IntegralQuery::new(IntegralKind::I2, 0.0, 0.6, 0.8, 1.0).unwrap(),
        IntegralQuery::new(IntegralKind::I3, 0.48, 0.6, 0.64, 1.0).unwrap(),
    ];
    for q in cases {
        let tol = default_tol(q.kind());
        group.bench_function(q.kind().name(), |b| {
            b.iter(|| quad_integral(black_box(&q), &tol).unwrap())
        });
    }
    group.finish();
}

fn sphere_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_max_oracle");
    group.sample_size(10);
    for (grid, rounds) in [(201, 2), (1001, 4)] {
        let spec = SphereSearchSpec::new(grid, rounds).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{grid}x{rounds}")), &spec, |b, s| {
            b.iter(|| gamma_max_oracle(black_box(s)))
        });
    }
    group.finish();
}

fn gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_matrix");
    group.sample_size(10);
    for cutoff in [6.0, 20.0] {
        let modes: Vec<Mode> = enumerate_modes(cutoff).into_iter().map(|(m, _)| m).collect();
        let spec = QuadSpec::trapezoid_for(4);
        group.bench_with_input(BenchmarkId::new("trapezoid", modes.len()), &modes, |b, m| {
            b.iter(|| gram_matrix(black_box(m), &spec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sup_norm_oracles, integrals, sphere_search, gram);
criterion_main!(benches);
