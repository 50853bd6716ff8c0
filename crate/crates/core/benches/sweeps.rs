use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use normplane::bisectors::{compare_bisectors_with, sample_ray_pairs};
use normplane::tangency::equal_tangent_deviation_with;
use normplane::{Exec, PlacedBody, UnitBall, Vec2};
use std::hint::black_box;

fn bisector_sweep(c: &mut Criterion) {
    let m = UnitBall::lp(4.0).unwrap();
    let pairs = sample_ray_pairs(64, 0, 0.05);
    let mut group = c.benchmark_group("compare_bisectors");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| compare_bisectors_with(black_box(&m), black_box(&pairs), e))
        });
    }
    group.finish();
}

fn tangent_sweep(c: &mut Criterion) {
    let m = UnitBall::lp(4.0).unwrap();
    let k = PlacedBody::new(m.clone(), Vec2::ZERO, 1.0).unwrap();
    let mut group = c.benchmark_group("equal_tangent_deviation");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| equal_tangent_deviation_with(&k, &m, 200, (1.5, 4.0), 0, e).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bisector_sweep, tangent_sweep);
criterion_main!(benches);
