use std::hint::black_box;

use convexify::convexify::{convexify_with, Options};
use convexify::{fixtures, ConvexPoly, EngineKind, Point, Scene};
use convexify_bench::{clustered, hull_pair};
use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("convexify");
    group.sample_size(10);
    for n in [10_000, 20_000, 40_000] {
        let polys = clustered(n, 0);
        group.bench_with_input(BenchmarkId::new("clustered", n), &polys, |b, polys| {
            b.iter(|| convexify_with(black_box(polys), Options::default()).unwrap())
        });
    }
    let stairs = fixtures::staircase(100);
    group.bench_function("staircase_100", |b| b.iter(|| convexify_with(black_box(&stairs), Options::default()).unwrap()));
    group.finish();
}

fn hull_merge(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull_merge");
    for k in [16, 64, 256] {
        let (a, b) = hull_pair(k);
        // Merging consumes both operands, so they are rebuilt outside the timing.
        group.bench_function(BenchmarkId::new("merge", k), |bench| {
            bench.iter_batched(
                || (ConvexPoly::build(&a, 0).unwrap(), ConvexPoly::build(&b, 1).unwrap()),
                |(pa, pb)| pa.merge(pb).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn ray_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("ray_shooting");
    group.sample_size(10);
    let polys = clustered(10_000, 1);
    let queries: Vec<(Point, Point)> =
        polys.iter().take(200).map(|p| (p.vertices()[0].clone(), p.vertices()[p.len() / 2].clone())).collect();
    for kind in [EngineKind::Naive, EngineKind::Grid] {
        group.bench_function(kind.to_string(), |b| {
            b.iter(|| {
                let mut scene = Scene::new(&polys, kind);
                for (i, (from, to)) in queries.iter().enumerate() {
                    black_box(scene.shoot(from, to, i).ok());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, pipeline, hull_merge, ray_engines);
criterion_main!(benches);
