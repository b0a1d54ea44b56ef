use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xgraph_bench::{edge_into_path, figure_c};
use xgraph_core::lifting::has_hep;
use xgraph_core::verifier::figure_instance;
use xgraph_core::{
    are_homotopic, find_lift, identity, product, pushout, stiff_core, Graph, GraphMap, LiftingSquare,
    SizeGuard,
};

fn bench_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("product");
    for n in [3, 5, 8] {
        let g = Graph::cycle(n);
        let h = Graph::interval(n);
        group.bench_with_input(BenchmarkId::new("cycle_x_interval", n), &n, |b, _| {
            b.iter(|| product(black_box(&g), black_box(&h)))
        });
    }
    group.finish();
}

fn bench_pushout(c: &mut Criterion) {
    let fig = figure_instance();
    c.bench_function("pushout/figure", |b| {
        b.iter(|| pushout(black_box(&fig.fold), black_box(&fig.inclusion)).unwrap())
    });
}

fn bench_stiff_core(c: &mut Criterion) {
    let mut group = c.benchmark_group("stiff_core");
    group.bench_function("figure_c", |b| {
        let g = figure_c();
        b.iter(|| stiff_core(black_box(&g)))
    });
    for n in [4, 8, 16] {
        let g = Graph::looped_tail(n);
        group.bench_with_input(BenchmarkId::new("looped_tail", n), &n, |b, _| {
            b.iter(|| stiff_core(black_box(&g)))
        });
    }
    group.finish();
}

fn bench_are_homotopic(c: &mut Criterion) {
    let guard = SizeGuard::unbounded();
    let mut group = c.benchmark_group("are_homotopic");
    for n in [2, 4, 6] {
        // The two endpoint inclusions of a point into Iₙ.
        let point = Arc::new(Graph::looped_vertex());
        let interval = Arc::new(Graph::interval(n));
        let start = GraphMap::from_images(point.clone(), interval.clone(), vec![0]).unwrap();
        let last = interval.index_of(&n.to_string()).unwrap();
        let end = GraphMap::from_images(point, interval, vec![last]).unwrap();
        group.bench_with_input(BenchmarkId::new("interval_endpoints", n), &n, |b, _| {
            b.iter(|| are_homotopic(black_box(&start), black_box(&end), None, &guard).unwrap())
        });
    }
    group.finish();
}

fn bench_find_lift(c: &mut Criterion) {
    let guard = SizeGuard::unbounded();
    let i = edge_into_path();
    let k2 = Arc::new(Graph::complete(2));
    let top = identity(k2.clone());
    let bottom = GraphMap::new(Graph::path(3), Graph::complete(2), [("1", "1"), ("2", "2"), ("3", "1")]).unwrap();
    let square = LiftingSquare::new(i, top, bottom, identity(k2)).unwrap();
    c.bench_function("find_lift/edge_into_path", |b| {
        b.iter(|| find_lift(black_box(&square), &guard).unwrap())
    });
}

fn bench_has_hep(c: &mut Criterion) {
    let guard = SizeGuard::unbounded();
    let i = edge_into_path();
    let mut group = c.benchmark_group("has_hep");
    for n in [1, 2, 3] {
        group.bench_with_input(BenchmarkId::new("edge_into_path", n), &n, |b, &n| {
            b.iter(|| has_hep(black_box(&i), n, &guard).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_product,
    bench_pushout,
    bench_stiff_core,
    bench_are_homotopic,
    bench_find_lift,
    bench_has_hep
);
criterion_main!(benches);
