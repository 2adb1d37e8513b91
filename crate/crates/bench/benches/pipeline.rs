use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use growth_core::affineweyl::AffineTable;
use growth_core::conecount::f_q;
use growth_core::finiteweyl::GroupTable;
use growth_core::{AffinePipeline, RootSystem};

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn finite_enumeration(c: &mut Criterion) {
    let f4 = rs("F4");
    c.bench_function("enumerate F4", |b| {
        b.iter(|| GroupTable::enumerate(black_box(&f4), f4.full()).unwrap().len())
    });
}

fn affine_bfs(c: &mut Criterion) {
    let a2 = rs("A2");
    c.bench_function("affine A2 ball L=20", |b| {
        b.iter(|| AffineTable::enumerate(black_box(&a2), 20).unwrap().len())
    });
}

fn matrix_m(c: &mut Criterion) {
    let mut g = c.benchmark_group("M_S");
    g.sample_size(10);
    g.bench_function("B3", |b| {
        b.iter(|| {
            let p = AffinePipeline::new(rs("B3")).unwrap();
            p.matrix_m().rows().len()
        })
    });
    g.finish();
}

fn cone_series(c: &mut Criterion) {
    let a3 = rs("A3");
    c.bench_function("f_Q A3 all Q", |b| {
        b.iter(|| a3.full().subsets().map(|q| f_q(black_box(&a3), q)).count())
    });
}

criterion_group!(benches, finite_enumeration, affine_bfs, matrix_m, cone_series);
criterion_main!(benches);
