use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use metacommute_bench::{large_order, seeded_units, small_order};
use metacommute_core::{
    canonical_vertex, export_dot, geodesic, module_hnf, sigma_perm, CensusModules, EichlerOrder,
    IdealLabel, Mat2,
};

fn bench_sigma_perm(c: &mut Criterion) {
    let order = large_order();
    let w = seeded_units(&order, 1, 1)[0];
    c.bench_function("sigma_perm p=13 n=3", |b| {
        b.iter(|| sigma_perm(black_box(&order), black_box(&w)).unwrap())
    });
}

fn bench_brute_sigma(c: &mut Criterion) {
    let order = large_order();
    let census = CensusModules::new(&order).unwrap();
    let w = seeded_units(&order, 1, 2)[0];
    c.bench_function("brute_sigma p=13 n=3", |b| {
        b.iter(|| {
            census
                .brute_sigma(black_box(&order), black_box(&w), IdealLabel::S1(5))
                .unwrap()
        })
    });
}

/// The eight spanning elements of P_w + O*p for one census ideal.
fn hnf_elements(order: &EichlerOrder, w: &Mat2) -> Vec<Mat2> {
    let g = order.generator(IdealLabel::S1(5)).unwrap();
    let gw = g * *w;
    let p = order.modulus().scalar(order.p() as i64);
    let mut elements: Vec<Mat2> = order.module_basis().iter().map(|b| *b * gw).collect();
    elements.extend(order.module_basis().iter().map(|b| b.scale(p)));
    elements
}

fn bench_module_hnf(c: &mut Criterion) {
    let order = large_order();
    let w = seeded_units(&order, 1, 3)[0];
    let elements = hnf_elements(&order, &w);
    c.bench_function("module_hnf 8 elements p=13 n=3", |b| {
        b.iter(|| module_hnf(black_box(&order), black_box(&elements)).unwrap())
    });
}

fn bench_geodesic(c: &mut Criterion) {
    let order = large_order();
    let m = order.modulus();
    let v1 = canonical_vertex(&Mat2::from_u64(m, [[m.p_pow(4), 7], [0, 13]])).unwrap();
    let v2 = canonical_vertex(&Mat2::from_u64(m, [[1, 9], [0, m.p_pow(5)]])).unwrap();
    c.bench_function("geodesic distance 10 p=13", |b| {
        b.iter(|| geodesic(m, black_box(&v1), black_box(&v2)).unwrap())
    });
}

fn bench_export_dot(c: &mut Criterion) {
    let order = EichlerOrder::new(3, 2).unwrap();
    let labels = order.labels();
    c.bench_function("export_dot radius 2 p=3 n=2", |b| {
        b.iter(|| export_dot(black_box(&order), 2, black_box(&labels)).unwrap())
    });
    // keep the small fixture exercised too
    let small = small_order();
    let small_labels = small.labels();
    c.bench_function("export_dot radius 2 p=3 n=1", |b| {
        b.iter(|| export_dot(black_box(&small), 2, black_box(&small_labels)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_sigma_perm,
    bench_brute_sigma,
    bench_module_hnf,
    bench_geodesic,
    bench_export_dot
);
criterion_main!(benches);
