use criterion::{criterion_group, criterion_main, Criterion};
use hk_core::oracle::{census_sweep, SweepRange};
use hk_core::{compare_images, enumerate_components, enumerate_wall_types, DeformationType, PolarizationNumerics};
use num_bigint::BigInt;
use std::hint::black_box;

fn census(c: &mut Criterion) {
    let dt = DeformationType::k3m(145).unwrap();
    let pn = PolarizationNumerics::new(&dt, 144, 12).unwrap();
    c.bench_function("enumerate_components k3m(145) n=144 γ=12", |b| {
        b.iter(|| enumerate_components(black_box(&dt), black_box(&pn)).unwrap())
    });

    let big = DeformationType::k3m(BigInt::from(2u32).pow(61) * 3 * 5 * 7 + 1).unwrap();
    let pn = PolarizationNumerics::new(&big, 105, 105).unwrap();
    c.bench_function("enumerate_components large m", |b| {
        b.iter(|| enumerate_components(black_box(&big), black_box(&pn)).unwrap())
    });

    let range = SweepRange::new(20, 20, 40, 1).unwrap();
    c.bench_function("census sweep 20x20", |b| b.iter(|| census_sweep(black_box(&range)).unwrap()));
}

fn walls(c: &mut Criterion) {
    let dt = DeformationType::k3m(201).unwrap();
    c.bench_function("enumerate_wall_types k3m(201)", |b| {
        b.iter(|| enumerate_wall_types(black_box(&dt)).unwrap())
    });

    let dt = DeformationType::k3m(145).unwrap();
    let pn = PolarizationNumerics::new(&dt, 144, 12).unwrap();
    c.bench_function("compare_images k3m(145)", |b| {
        b.iter(|| compare_images(black_box(&dt), black_box(&pn)).unwrap())
    });
}

criterion_group!(benches, census, walls);
criterion_main!(benches);
