use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relhartree_bench::{periodic_bump, radial_gaussian};
use relhartree_core::dynamics::{EvolutionParams, HartreeSystem};
use relhartree_core::scattering::correction_rates;
use relhartree_core::spectral::{forward_transform, inverse_transform};
use std::hint::black_box;

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("transform");
    for n in [1024usize, 4096] {
        let u = radial_gaussian(n, 200.0);
        let uh = forward_transform(&u).unwrap();
        group.bench_with_input(BenchmarkId::new("radial_forward", n), &u, |b, u| {
            b.iter(|| forward_transform(black_box(u)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("radial_inverse", n), &uh, |b, uh| {
            b.iter(|| inverse_transform(black_box(uh)).unwrap())
        });
    }
    for n in [32usize, 64] {
        let u = periodic_bump(n, 16.0);
        group.bench_with_input(BenchmarkId::new("periodic_forward", n), &u, |b, u| {
            b.iter(|| forward_transform(black_box(u)).unwrap())
        });
    }
    group.finish();
}

fn right_hand_side(c: &mut Criterion) {
    let mut group = c.benchmark_group("profile_rhs");
    for gamma in [1.0, 2.0] {
        let u = radial_gaussian(4096, 200.0);
        let fhat = forward_transform(&u).unwrap();
        let system = HartreeSystem::new(u.grid(), EvolutionParams { gamma, ..Default::default() }).unwrap();
        group.bench_function(BenchmarkId::new("radial_4096", gamma), |b| {
            b.iter(|| system.rhs(black_box(&fhat), 1.0).unwrap())
        });
        group.bench_function(BenchmarkId::new("rk4_radial_4096", gamma), |b| {
            b.iter(|| system.step_rk4(black_box(&fhat), 1.0, 0.01).unwrap())
        });
    }
    let u = periodic_bump(32, 16.0);
    let fhat = forward_transform(&u).unwrap();
    let system = HartreeSystem::new(u.grid(), EvolutionParams::default()).unwrap();
    group.bench_function("periodic_32", |b| b.iter(|| system.rhs(black_box(&fhat), 1.0).unwrap()));
    group.finish();
}

fn phase_rates(c: &mut Criterion) {
    let u = radial_gaussian(4096, 200.0);
    let fhat = forward_transform(&u).unwrap();
    c.bench_function("correction_rates/radial_4096", |b| {
        b.iter(|| correction_rates(black_box(&fhat)).unwrap())
    });
}

criterion_group!(benches, transforms, right_hand_side, phase_rates);
criterion_main!(benches);
