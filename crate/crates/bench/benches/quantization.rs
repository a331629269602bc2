//! Benchmarks of the kernels the verification sweeps spend their time in:
//! exact curve-operator algebra, the star product, theta-grid construction
//! and the quadrature inner product, and one full equivalence case.

use criterion::{criterion_group, criterion_main, Criterion};
use moduli_core::qgroup::{cosine_operator, verify_product_to_sum};
use moduli_core::star::{FormalRing, TrigPoly};
use moduli_core::theta::{Integrand, ThetaGrid, ThetaSpec};
use moduli_core::weyl::{compare_with_qgroup_on, operator_grid};
use std::hint::black_box;

fn bench_exact_operators(c: &mut Criterion) {
    c.bench_function("cosine_operator r=8 (3,2)", |b| {
        b.iter(|| cosine_operator(black_box(3), black_box(2), black_box(8)))
    });
    c.bench_function("product_to_sum r=6", |b| {
        b.iter(|| verify_product_to_sum(black_box(2), black_box(-1), black_box(3), black_box(1), 6))
    });
}

fn bench_star_product(c: &mut Criterion) {
    let ring = FormalRing { trunc: 8 };
    let f = TrigPoly::from_int_terms(ring, &[((1, 0), 2), ((2, -1), 1), ((0, 3), -4)]);
    let g = TrigPoly::from_int_terms(ring, &[((0, 1), 1), ((3, 2), -2), ((1, 1), 5)]);
    c.bench_function("star formal trunc=8, 3x3 terms", |b| {
        b.iter(|| black_box(&f).star(black_box(&g)))
    });
}

fn bench_quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadrature");
    group.sample_size(20);

    let spec = ThetaSpec::for_level(10);
    group.bench_function("theta_grid_build N=10", |b| {
        let labels: Vec<i64> = (0..10).collect();
        b.iter(|| ThetaGrid::build(black_box(&spec), &labels, &[]))
    });

    let labels: Vec<i64> = (0..10).collect();
    let grid = ThetaGrid::build(&spec, &labels, &[]);
    group.bench_function("inner_product N=10", |b| {
        b.iter(|| grid.inner_product_theta(black_box(Integrand::Fourier { p: 2, q: 1 }), 1, 3))
    });

    let op_grid = operator_grid(&spec);
    group.bench_function("equivalence_case r=5 (2,3)", |b| {
        b.iter(|| compare_with_qgroup_on(black_box(&op_grid), 2, 3, 1e-8))
    });
    group.finish();
}

criterion_group!(exact, bench_exact_operators, bench_star_product);
criterion_group!(quadrature, bench_quadrature);
criterion_main!(exact, quadrature);
