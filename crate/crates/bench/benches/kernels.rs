use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use conformal_core::algebra::axiom_sweep;
use conformal_core::classify::{stage_solve, DegreeBounds};
use conformal_core::cohomology::{theorem32, vir_h2};
use conformal_core::{zoo, MultiPoly, Scalar, Var};

fn poly_mul(c: &mut Criterion) {
    let l = MultiPoly::var(Var::L);
    let d = MultiPoly::var(Var::D);
    let p = (&l + &d).pow(12);
    let q = (&l - &d * &MultiPoly::int(3)).pow(9);
    c.bench_function("poly_mul_deg12x9", |b| b.iter(|| black_box(&p) * black_box(&q)));
}

fn sweeps(c: &mut Criterion) {
    let g = zoo::gc1(4);
    c.bench_function("jacobi_sweep_gc1_4", |b| b.iter(|| axiom_sweep(black_box(&g))));
    c.bench_function("vir_h2_delta1_d10", |b| b.iter(|| vir_h2(&Scalar::int(1), &Scalar::zero(), 10).unwrap()));
    c.bench_function("semidirect_h2_a1_b0_d10", |b| b.iter(|| theorem32(&Scalar::int(1), &Scalar::zero(), 10).unwrap()));
}

fn staged(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    g.bench_function("stage_solve", |b| b.iter(|| stage_solve(&DegreeBounds::default()).unwrap()));
    g.finish();
}

criterion_group!(benches, poly_mul, sweeps, staged);
criterion_main!(benches);
