use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use euler_periods::eulerfun::{gamma_const, zeta, GammaMethod};
use euler_periods::feynper::{kirchhoff_polynomial, period_mc, MultiGraph};
use euler_periods::mzv::{multiphi, mzv, AltIndex, MzvIndex};
use euler_periods::symbolic::{coact, parse_expr};

fn numeric(c: &mut Criterion) {
    c.bench_function("zeta(3) at 50 digits", |b| {
        b.iter(|| zeta(black_box(3.0), 50).unwrap())
    });
    c.bench_function("gamma, Euler-Maclaurin, 30 digits", |b| {
        b.iter(|| gamma_const(black_box(30), GammaMethod::EulerMaclaurin).unwrap())
    });
    let idx: MzvIndex = "3,5".parse().unwrap();
    c.bench_function("mzv(3,5) at 30 digits", |b| {
        b.iter(|| mzv(black_box(&idx), 30).unwrap())
    });
    let alt = AltIndex::new(2, 3).unwrap();
    c.bench_function("multiphi(2,3) at 20 digits", |b| {
        b.iter(|| multiphi(black_box(&alt), 20).unwrap())
    });
}

fn symbolic(c: &mut Criterion) {
    let e = parse_expr("Li_m(5; z)*zeta_m(3) + zeta_m(3)^2*zeta_m(2)").unwrap();
    c.bench_function("coaction, weight 8", |b| b.iter(|| coact(black_box(&e))));
}

fn graphs(c: &mut Criterion) {
    let w5 = MultiGraph::wheel(5);
    c.bench_function("Kirchhoff polynomial of W5", |b| {
        b.iter(|| kirchhoff_polynomial(black_box(&w5)).unwrap())
    });
    let k4 = MultiGraph::complete4();
    let mut g = c.benchmark_group("period_mc");
    g.sample_size(10);
    g.bench_function("K4, 1e5 samples", |b| {
        b.iter(|| period_mc(black_box(&k4), 100_000, 42).unwrap())
    });
    g.finish();
}

criterion_group!(benches, numeric, symbolic, graphs);
criterion_main!(benches);
