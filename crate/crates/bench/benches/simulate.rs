use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use xychain::experiment::Branch;
use xychain::xymodel::exact_propagator;
use xychain::{
    amplitude_curve, compile_u, decompose_factors, propagator_analytic, simulate_sequence,
    PhaseAngle, SpinSystem, XYChainSpec,
};

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 * 2.0 * PI / n as f64).collect()
}

fn decomposition(c: &mut Criterion) {
    let chain = XYChainSpec::three_spin(1.0).unwrap();
    let phis = grid(200);
    c.bench_function("three-way agreement, 200 angles", |b| {
        b.iter(|| {
            phis.iter().fold(0.0f64, |worst, &phi| {
                let phi = PhaseAngle::new(phi);
                let oracle = exact_propagator(&chain, phi).unwrap();
                worst
                    .max(oracle.max_abs_diff(&decompose_factors(phi).product()))
                    .max(oracle.max_abs_diff(&propagator_analytic(phi)))
            })
        })
    });
}

fn compilation(c: &mut Criterion) {
    let sys = SpinSystem::trichloroethylene();
    let phi = PhaseAngle::new(0.9);
    c.bench_function("compile_u expanded", |b| {
        b.iter(|| compile_u(black_box(phi), true, &sys).unwrap())
    });
    let seq = compile_u(phi, true, &sys).unwrap();
    c.bench_function("simulate compiled U", |b| {
        b.iter(|| simulate_sequence(black_box(&seq), &sys).unwrap())
    });
}

fn sweep(c: &mut Criterion) {
    let phis = grid(101);
    c.bench_function("amplitude sweep, 101 angles", |b| {
        b.iter(|| amplitude_curve(black_box(&phis), Branch::A))
    });
}

criterion_group!(benches, decomposition, compilation, sweep);
criterion_main!(benches);
