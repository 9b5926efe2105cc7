use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_complex::Complex64;
use qbiu::classes::{ClassSpec, Family};
use qbiu::oracle::probe_bounds;
use qbiu::bounds::BracketExponent;
use qbiu::qcalc::{salagean_q, QParams};
use qbiu::{MindaTarget, NormalizedFunction, Series};

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sample_function(order: usize) -> NormalizedFunction {
    let tail: Vec<Complex64> = (0..order - 1)
        .map(|i| cx(0.3 / (i as f64 + 1.0), -0.2 / (i as f64 + 2.0)))
        .collect();
    NormalizedFunction::from_tail(&tail, order).unwrap()
}

fn series_ops(c: &mut Criterion) {
    let f = sample_function(32);
    let g = sample_function(32);

    c.bench_function("mul_order_32", |b| {
        b.iter(|| f.series().mul(g.series()))
    });
    c.bench_function("compose_order_32", |b| {
        b.iter(|| f.series().compose(g.series()).unwrap())
    });
    c.bench_function("comp_inverse_order_32", |b| {
        b.iter_batched(|| f.clone(), |f| f.comp_inverse(), BatchSize::SmallInput)
    });
}

fn operator_ops(c: &mut Criterion) {
    let f = sample_function(32);
    let qp = QParams::new(0.6, 3).unwrap();
    c.bench_function("salagean_q_k3_order_32", |b| b.iter(|| salagean_q(&f, &qp)));
}

fn probe_sweep(c: &mut Criterion) {
    let spec = ClassSpec::new(
        Family::M { lambda: 0.5 },
        QParams::new(0.6, 1).unwrap(),
        MindaTarget::starlike_order(0.25).unwrap(),
    )
    .unwrap();
    let taus = [cx(0.0, 0.0), cx(1.0, 0.0), cx(2.0, 0.0)];
    c.bench_function("probe_grid_step_0.1", |b| {
        b.iter(|| probe_bounds(&spec, &taus, 0.1, BracketExponent::TwoK).unwrap())
    });
}

fn membership(c: &mut Criterion) {
    let spec = ClassSpec::new(
        Family::M { lambda: 0.0 },
        QParams::new(0.9, 0).unwrap(),
        MindaTarget::starlike_order(0.0).unwrap(),
    )
    .unwrap();
    let f = NormalizedFunction::new(Series::identity(16)).unwrap();
    c.bench_function("membership_default_sampling", |b| {
        b.iter(|| qbiu::classes::membership(&f, &spec).unwrap())
    });
}

criterion_group!(benches, series_ops, operator_ops, probe_sweep, membership);
criterion_main!(benches);
