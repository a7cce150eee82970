use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qborel::product::f1_eval;
use qborel::{
    euler_sum, laplace_numeric, product_sum, Direction, EulerFactor, LogPoint, QContext,
    QuadratureConfig, TransformOrder, C64,
};

fn laplace(c: &mut Criterion) {
    let ctx = QContext::new(2.0).unwrap();
    let cfg = QuadratureConfig::default();
    let phi = |xi: LogPoint| Ok(1.0 / (1.0 + xi.to_complex()));
    let x = LogPoint::new(0.1, 0.2).unwrap();
    c.bench_function("laplace order 1", |b| {
        b.iter(|| {
            laplace_numeric(
                &phi,
                Direction(0.2),
                &ctx,
                TransformOrder::integer(1),
                black_box(x),
                &cfg,
            )
        })
    });
    let fac = EulerFactor::new(C64::new(1.0, 0.0), 0).unwrap();
    c.bench_function("euler sum", |b| {
        b.iter(|| euler_sum(fac, Direction(0.0), &ctx, black_box(x), &cfg))
    });
}

fn product(c: &mut Criterion) {
    let ctx = QContext::new(2.0).unwrap();
    let cfg = QuadratureConfig::default();
    let (a, b) = (C64::new(1.0, 0.0), C64::new(2.0, 0.0));
    let z = LogPoint::new(5.0, 0.3).unwrap();
    c.bench_function("f1 continuation", |bench| {
        bench.iter(|| f1_eval(a, b, &ctx, black_box(z)))
    });
    let x = LogPoint::new(0.05, 0.1).unwrap();
    let mut group = c.benchmark_group("product");
    group.sample_size(10);
    group.bench_function("order (1,2) sum", |bench| {
        bench.iter(|| product_sum(a, b, Direction(0.0), &ctx, black_box(x), &cfg))
    });
    group.finish();
}

criterion_group!(benches, laplace, product);
criterion_main!(benches);
