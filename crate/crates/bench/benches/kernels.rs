//! Hot paths of the toolkit: series powers, coefficient batches, contour
//! quadrature and the bound-constant scan.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use concave_core::{
    area_green, coefficient_b_batch, m_bound, Complex64, DiscQuotient, Koebe, QuotientKind,
    TruncatedSeries, UnitModulusParameter,
};

fn bench_series_pow(c: &mut Criterion) {
    let x = UnitModulusParameter::new(1.0).unwrap();
    let mut coeffs = vec![Complex64::new(1.0, 0.0); 65];
    for ck in coeffs.iter_mut().skip(1) {
        *ck = x.one_plus_x();
    }
    let base = TruncatedSeries::new(coeffs).unwrap();
    c.bench_function("series_pow_real_order_64", |b| {
        b.iter(|| black_box(&base).pow_real(black_box(1.5)).unwrap())
    });
}

fn bench_coefficient_batch(c: &mut Criterion) {
    let x = UnitModulusParameter::new(2.0).unwrap();
    c.bench_function("coefficient_batch_to_order_50", |b| {
        b.iter(|| coefficient_b_batch(black_box(50), black_box(1.5), &x).unwrap())
    });
}

fn bench_area_green(c: &mut Criterion) {
    let q = DiscQuotient::new(Koebe, QuotientKind::ZOverF);
    c.bench_function("area_green_4096_nodes", |b| {
        b.iter(|| area_green(&q, black_box(0.5), 4096).unwrap())
    });
}

fn bench_m_bound(c: &mut Criterion) {
    c.bench_function("bound_constant_scan", |b| {
        b.iter(|| m_bound(black_box(1.5), black_box(0.4)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_series_pow,
    bench_coefficient_batch,
    bench_area_green,
    bench_m_bound
);
criterion_main!(benches);
