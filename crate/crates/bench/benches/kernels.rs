use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use qfock_core::qbargmann::{BargmannKernelTable, JacksonFunction};
use qfock_core::qcomplex::{mixed_basis_gram, zq_monomial};
use qfock_core::qcore::{q_gamma, q_number};
use qfock_core::qfock::kernel_eval;
use qfock_core::qhermite::qhermite_gram;
use qfock_core::QContext;

fn scalars(c: &mut Criterion) {
    let ctx = QContext::new(0.5).unwrap();
    c.bench_function("q_number", |b| b.iter(|| q_number(black_box(17.3), &ctx)));
    c.bench_function("q_gamma", |b| b.iter(|| q_gamma(black_box(3.7), &ctx).unwrap()));
}

fn polynomials(c: &mut Criterion) {
    let ctx = QContext::new(0.5).unwrap();
    c.bench_function("zq_monomial_30", |b| b.iter(|| zq_monomial(black_box(30), &ctx)));
    c.bench_function("mixed_gram_6", |b| b.iter(|| mixed_basis_gram(black_box(6), &ctx)));
    c.bench_function("hermite_gram_8", |b| b.iter(|| qhermite_gram(black_box(8), &ctx)));
}

fn fock(c: &mut Criterion) {
    let ctx = QContext::new(0.5).unwrap();
    let (z, w) = (Complex64::new(0.3, 0.2), Complex64::new(0.5, -0.1));
    c.bench_function("kernel_eval", |b| b.iter(|| kernel_eval(black_box(z), black_box(w), &ctx).unwrap()));
}

fn bargmann(c: &mut Criterion) {
    let ctx = QContext::new(0.5).unwrap();
    c.bench_function("bargmann_table_16", |b| b.iter(|| BargmannKernelTable::new(black_box(16), &ctx).unwrap()));
    let table = BargmannKernelTable::new(16, &ctx).unwrap();
    let f = JacksonFunction::from_fn(&table.nodes, |t| Complex64::new((-t * t).exp(), t));
    c.bench_function("bargmann_forward_16", |b| b.iter(|| table.forward(black_box(&f))));
}

criterion_group!(benches, scalars, polynomials, fock, bargmann);
criterion_main!(benches);
