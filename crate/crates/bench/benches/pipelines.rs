//! End-to-end benchmarks of the heavy pipelines: highest weight
//! enumeration, the box peeling correspondence, energy, and the graded
//! character comparison.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use krc_core::bijection::{phi, phi_inv};
use krc_core::kleber::virtual_hw_rcs;
use krc_core::rc::enumerate_hw;
use krc_core::statistics::{energy, m_polynomials, tensor_elements, x_polynomials};
use krc_core::{CartanType, TensorShape};

fn running_shape() -> TensorShape {
    TensorShape::new(CartanType::G2, vec![(1, 1), (2, 1), (1, 2)])
}

fn bench_enumerate(c: &mut Criterion) {
    let shape = running_shape();
    c.bench_function("enumerate_hw (1,1)(2,1)(1,2)", |b| {
        b.iter(|| enumerate_hw(black_box(&shape)))
    });
    c.bench_function("virtual_hw_rcs (1,1)(2,1)(1,2)", |b| {
        b.iter(|| virtual_hw_rcs(black_box(&shape)))
    });
}

fn bench_correspondence(c: &mut Criterion) {
    let shape = running_shape();
    let configs: Vec<_> = enumerate_hw(&shape).into_iter().collect();
    c.bench_function("phi over highest configurations", |b| {
        b.iter(|| {
            for rc in &configs {
                black_box(phi(black_box(rc)));
            }
        })
    });
    let images: Vec<_> = configs.iter().map(phi).collect();
    c.bench_function("phi_inv over highest elements", |b| {
        b.iter(|| {
            for t in &images {
                black_box(phi_inv(black_box(t)));
            }
        })
    });
}

fn bench_energy(c: &mut Criterion) {
    let shape = TensorShape::new(CartanType::G2, vec![(1, 2), (1, 1)]);
    let elements = tensor_elements(&shape);
    c.bench_function("energy over (1,2)(1,1)", |b| {
        b.iter(|| {
            for t in &elements {
                black_box(energy(black_box(t)));
            }
        })
    });
}

fn bench_graded_sums(c: &mut Criterion) {
    let shape = TensorShape::new(CartanType::G2, vec![(1, 2), (1, 2)]);
    c.bench_function("x_polynomials (1,2)(1,2)", |b| {
        b.iter(|| x_polynomials(black_box(&shape)))
    });
    c.bench_function("m_polynomials (1,2)(1,2)", |b| {
        b.iter(|| m_polynomials(black_box(&shape)))
    });
}

criterion_group!(
    benches,
    bench_enumerate,
    bench_correspondence,
    bench_energy,
    bench_graded_sums
);
criterion_main!(benches);
