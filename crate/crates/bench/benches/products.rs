use composable_qm::composability::check_composability;
use composable_qm::realization::{moyal_star, MatrixRealization, PhaseRealization};
use composable_qm::sampling::{Coefficients, Sampler};
use composable_qm::scalar::rat;
use composable_qm::solver::{derive_four_product_coefficients, derive_two_product_coefficients};
use composable_qm::Unit;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn star(c: &mut Criterion) {
    let mut s = Sampler::new(1);
    for degree in [2u32, 4, 6] {
        let (f, g) = (s.poly(2, degree, 4, Coefficients::Hbar), s.poly(2, degree, 4, Coefficients::Hbar));
        c.bench_function(&format!("moyal_star d=2 degree<={degree}"), |b| {
            b.iter(|| moyal_star(black_box(&f), black_box(&g)).unwrap())
        });
    }
}

fn kron(c: &mut Criterion) {
    let mut s = Sampler::new(2);
    let (a, b) = (s.matrix(3, Unit::Imaginary), s.matrix(3, Unit::Imaginary));
    c.bench_function("kron 3x3 complex", |bench| bench.iter(|| black_box(&a).kron(black_box(&b))));
    let ab = a.kron(&b);
    c.bench_function("mul 9x9 complex", |bench| bench.iter(|| black_box(&ab).checked_mul(black_box(&ab)).unwrap()));
}

fn composability(c: &mut Criterion) {
    let mut s = Sampler::new(3);
    let r = MatrixRealization::elliptic(rat(2, 1)).unwrap();
    let samples: Vec<_> = (0..10).map(|_| (0..4).map(|_| s.matrix(2, Unit::Imaginary)).collect()).collect();
    c.bench_function("composability 10 samples elliptic 2x2", |b| b.iter(|| check_composability(&r, &samples)));
    let moyal = PhaseRealization::moyal();
    let polys: Vec<_> = (0..10).map(|_| (0..4).map(|_| s.poly(1, 3, 3, Coefficients::Hbar)).collect()).collect();
    c.bench_function("composability 10 samples Moyal", |b| b.iter(|| check_composability(&moyal, &polys)));
}

fn solver(c: &mut Criterion) {
    c.bench_function("derive two-product", |b| b.iter(|| derive_two_product_coefficients().unwrap()));
    c.bench_function("derive four-product", |b| b.iter(|| derive_four_product_coefficients().unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = star, kron, composability, solver
}
criterion_main!(benches);
