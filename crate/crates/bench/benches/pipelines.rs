use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcn_bench::{rational_sphere, rational_torus};
use tcn_core::bounds::zero_divisor_cup_length;
use tcn_core::sphere_planner::{plan, random_configuration};
use tcn_core::tensor::TensorAlgebra;

fn bench_kernel(c: &mut Criterion) {
    let torus = rational_torus(2);
    c.bench_function("kernel_of_diagonal/T2_n3", |b| {
        b.iter(|| {
            let tensor = TensorAlgebra::new(&torus.algebra, 3).unwrap();
            black_box(tensor.kernel_of_diagonal(None).total_dim())
        })
    });
}

fn bench_tensor_mul(c: &mut Criterion) {
    let torus = rational_torus(2);
    let tensor = TensorAlgebra::new(&torus.algebra, 4).unwrap();
    let x = torus.algebra.element_from_names(&[("x", 1)]).unwrap();
    let y = torus.algebra.element_from_names(&[("y", 1)]).unwrap();
    let mut left = tensor.slot_class(&x, 0).unwrap();
    for slot in 1..4 {
        left = left.sub(&tensor.slot_class(&x, slot).unwrap()).unwrap();
    }
    let mut right = tensor.slot_class(&y, 0).unwrap();
    for slot in 1..4 {
        right = right.sub(&tensor.slot_class(&y, slot).unwrap()).unwrap();
    }
    c.bench_function("tensor_mul/T2_n4_differences", |b| {
        b.iter(|| black_box(left.mul(&right).unwrap().terms().len()))
    });
}

fn bench_cup_length(c: &mut Criterion) {
    let sphere = rational_sphere(2);
    let torus = rational_torus(2);
    c.bench_function("zcl/S2_n4", |b| {
        b.iter(|| black_box(zero_divisor_cup_length(&sphere.algebra, 4, false).unwrap().m))
    });
    c.bench_function("zcl/T2_n3", |b| {
        b.iter(|| black_box(zero_divisor_cup_length(&torus.algebra, 3, false).unwrap().m))
    });
    let mut group = c.benchmark_group("zcl_slow");
    group.sample_size(10);
    group.bench_function("zcl/T2_n4", |b| {
        b.iter(|| black_box(zero_divisor_cup_length(&torus.algebra, 4, false).unwrap().m))
    });
    group.finish();
}

fn bench_planner(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let config = random_configuration(3, 4, &mut rng).unwrap();
    c.bench_function("plan/S3_n4_100samples", |b| {
        b.iter(|| black_box(plan(&config, 100, 1e-8).unwrap().domain()))
    });
}

criterion_group!(benches, bench_kernel, bench_tensor_mul, bench_cup_length, bench_planner);
criterion_main!(benches);
