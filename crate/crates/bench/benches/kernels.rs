use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qeag_bench::{contexts, generic_point, largest_random};
use qeag_core::homol::{is_projective_a, omega, tensor_is_projective};
use qeag_core::rep::{regular_rep, tensor};
use qeag_core::variety::{carlson_module, point_is_projective, rank_variety};

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for (name, ctx) in contexts() {
        let reg = regular_rep(&ctx);
        let x = reg.x(0).add(reg.g(0));
        group.bench_with_input(BenchmarkId::new("regular X1+g1", name), &x, |b, x| b.iter(|| black_box(x.rank())));
    }
    group.finish();
}

fn varieties(c: &mut Criterion) {
    let mut group = c.benchmark_group("variety");
    group.sample_size(10);
    for (name, ctx) in contexts() {
        let m = largest_random(&ctx, 8, 30);
        let lambda = generic_point(&ctx);
        group.bench_with_input(BenchmarkId::new("point test", name), &m, |b, m| {
            b.iter(|| black_box(point_is_projective(m, &lambda).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("scan e=1,2", name), &m, |b, m| {
            b.iter(|| black_box(rank_variety(m, &[1, 2]).unwrap()))
        });
    }
    group.finish();
}

fn modules(c: &mut Criterion) {
    let mut group = c.benchmark_group("modules");
    group.sample_size(10);
    for (name, ctx) in contexts() {
        let m = largest_random(&ctx, 8, 20);
        let n = largest_random(&ctx, 16, 20);
        group.bench_function(BenchmarkId::new("tensor", name), |b| b.iter(|| black_box(tensor(&m, &n).unwrap())));
        group.bench_function(BenchmarkId::new("omega", name), |b| b.iter(|| black_box(omega(&m))));
        group.bench_function(BenchmarkId::new("is_projective", name), |b| b.iter(|| black_box(is_projective_a(&m))));
        let l = carlson_module(&ctx, &generic_point(&ctx)).unwrap();
        group.bench_function(BenchmarkId::new("carlson tensor projective", name), |b| {
            b.iter(|| black_box(tensor_is_projective(&l, &m).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, linear_algebra, varieties, modules);
criterion_main!(benches);
