use compliant_bench::{one_free_length_params, reference_params, spiral_polynomial};
use compliant_core::resultant::poly_roots;
use compliant_core::{solve_case_i, solve_case_ii};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn zero_free_lengths(c: &mut Criterion) {
    let p = reference_params();
    c.bench_function("solve_case_i", |b| b.iter(|| solve_case_i(black_box(&p)).unwrap()));
}

fn one_free_length(c: &mut Criterion) {
    let p = one_free_length_params();
    let mut g = c.benchmark_group("solve_case_ii");
    g.sample_size(20);
    g.bench_function("reference instance", |b| b.iter(|| solve_case_ii(black_box(&p)).unwrap()));
    g.finish();
}

fn roots_48(c: &mut Criterion) {
    let poly = spiral_polynomial();
    c.bench_function("poly_roots degree 48", |b| b.iter(|| poly_roots(black_box(&poly)).unwrap()));
}

criterion_group!(benches, zero_free_lengths, one_free_length, roots_48);
criterion_main!(benches);
