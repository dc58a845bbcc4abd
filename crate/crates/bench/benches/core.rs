use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tricover::algebra::random_line;
use tricover::bundle::{jump_line_scan, jumping_example, splitting_on_line, BundleClass};
use tricover::classify::classify_branch_degree;
use tricover::tan::{abc_data, tan_decomposition};
use tricover::testgen::random_minimal_cubic;
use tricover::Field;
use tricover_bench::gcd_pair;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gcd(c: &mut Criterion) {
    let mut group = c.benchmark_group("gcd");
    for degree in [2, 4, 6] {
        let (f, g) = gcd_pair(degree, 11);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &(f, g), |b, (f, g)| {
            b.iter(|| black_box(f.gcd(g).unwrap()))
        });
    }
    group.finish();
}

fn tan_pipeline(c: &mut Criterion) {
    let cubics: Vec<_> = (0..20).map(|s| random_minimal_cubic(s, Field::Rational).minimal()).collect();
    c.bench_function("tan pipeline, 20 covers", |b| {
        b.iter(|| {
            for mc in &cubics {
                let td = tan_decomposition(mc).unwrap();
                black_box(abc_data(&td).unwrap());
            }
        })
    });
}

fn classify(c: &mut Criterion) {
    c.bench_function("classify degrees 2..40", |b| {
        b.iter(|| {
            for d in (2..=40).step_by(2) {
                black_box(classify_branch_degree(d).unwrap());
            }
        })
    });
}

fn splitting(c: &mut Criterion) {
    let bundle = BundleClass::Presented(jumping_example());
    let line = random_line(&mut ChaCha8Rng::seed_from_u64(5), 5);
    c.bench_function("splitting type on one line", |b| {
        b.iter(|| black_box(splitting_on_line(&bundle, &line).unwrap()))
    });
    c.bench_function("jump scan, 50 lines", |b| {
        b.iter(|| black_box(jump_line_scan(&bundle, 50, 7).unwrap()))
    });
}

criterion_group!(benches, gcd, tan_pipeline, classify, splitting);
criterion_main!(benches);
