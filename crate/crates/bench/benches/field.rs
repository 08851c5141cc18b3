use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gfwigner::{FieldSpec, Generator};
use gfwigner_bench::spec;

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_new");
    for n in [4, 8, 12, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| FieldSpec::new(black_box(n))));
    }
    group.finish();
}

fn arithmetic(c: &mut Criterion) {
    let s = spec(12);
    let xs: Vec<_> = s.elements().collect();
    c.bench_function("mul_all_pairs_sample_n12", |b| {
        b.iter(|| {
            let mut acc = xs[0];
            for x in xs.iter().step_by(17) {
                for y in xs.iter().step_by(31) {
                    acc = s.add(acc, s.mul(*x, *y));
                }
            }
            acc
        })
    });
    c.bench_function("dual_ordering_n8", |b| b.iter(|| spec(8).axis_labels(black_box(Generator::Transpose))));
}

criterion_group!(benches, construction, arithmetic);
criterion_main!(benches);
