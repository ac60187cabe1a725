use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use pp8_core::search::{classify_r4, classify_r6, verify_r7};
use pp8_core::FieldCtx;

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    let k4 = FieldCtx::new(4).unwrap();
    group.bench_function("r4", |b| b.iter(|| black_box(classify_r4(&k4).unwrap())));
    let k6 = FieldCtx::new(6).unwrap();
    group.bench_function("r6", |b| b.iter(|| black_box(classify_r6(&k6).unwrap())));
    let k7 = FieldCtx::new(7).unwrap();
    group.bench_function("verify_r7", |b| {
        b.iter(|| black_box(verify_r7(&k7).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, classification);
criterion_main!(benches);
