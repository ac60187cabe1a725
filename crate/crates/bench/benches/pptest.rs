use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pp8_bench::random_octics;
use pp8_core::{is_pp_brute, FieldCtx, PpTester};

fn wan_vs_brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("pp_test");
    for r in [4, 6, 8, 9] {
        let ctx = FieldCtx::new(r).unwrap();
        let fs = random_octics(&ctx, 64, 11);
        let mut tester = PpTester::new(&ctx).unwrap();
        group.bench_with_input(BenchmarkId::new("wan", r), &fs, |b, fs| {
            b.iter(|| fs.iter().filter(|f| tester.is_pp(f.coeffs())).count())
        });
        group.bench_with_input(BenchmarkId::new("brute", r), &fs, |b, fs| {
            b.iter(|| fs.iter().filter(|f| is_pp_brute(black_box(f))).count())
        });
    }
    group.finish();
}

criterion_group!(benches, wan_vs_brute);
criterion_main!(benches);
