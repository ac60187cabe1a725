use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pp8_bench::random_octics;
use pp8_core::hermite::HcPlan;
use pp8_core::{hc_octic, hc_symbolic, FieldCtx, SparsePoly7};

fn numeric(c: &mut Criterion) {
    let mut group = c.benchmark_group("hc_numeric");
    for (r, k) in [(4, 7), (6, 21), (7, 31), (8, 85)] {
        let ctx = FieldCtx::new(r).unwrap();
        let fs = random_octics(&ctx, 32, 7);
        group.bench_with_input(
            BenchmarkId::new("fresh", format!("r{r}k{k}")),
            &fs,
            |b, fs| {
                b.iter(|| {
                    for f in fs {
                        black_box(hc_octic(f, k).unwrap());
                    }
                })
            },
        );
        let plan = HcPlan::new(r, k).unwrap();
        group.bench_with_input(
            BenchmarkId::new("planned", format!("r{r}k{k}")),
            &fs,
            |b, fs| {
                b.iter(|| {
                    for f in fs {
                        let t = f.tuple();
                        black_box(plan.eval(&ctx, &t));
                    }
                })
            },
        );
    }
    group.finish();
}

fn symbolic(c: &mut Criterion) {
    let vars: [SparsePoly7; 7] =
        ["a7", "a6", "a5", "a4", "a3", "a2", "a1"].map(|v| v.parse().unwrap());
    let mut group = c.benchmark_group("hc_symbolic");
    group.sample_size(20);
    for (r, k) in [(4, 5), (6, 21), (7, 23)] {
        group.bench_function(format!("r{r}k{k}"), |b| {
            b.iter(|| black_box(hc_symbolic(r, k, &vars).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, numeric, symbolic);
criterion_main!(benches);
