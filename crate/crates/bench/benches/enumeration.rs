use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use m12sl3::coset::{enumerate, EnumerationLimits, Strategy};
use m12sl3::words::catalog;

fn small_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for name in ["Zstar", "Xstar", "Ystar", "AGL23"] {
        let entry = catalog(name).unwrap();
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let limits = EnumerationLimits::new(1_000_000, strategy);
            group.bench_with_input(BenchmarkId::new(strategy.to_string(), name), &entry, |b, e| {
                b.iter(|| enumerate(&e.presentation, &e.subgroup_words, &limits).unwrap().live_count())
            });
        }
    }
    group.finish();
}

fn completion_over_xstar(c: &mut Criterion) {
    let mut group = c.benchmark_group("completion over X*");
    group.sample_size(10);
    for name in ["F1", "F3"] {
        let p = catalog(name).unwrap().presentation;
        let h: Vec<_> = ["a", "b", "p", "q", "t", "u"].iter().map(|g| p.gen(g).unwrap()).collect();
        group.bench_function(name, |b| b.iter(|| enumerate(&p, &h, &EnumerationLimits::default()).unwrap().live_count()));
    }
    group.finish();
}

criterion_group!(benches, small_catalog, completion_over_xstar);
criterion_main!(benches);
