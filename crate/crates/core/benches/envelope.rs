use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use inducibility::envelope::{EnvelopeTable, Mode, Strategy};

fn strategies() -> Vec<(&'static str, Strategy)> {
    vec![
        ("sequential", Strategy::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Strategy::Parallel),
    ]
}

fn envelope(c: &mut Criterion) {
    let mut group = c.benchmark_group("envelope");
    group.sample_size(10);
    for (mode, n) in [(Mode::A5Binary, 400), (Mode::Q4Ternary, 150)] {
        for (name, strategy) in strategies() {
            group.bench_with_input(BenchmarkId::new(format!("{mode}/{name}"), n), &n, |b, &n| {
                b.iter(|| {
                    EnvelopeTable::new(mode.clone())
                        .with_strategy(strategy)
                        .max_count(n)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, envelope);
criterion_main!(benches);
