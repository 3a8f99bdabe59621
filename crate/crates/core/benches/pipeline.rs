//! Sequential versus rayon-parallel generation of a small dataset.
//!
//! Both modes produce identical output, so the comparison is purely about scheduling.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qlevr_gen::pipeline::{generate_dataset, ExecMode, PipelineConfig};

fn bench_generation(c: &mut Criterion) {
    let config = PipelineConfig { scenes: 24, seed: 5, render: true, ..Default::default() };
    let mut group = c.benchmark_group("generate_dataset");
    group.sample_size(10);
    let modes = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel(None))];
    for (name, mode) in modes {
        group.bench_with_input(BenchmarkId::new(name, config.scenes), &mode, |b, &mode| {
            b.iter(|| generate_dataset(&config, mode).expect("generation"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_generation);
criterion_main!(benches);
