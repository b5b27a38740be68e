use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hydrocone::algebra::int;
use hydrocone::channel::WeightData;
use hydrocone::green::{assemble_with, AssembleOptions};
use hydrocone::numerics::{evaluate_functional, CutoffTriple, QuadratureSpec, RadialProfile};
use hydrocone::verify::{verify, VerifyOptions};
use hydrocone::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_assemble(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble");
    group.sample_size(10);
    for (order, channels) in [(6, 4), (10, 6)] {
        for (name, exec) in MODES {
            let opts = AssembleOptions { weights: WeightData::new(int(1)), order, channels, exec };
            group.bench_with_input(BenchmarkId::new(name, format!("N{order}_L{channels}")), &opts, |b, o| {
                b.iter(|| assemble_with(black_box(o)).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = VerifyOptions { order: 6, channels: 4, exec, ..VerifyOptions::default() };
        group.bench_function(name, |b| b.iter(|| verify(black_box(&opts)).unwrap()));
    }
    group.finish();
}

fn bench_functional(c: &mut Criterion) {
    let mut group = c.benchmark_group("functional");
    let g = assemble_with(&AssembleOptions::new(int(1), 4, 2)).unwrap();
    let q = g.group(2).and_then(|grp| grp.functional()).unwrap().clone();
    let u = RadialProfile::hydrogen_radial(3, 2, 1.0);
    let (cut, spec) = (CutoffTriple::default(), QuadratureSpec::default());
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| evaluate_functional(black_box(&q), &u, 1.0, -1.0 / 18.0, &cut, &spec, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_assemble, bench_verify, bench_functional);
criterion_main!(benches);
