use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use inducibility::exec::{Execution, Options};
use inducibility::montecarlo::{estimate_graph, Sampling};
use inducibility::named::build;
use inducibility::nesting::transition_matrix;
use inducibility::profile::{induced_profile_with, repetitive_profile_with};
use inducibility::{LabeledGraph, StepModel};

fn strategies() -> [(&'static str, Options); 2] {
    [("sequential", Options::sequential()), ("parallel", Options {
        execution: Execution::Parallel,
        ..Options::default()
    })]
}

fn bench(c: &mut Criterion) {
    let paley = build("paley", &[17]).unwrap();
    let model: StepModel = StepModel::from_graph(&paley);
    let p9 = build("paley", &[9]).unwrap();
    let cayley = build("cayley2", &[7, 1, 2, 5]).unwrap();
    let big = LabeledGraph::from_fn(40, |u, v| u != v && (u * v + u + v) % 3 == 0);

    let mut group = c.benchmark_group("profiles");
    group.sample_size(10);
    for (name, opts) in strategies() {
        group.bench_with_input(BenchmarkId::new("repetitive paley17 t=5", name), &opts, |b, o| {
            b.iter(|| repetitive_profile_with(&model, 5, o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("induced 40 vertices t=5", name), &opts, |b, o| {
            b.iter(|| induced_profile_with(&big, 5, o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("transition paley9 t=5", name), &opts, |b, o| {
            b.iter(|| transition_matrix(&p9, 5, o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sampling cayley 10^6", name), &opts, |b, o| {
            b.iter(|| estimate_graph(&cayley, 4, 1_000_000, 1, Sampling::WithReplacement, o.execution).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
