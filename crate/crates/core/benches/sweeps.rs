use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spectral_periodic::harness::{build_operator, run_experiment_with, ExperimentConfig, ExperimentKind};
use spectral_periodic::operators::assemble_collocation_ode_with;
use spectral_periodic::spectrum::resolvent_norm_grid_with;
use spectral_periodic::{BandWindow, Complex64, Discretization, Exec, SobolevOrder};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn config(kind: ExperimentKind, alpha: f64, n_list: Vec<usize>, n_ref: usize) -> ExperimentConfig {
    ExperimentConfig {
        experiment: kind,
        alpha,
        epsilon: if kind == ExperimentKind::Rhp { 0.01 } else { 1.0 },
        s: 0.0,
        t: 1.0,
        n_list,
        n_ref,
        mode: Discretization::FiniteSection,
        output_path: PathBuf::from("bench.csv"),
        lambda_cap: None,
    }
}

fn convergence_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("convergence_sweep");
    group.sample_size(10);
    let cases = [
        ("ode3", config(ExperimentKind::Ode3, 1.51, (40..=200).step_by(20).collect(), 401)),
        ("rhp", config(ExperimentKind::Rhp, 1.51, (40..=200).step_by(20).collect(), 401)),
        ("spectrum2", config(ExperimentKind::Spectrum2, 2.51, vec![41, 81, 161], 321)),
    ];
    for (name, cfg) in &cases {
        for (policy, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(*name, policy), cfg, |b, cfg| {
                b.iter(|| run_experiment_with(black_box(cfg), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn resolvent_grid(c: &mut Criterion) {
    let cfg = config(ExperimentKind::Spectrum2, 2.51, vec![41], 81);
    let spec = build_operator(&cfg).unwrap();
    let w = BandWindow::new(81).unwrap();
    let z: Vec<Complex64> = (0..8)
        .flat_map(|i| (0..4).map(move |j| Complex64::new(-2.0 + 4.0 * i as f64, 0.5 + j as f64)))
        .collect();
    let mut group = c.benchmark_group("resolvent_grid");
    group.sample_size(10);
    for (policy, exec) in POLICIES {
        group.bench_function(policy, |b| {
            b.iter(|| resolvent_norm_grid_with(&spec, w, black_box(&z), SobolevOrder(0.0), exec).unwrap())
        });
    }
    group.finish();
}

fn collocation_assembly(c: &mut Criterion) {
    let cfg = config(ExperimentKind::Ode3, 1.51, vec![40], 1001);
    let spec = build_operator(&cfg).unwrap();
    let mut group = c.benchmark_group("collocation_assembly");
    group.sample_size(10);
    for n in [256usize, 1001] {
        let w = BandWindow::new(n).unwrap();
        for (policy, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(policy, n), &w, |b, &w| {
                b.iter(|| assemble_collocation_ode_with(&spec, black_box(w), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, convergence_sweeps, resolvent_grid, collocation_assembly);
criterion_main!(benches);
