use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pgl_core::eigenspace::enumerate_ground_configurations;
use pgl_core::fock::{BinetConfig, BinetRecognizer};
use pgl_core::solvers::{solve, SolverBudget, SolverConfig, SolverKind};
use pgl_core::thermo::energy_spectrum;
use pgl_core::{generate_instance, Parallelism};

const MODES: [Parallelism; 2] = [Parallelism::Sequential, Parallelism::Parallel];

fn mode_name(p: Parallelism) -> &'static str {
    match p {
        Parallelism::Sequential => "sequential",
        Parallelism::Parallel => "parallel",
    }
}

fn config(p: Parallelism) -> SolverConfig {
    SolverConfig { parallelism: p, ..SolverConfig::default() }
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    for n in [18usize, 22] {
        let inst = generate_instance(n, 48, 1).unwrap();
        for p in MODES {
            group.bench_with_input(BenchmarkId::new(mode_name(p), n), &inst, |b, inst| {
                b.iter(|| solve(SolverKind::BruteForce, black_box(inst), &config(p), SolverBudget::unlimited()).unwrap())
            });
        }
    }
    group.finish();
}

fn meet_in_the_middle(c: &mut Criterion) {
    let mut group = c.benchmark_group("horowitz_sahni");
    group.sample_size(10);
    let inst = generate_instance(36, 48, 1).unwrap();
    for p in MODES {
        group.bench_function(mode_name(p), |b| {
            b.iter(|| solve(SolverKind::HorowitzSahni, black_box(&inst), &config(p), SolverBudget::unlimited()).unwrap())
        });
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("energy_spectrum");
    group.sample_size(10);
    let inst = generate_instance(20, 8, 3).unwrap();
    for p in MODES {
        group.bench_function(mode_name(p), |b| b.iter(|| energy_spectrum(black_box(&inst), &config(p)).unwrap()));
    }
    group.finish();
}

fn eigenspace(c: &mut Criterion) {
    let mut group = c.benchmark_group("ground_eigenspace");
    group.sample_size(10);
    let inst = generate_instance(20, 6, 5).unwrap();
    for p in MODES {
        group.bench_function(mode_name(p), |b| {
            b.iter(|| enumerate_ground_configurations(black_box(&inst), 1 << 16, &config(p)).unwrap())
        });
    }
    group.finish();
}

fn recognizer_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("binet_sweep");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    let r = BinetRecognizer::new(BinetConfig::default());
    for p in MODES {
        group.bench_function(mode_name(p), |b| b.iter(|| r.disagreements(1..=100_000, p)));
    }
    group.finish();
}

fn exact_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_solvers_n32");
    group.sample_size(10);
    let inst = generate_instance(32, 48, 2).unwrap();
    let seq = SolverConfig::sequential();
    for kind in [SolverKind::HorowitzSahni, SolverKind::SchroeppelShamir, SolverKind::CompleteKarmarkarKarp] {
        group.bench_function(kind.name(), |b| {
            b.iter(|| solve(kind, black_box(&inst), &seq, SolverBudget::unlimited()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, brute_force, meet_in_the_middle, spectrum, eigenspace, recognizer_sweep, exact_solvers);
criterion_main!(benches);
