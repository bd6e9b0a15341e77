use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use xxz_lbf::asymptotics::sweep_pairs;
use xxz_lbf::exact_arith::rat;
use xxz_lbf::overlap_fidelity::{binomial_det_at, lbf_sweep, DeterminantKind, Route};
use xxz_lbf::spin_chain::ground_state_with;
use xxz_lbf::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn fidelity_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("fidelity_sweep_n48");
    g.sample_size(10);
    let pairs = sweep_pairs(48);
    let x = rat(1, 2);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| lbf_sweep(&pairs, &x, Route::Determinant, 60, e).unwrap())
        });
    }
    g.finish();
}

fn binomial_determinant(c: &mut Criterion) {
    let mut g = c.benchmark_group("binomial_det_n60");
    g.sample_size(10);
    let x = rat(7, 5);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| binomial_det_at(DeterminantKind::EvenEven, 60, &x, e).unwrap())
        });
    }
    g.finish();
}

fn ground_state(c: &mut Criterion) {
    let mut g = c.benchmark_group("ground_state_n12");
    g.sample_size(10);
    let x = rat(1, 3);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| ground_state_with(12, &x, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, fidelity_sweep, binomial_determinant, ground_state);
criterion_main!(benches);
