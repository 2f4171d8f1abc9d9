use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diophant::minima::minima_report;
use diophant::psi::{psi, psi_records};
use diophant::solvers::{khintchine_hypothesis_check, solve_primitive_satz7, Satz7Options};
use diophant::{q, qi, ApproximationProblem, Exec, SearchOptions};

fn golden() -> ApproximationProblem {
    ApproximationProblem::from_rows(vec![vec![q(1618034, 1000000)]], vec![qi(0)]).unwrap()
}

fn three_by_two() -> ApproximationProblem {
    let rows = vec![
        vec![q(2611, 7268), q(451, 3207)],
        vec![q(3593, 5211), q(1466, 1745)],
        vec![q(3587, 4928), q(5177, 6010)],
    ];
    ApproximationProblem::from_rows(rows, vec![q(1, 3), q(1, 7), q(2, 9)]).unwrap()
}

fn sqrt23() -> ApproximationProblem {
    ApproximationProblem::from_rows(
        vec![vec![q(1414213562373, 1000000000000), q(1732050807568, 1000000000000)]],
        vec![q(1, 3)],
    )
    .unwrap()
}

fn strategies() -> [(&'static str, SearchOptions); 2] {
    let base = SearchOptions::default();
    [
        ("sequential", base.with_exec(Exec::Sequential)),
        ("parallel", base.with_exec(Exec::Parallel)),
    ]
}

fn bench_psi(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi");
    let p = three_by_two();
    let t = qi(60);
    for (name, opts) in strategies() {
        g.bench_with_input(BenchmarkId::new("n3_t60", name), &opts, |b, o| b.iter(|| psi(&p, &t, o).unwrap()));
    }
    let s = sqrt23();
    for (name, opts) in strategies() {
        g.bench_with_input(BenchmarkId::new("records_sqrt23_1e5", name), &opts, |b, o| {
            b.iter(|| psi_records(&s, 100_000, o).unwrap())
        });
    }
    g.finish();
}

fn bench_minima(c: &mut Criterion) {
    let mut g = c.benchmark_group("minima");
    g.sample_size(10);
    let p = three_by_two();
    for (name, opts) in strategies() {
        g.bench_with_input(BenchmarkId::new("d5_t4", name), &opts, |b, o| {
            b.iter(|| minima_report(&p, &qi(4), None, o).unwrap())
        });
    }
    let gp = golden();
    for (name, opts) in strategies() {
        g.bench_with_input(BenchmarkId::new("golden_t55", name), &opts, |b, o| {
            b.iter(|| minima_report(&gp, &qi(55), None, o).unwrap())
        });
    }
    g.finish();
}

fn bench_solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(10);
    let p = three_by_two();
    for (name, opts) in strategies() {
        g.bench_with_input(BenchmarkId::new("hypothesis_n3", name), &opts, |b, o| {
            b.iter(|| khintchine_hypothesis_check(&p, &q(1, 50), &qi(10), None, o).unwrap())
        });
    }
    let s = sqrt23();
    let sat = Satz7Options {
        count: 3,
        ..Default::default()
    };
    for (name, opts) in strategies() {
        g.bench_with_input(BenchmarkId::new("primitive_sqrt23", name), &opts, |b, o| {
            b.iter(|| solve_primitive_satz7(&s, &q(1, 2), &sat, o).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_psi, bench_minima, bench_solvers);
criterion_main!(benches);
