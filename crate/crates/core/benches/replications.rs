use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use robust_qphase::presets::{self, single_outlier};
use robust_qphase::robustness::{
    epsilon_curve_with, finite_breakdown_point_with, run_replications_with,
};
use robust_qphase::{BreakdownRule, EstimatorKind, Execution, Target};

fn modes() -> Vec<(&'static str, Execution)> {
    vec![
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ]
}

fn replications(c: &mut Criterion) {
    let scenario = single_outlier().at(0.01, 2000).unwrap();
    let mut group = c.benchmark_group("replications");
    group.sample_size(10);
    for kind in [EstimatorKind::Median, EstimatorKind::gamma()] {
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(kind.label(), name), &exec, |b, &exec| {
                b.iter(|| run_replications_with(&scenario, &kind, Target::Theta, 32, 1, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn eps_curve(c: &mut Criterion) {
    let template = single_outlier();
    let grid = [0.0, 0.1, 0.2, 0.3];
    let kind = EstimatorKind::bisquare();
    let mut group = c.benchmark_group("eps_curve");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                epsilon_curve_with(&grid, 1000, &kind, Target::AlphaR, 16, 1, &template, exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn breakdown(c: &mut Criterion) {
    let template = single_outlier();
    let scenario = template.at(0.01, 1000).unwrap();
    let rule = BreakdownRule::for_alpha(template.alpha);
    let kind = EstimatorKind::gamma();
    let mut group = c.benchmark_group("fbp");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                finite_breakdown_point_with(
                    &scenario,
                    &kind,
                    &rule,
                    100,
                    presets::FBP_REPLACEMENT,
                    1,
                    8,
                    exec,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, replications, eps_curve, breakdown);
criterion_main!(benches);
