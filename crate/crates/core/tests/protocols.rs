use robust_qphase::presets::{self, single_outlier};
use robust_qphase::report::{read_rows, write_rows, ReportRow};
use robust_qphase::robustness::{
    epsilon_curve_with, finite_breakdown_point_with, run_replications_with,
};
use robust_qphase::*;

#[test]
fn clean_mean_phase_is_unbiased() {
    let scenario = single_outlier().at(0.0, 5000).unwrap();
    let stats = run_replications(&scenario, &EstimatorKind::Mean, Target::Theta, 500, 1000).unwrap();
    assert!(stats.bias.abs() < 0.005, "{}", stats.bias);
    assert!(stats.mse >= stats.bias * stats.bias);
}

#[test]
fn single_outlier_alpha_r() {
    let scenario = single_outlier().at(0.01, 5000).unwrap();
    let mean = run_replications(&scenario, &EstimatorKind::Mean, Target::AlphaR, 200, 1).unwrap();
    // mixture mean 0.99 * 10 + 0.01 * 15; Monte Carlo sd ~ 0.001
    assert!((mean.mean_estimate - 10.05).abs() < 0.005, "{}", mean.mean_estimate);
    let gamma = run_replications(&scenario, &EstimatorKind::gamma(), Target::AlphaR, 200, 1).unwrap();
    assert!(gamma.bias.abs() < 0.01, "{}", gamma.bias);
    assert_eq!(gamma.nonconverged, 0);
}

#[test]
fn robust_estimators_beat_the_mean_on_phase() {
    let scenario = single_outlier().at(0.01, 5000).unwrap();
    let mse = |kind: EstimatorKind| {
        run_replications(&scenario, &kind, Target::Theta, 300, 50)
            .unwrap()
            .mse
    };
    let m = mse(EstimatorKind::Mean);
    assert!(mse(EstimatorKind::gamma()) < m);
    assert!(mse(EstimatorKind::bisquare()) < m);
}

#[test]
fn mean_eps_curve_follows_mixture_mean() {
    let grid = [0.0, 0.1, 0.2, 0.3];
    let curve = epsilon_curve(
        &grid,
        2000,
        &EstimatorKind::Mean,
        Target::AlphaR,
        100,
        9,
        &single_outlier(),
    )
    .unwrap();
    for p in &curve.points {
        let expected = 10.0 + 5.0 * p.epsilon;
        let se = p.sd / (curve.runs as f64).sqrt();
        assert!(
            (p.mean_estimate - expected).abs() < 4.0 * se + 1e-3,
            "eps {}: {} vs {}",
            p.epsilon,
            p.mean_estimate,
            expected
        );
    }
}

#[test]
fn eps_curve_at_zero_matches_replications_for_all_estimators() {
    let t = single_outlier();
    for kind in EstimatorKind::standard_set() {
        let curve = epsilon_curve(&[0.0, 0.05], 1000, &kind, Target::Theta, 30, 4, &t).unwrap();
        let stats = run_replications(&t.at(0.0, 1000).unwrap(), &kind, Target::Theta, 30, 4).unwrap();
        assert_eq!(curve.points[0].mean_estimate, stats.mean_estimate);
        assert_eq!(curve.points[0].mse, stats.mse);
    }
}

#[test]
fn breakdown_sweep_never_fires_on_the_base_dataset() {
    let scenario = single_outlier().at(0.01, 2000).unwrap();
    let rule = BreakdownRule::for_alpha(scenario.model.alpha);
    for kind in EstimatorKind::standard_set() {
        let res = finite_breakdown_point(
            &scenario,
            &kind,
            &rule,
            500,
            presets::FBP_REPLACEMENT,
            3,
            5,
        )
        .unwrap();
        assert_ne!(res.breakdown_m, Some(0), "{kind}");
        if let Some(m) = res.breakdown_m {
            assert!(res.m_star < m);
        }
    }
}

#[test]
fn sequential_and_default_execution_agree() {
    let t = single_outlier();
    let scenario = t.at(0.05, 1000).unwrap();
    let kind = EstimatorKind::bisquare();
    for exec in [Execution::Sequential, Execution::default()] {
        let a = run_replications_with(&scenario, &kind, Target::AlphaI, 25, 3, exec).unwrap();
        let b = run_replications_with(&scenario, &kind, Target::AlphaI, 25, 3, Execution::Sequential)
            .unwrap();
        assert_eq!(a, b);

        let c = epsilon_curve_with(&[0.0, 0.2], 500, &kind, Target::Theta, 10, 8, &t, exec).unwrap();
        let d = epsilon_curve_with(
            &[0.0, 0.2],
            500,
            &kind,
            Target::Theta,
            10,
            8,
            &t,
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(c, d);

        let rule = BreakdownRule::for_alpha(t.alpha);
        let e = finite_breakdown_point_with(
            &scenario,
            &kind,
            &rule,
            250,
            presets::FBP_REPLACEMENT,
            1,
            3,
            exec,
        )
        .unwrap();
        let f = finite_breakdown_point_with(
            &scenario,
            &kind,
            &rule,
            250,
            presets::FBP_REPLACEMENT,
            1,
            3,
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(e, f);
    }
}

#[test]
fn reports_are_byte_reproducible() {
    let t = single_outlier();
    let render = || {
        let curve =
            epsilon_curve(&[0.0, 0.1], 500, &EstimatorKind::gamma(), Target::Theta, 10, 2, &t)
                .unwrap();
        let mut buf = Vec::new();
        write_rows(&ReportRow::from_eps_curve(&curve), &mut buf).unwrap();
        buf
    };
    let a = render();
    assert_eq!(a, render());
    let rows = read_rows(a.as_slice()).unwrap();
    let mut again = Vec::new();
    write_rows(&rows, &mut again).unwrap();
    assert_eq!(a, again);
}
