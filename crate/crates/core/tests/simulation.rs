use depridge::asymptotics::{optimal_lambda, risk, ProblemSpec};
use depridge::simulator::{
    gamma_points, run_batch, run_point, BatchPoint, CovariateModel, EntryDist, LambdaRule,
    RidgeParams,
};

#[test]
fn resolvent_trace_matches_isotropic_limit() {
    let point = BatchPoint {
        value: 1.0,
        model: CovariateModel::isotropic(EntryDist::Gaussian),
        d: 1000,
        params: RidgeParams {
            lambda: 1.0,
            alpha: 1.0,
            sigma_eps: 1.0,
        },
    };
    let s = run_point(&point, 0, 1000, 20, 3).unwrap();
    // (sqrt(5) - 1)/2 solves m² + m - 1 = 0
    let limit = (5f64.sqrt() - 1.0) / 2.0;
    assert!((s.m.mean - limit).abs() < 0.01, "{}", s.m.mean);
}

#[test]
fn optimally_tuned_risk_matches_theory() {
    let (alpha, sigma, gamma) = (1.0, 1.0, 0.5);
    let model = CovariateModel::isotropic(EntryDist::Gaussian);
    let points = gamma_points(&model, 1000, &[gamma], LambdaRule::Optimal, alpha, sigma);
    assert_eq!(points[0].params.lambda, optimal_lambda(gamma, alpha, sigma));
    let s = &run_batch(1000, &points, 50, 4).unwrap()[0];
    let theory =
        risk(&ProblemSpec::isotropic(gamma, points[0].params.lambda, alpha, sigma).unwrap())
            .unwrap()
            .risk;
    assert!(
        (s.risk.mean - theory).abs() < 3.0 * s.risk.se,
        "{} ± {} vs {theory}",
        s.risk.mean,
        s.risk.se
    );
}

#[test]
fn risk_terms_are_nonnegative_and_decompose() {
    let model = CovariateModel::isotropic(EntryDist::Uniform);
    let points = gamma_points(&model, 80, &[0.5, 2.0], LambdaRule::Fixed(0.05), 1.0, 0.5);
    for s in run_batch(80, &points, 5, 9).unwrap() {
        for r in &s.results {
            assert!(
                r.empirical_risk >= 0.0 && r.empirical_bias >= 0.0 && r.empirical_variance >= 0.0
            );
            let sum = r.empirical_bias + r.empirical_variance + r.cross_term;
            assert!((r.empirical_risk - sum).abs() <= 1e-12 * r.empirical_risk.max(1.0));
            assert!(r.empirical_m > 0.0);
        }
    }
}
