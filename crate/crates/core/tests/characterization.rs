//! The estimated curve of Pareto data sits at 1/alpha and does not depend on
//! the scale.

use zenga::empirical::lambda_curve;
use zenga::gof;
use zenga::{DistributionSpec, RngStream};

#[test]
fn curve_level_matches_tail_index() {
    for (k, alpha) in [1.5, 2.0, 4.0].into_iter().enumerate() {
        let stream = RngStream::new(31, k as u64);
        let one = DistributionSpec::pareto(alpha, 1.0).unwrap().sample(10_000, &stream).unwrap();
        let ten = DistributionSpec::pareto(alpha, 10.0).unwrap().sample(10_000, &stream).unwrap();
        let a = lambda_curve(&one).unwrap();
        let b = lambda_curve(&ten).unwrap();
        let mean = a.lambda_hat().iter().sum::<f64>() / a.m() as f64;
        assert!((mean - 1.0 / alpha).abs() < 0.05, "alpha {alpha}: mean {mean}");
        for (x, y) in a.lambda_hat().iter().zip(b.lambda_hat()) {
            assert!((x - y).abs() < 1e-12);
        }
        let fa = gof::regression_estimates(&a, 10_000).unwrap();
        let fb = gof::regression_estimates(&b, 10_000).unwrap();
        assert!((fa.beta1_hat - fb.beta1_hat).abs() < 1e-12);
    }
}

#[test]
fn bootstrap_statistic_ignores_scale() {
    let stream = RngStream::from_seed(5);
    let base = DistributionSpec::exponential().sample(200, &stream).unwrap();
    let boot = RngStream::from_seed(6);
    let a = gof::bootstrap_test(&base, 49, &boot, &[0.05]).unwrap();
    let b = gof::bootstrap_test(&base.scaled(1234.5).unwrap(), 49, &boot, &[0.05]).unwrap();
    assert!((a.beta1_observed - b.beta1_observed).abs() < 1e-12);
}
