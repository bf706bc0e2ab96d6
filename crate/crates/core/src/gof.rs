//! Regression of the estimated curve on the grid and the parametric-bootstrap
//! test of a zero slope.
//!
//! Under the Pareto null the curve is flat, so the intercept estimates
//! `1/alpha` and the slope should be near zero. The intercept is the plain mean
//! of the ordinates (the slope is known to be zero under the null), and the
//! slope is the ordinary least-squares one. The null distribution of the slope
//! is approximated by resampling from `Pareto(alpha_hat, 1)`; the scale is
//! irrelevant because the curve is scale free.

use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::DistributionSpec;
use crate::empirical::{self, LambdaCurve, Sample};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Smallest sample size accepted by [`grid_moments`] and [`bootstrap_test`].
pub const MIN_TEST_SIZE: usize = 5;

/// Intercepts at or below this are treated as zero: the tail index is undefined.
pub const DEGENERATE_INTERCEPT: f64 = 1e-12;

/// Mean and centred sum of squares of the grid `p_i = i/n`, `i = 1..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMoments {
    pub m: usize,
    pub p_bar: f64,
    pub s2_p: f64,
}

fn closed_form_moments(n: usize) -> GridMoments {
    let m = empirical::curve_points(n);
    let (mf, nf) = (m as f64, n as f64);
    GridMoments {
        m,
        p_bar: (mf + 1.0) / (2.0 * nf),
        s2_p: mf * (mf * mf - 1.0) / (12.0 * nf * nf),
    }
}

/// Closed-form grid moments `p_bar = (m+1)/(2n)` and
/// `S2_p = m(m^2-1)/(12n^2)` with `m = n - floor(sqrt(n))`.
pub fn grid_moments(n: usize) -> Result<GridMoments> {
    if n < MIN_TEST_SIZE {
        return Err(Error::SampleSize { n, min: MIN_TEST_SIZE });
    }
    Ok(closed_form_moments(n))
}

/// Regression weights `c(p_i) = (p_i - p_bar) / S2_p`.
fn slope_weights(n: usize, moments: &GridMoments) -> Vec<f64> {
    let nf = n as f64;
    (1..=moments.m)
        .map(|i| (i as f64 / nf - moments.p_bar) / moments.s2_p)
        .collect()
}

fn weighted_sum(values: &[f64], weights: &[f64]) -> f64 {
    values.iter().zip(weights).map(|(v, w)| v * w).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegressionEstimates {
    /// Mean of the curve ordinates.
    pub beta0_hat: f64,
    /// Least-squares slope.
    pub beta1_hat: f64,
    /// `1 / beta0_hat`.
    pub alpha_hat: f64,
    pub m: usize,
    pub p_bar: f64,
    pub s2_p: f64,
}

/// Intercept, slope and tail index from a curve estimated on a sample of size `n`.
///
/// Needs at least two curve points so that the grid has spread.
pub fn regression_estimates(curve: &LambdaCurve, n: usize) -> Result<RegressionEstimates> {
    if curve.n() != n {
        return Err(Error::parameter(
            "n",
            format!("curve was estimated from {} observations, not {n}", curve.n()),
        ));
    }
    if curve.m() < 2 {
        return Err(Error::SampleSize { n, min: 3 });
    }
    let moments = closed_form_moments(n);
    let lambda = curve.lambda_hat();
    let beta0_hat = lambda.iter().sum::<f64>() / moments.m as f64;
    let beta1_hat = weighted_sum(lambda, &slope_weights(n, &moments));
    if beta0_hat.is_nan() || beta0_hat <= DEGENERATE_INTERCEPT {
        return Err(Error::DegenerateFit { beta0: beta0_hat });
    }
    Ok(RegressionEstimates {
        beta0_hat,
        beta1_hat,
        alpha_hat: 1.0 / beta0_hat,
        m: moments.m,
        p_bar: moments.p_bar,
        s2_p: moments.s2_p,
    })
}

/// Slope statistic for one sample size, with the grid-dependent pieces
/// computed once.
struct SlopeKernel {
    log_survival: Vec<f64>,
    weights: Vec<f64>,
}

impl SlopeKernel {
    fn new(n: usize) -> Self {
        let moments = closed_form_moments(n);
        Self {
            log_survival: empirical::log_survival_grid(n, moments.m),
            weights: slope_weights(n, &moments),
        }
    }

    /// Sorts `values` in place and returns the slope of their curve.
    fn slope(&self, values: &mut [f64], scratch: &mut Vec<f64>) -> f64 {
        values.sort_unstable_by(f64::total_cmp);
        empirical::lambda_values(values, &self.log_survival, scratch);
        weighted_sum(scratch, &self.weights)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelDecision {
    pub level: f64,
    pub reject: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofTestResult {
    pub n: usize,
    pub m: usize,
    pub alpha_hat: f64,
    pub beta0_hat: f64,
    pub beta1_observed: f64,
    #[serde(rename = "M")]
    pub bootstrap_size: usize,
    pub p_value: f64,
    pub seed: u64,
    pub stream: u64,
    pub reject_at: Vec<LevelDecision>,
    pub warnings: Vec<String>,
    /// Bootstrap slopes in replicate order.
    #[serde(skip)]
    pub replicates: Vec<f64>,
}

impl GofTestResult {
    /// Decision at `level` computed from the p-value.
    pub fn rejects(&self, level: f64) -> bool {
        self.p_value <= level
    }
}

/// Add-one bootstrap p-value: `(1 + #{|b*| >= |b|}) / (M + 1)`.
pub fn bootstrap_p_value(observed: f64, replicates: &[f64]) -> f64 {
    let extreme = replicates.iter().filter(|b| b.abs() >= observed.abs()).count();
    (1 + extreme) as f64 / (replicates.len() + 1) as f64
}

fn check_level(level: f64) -> Result<f64> {
    if level > 0.0 && level < 1.0 {
        Ok(level)
    } else {
        Err(Error::parameter("level", format!("must lie in (0, 1), got {level}")))
    }
}

/// Parametric-bootstrap test of the Pareto hypothesis.
///
/// Fits `alpha_hat` and the slope on `sample`, then draws `replicates`
/// samples of the same size from `Pareto(alpha_hat, 1)`. Replicate `r` uses
/// `stream.child(r)`, so the outcome does not depend on the thread count.
pub fn bootstrap_test(
    sample: &Sample,
    replicates: usize,
    stream: &RngStream,
    levels: &[f64],
) -> Result<GofTestResult> {
    let n = sample.len();
    if n < MIN_TEST_SIZE {
        return Err(Error::SampleSize { n, min: MIN_TEST_SIZE });
    }
    if replicates == 0 {
        return Err(Error::parameter("M", "at least one bootstrap replicate is required"));
    }
    for &level in levels {
        check_level(level)?;
    }

    let curve = empirical::lambda_curve(sample)?;
    let fit = regression_estimates(&curve, n)?;
    let mut warnings = Vec::new();
    if fit.alpha_hat <= 1.0 {
        warnings.push(format!(
            "alpha_hat = {} <= 1: the fitted law has no finite mean",
            fit.alpha_hat
        ));
    }

    let null = DistributionSpec::pareto(fit.alpha_hat, 1.0)?;
    let kernel = SlopeKernel::new(n);
    let slopes: Vec<f64> = (0..replicates as u64)
        .into_par_iter()
        .map_init(
            || (vec![0.0; n], Vec::with_capacity(fit.m)),
            |(values, scratch), r| {
                null.fill(&mut stream.child(r).generator(), values);
                kernel.slope(values, scratch)
            },
        )
        .collect();

    let p_value = bootstrap_p_value(fit.beta1_hat, &slopes);
    Ok(GofTestResult {
        n,
        m: fit.m,
        alpha_hat: fit.alpha_hat,
        beta0_hat: fit.beta0_hat,
        beta1_observed: fit.beta1_hat,
        bootstrap_size: replicates,
        p_value,
        seed: stream.seed(),
        stream: stream.stream(),
        reject_at: levels
            .iter()
            .map(|&level| LevelDecision {
                level,
                reject: p_value <= level,
            })
            .collect(),
        warnings,
        replicates: slopes,
    })
}
