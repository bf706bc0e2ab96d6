//! Plug-in estimates of the distribution function, the first incomplete
//! moment, the Lorenz curve and the inequality curve.

use crate::distributions::open_unit;
use crate::error::{Error, Result};

/// Smallest sample size with at least one curve point.
pub const MIN_CURVE_SIZE: usize = 2;

/// A sample of strictly positive observations, held as order statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    /// `cumulative[i]` is the sum of the `i + 1` smallest observations.
    cumulative: Vec<f64>,
}

impl Sample {
    /// Sorts `values` ascending. Fails on an empty input or on any value that
    /// is not finite and strictly positive.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::SampleSize { n: 0, min: 1 });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::Data { index, value });
        }
        values.sort_unstable_by(f64::total_cmp);
        let cumulative: Vec<f64> = values
            .iter()
            .scan(0.0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        let total = *cumulative.last().expect("non-empty");
        if !total.is_finite() {
            return Err(Error::parameter("sample", "the sum of the observations overflows"));
        }
        Ok(Self { values, cumulative })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Order statistics, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sum `T` of all observations.
    pub fn total(&self) -> f64 {
        self.cumulative[self.cumulative.len() - 1]
    }

    /// Sum of the `i` smallest observations.
    pub fn partial_sum(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.cumulative[i - 1]
        }
    }

    /// Every observation multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::parameter("factor", format!("must be finite and > 0, got {factor}")));
        }
        Self::new(self.values.iter().map(|x| x * factor).collect())
    }

    fn count_at_most(&self, x: f64) -> usize {
        self.values.partition_point(|&v| v <= x)
    }
}

/// Fraction of observations `<= x`.
pub fn ecdf(sample: &Sample, x: f64) -> f64 {
    sample.count_at_most(x) as f64 / sample.len() as f64
}

/// Share of the total carried by observations `<= x`.
pub fn incomplete_moment(sample: &Sample, x: f64) -> f64 {
    sample.partial_sum(sample.count_at_most(x)) / sample.total()
}

/// Index `i` with `i/n <= p < (i+1)/n`.
fn step_index(p: f64, n: usize) -> usize {
    let nf = n as f64;
    let mut i = (p * nf).floor() as usize;
    // `p * n` can land one ulp on the wrong side of an integer.
    if i > 0 && i as f64 / nf > p {
        i -= 1;
    } else if i + 1 < n && (i + 1) as f64 / nf <= p {
        i += 1;
    }
    i.min(n - 1)
}

/// Empirical Lorenz curve: the share of the total held by the `i` smallest
/// observations, where `i/n <= p < (i+1)/n`. Zero for `p < 1/n`.
///
/// On the grid `p = i/n` of a tie-free sample this is
/// `incomplete_moment(sample, X_(i))`.
pub fn lorenz_empirical(sample: &Sample, p: f64) -> Result<f64> {
    open_unit("p", p)?;
    Ok(sample.partial_sum(step_index(p, sample.len())) / sample.total())
}

/// Number of curve points for a sample of size `n`: `n - floor(sqrt(n))`.
pub fn curve_points(n: usize) -> usize {
    n - n.isqrt()
}

/// `ln(1 - i/n)` for `i = 1..=m`.
pub(crate) fn log_survival_grid(n: usize, m: usize) -> Vec<f64> {
    let nf = n as f64;
    (1..=m).map(|i| (-(i as f64 / nf)).ln_1p()).collect()
}

/// Writes the curve estimates of an ascending sample into `out`, one per
/// entry of `log_survival`.
pub(crate) fn lambda_values(sorted: &[f64], log_survival: &[f64], out: &mut Vec<f64>) {
    let total: f64 = sorted.iter().sum();
    out.clear();
    let mut partial = 0.0;
    for (x, log_q) in sorted.iter().zip(log_survival) {
        partial += x;
        let lorenz = partial / total;
        out.push(1.0 - (-lorenz).ln_1p() / log_q);
    }
}

/// Estimated inequality curve `(p_i, lambda_i)` for `p_i = i/n`, `i = 1..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaCurve {
    n: usize,
    p: Vec<f64>,
    lambda_hat: Vec<f64>,
}

impl LambdaCurve {
    /// Size of the sample the curve was estimated from.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, `n - floor(sqrt(n))`.
    pub fn m(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn lambda_hat(&self) -> &[f64] {
        &self.lambda_hat
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.p.iter().copied().zip(self.lambda_hat.iter().copied())
    }

    /// A curve with arbitrary ordinates on the grid of size `n`; mostly useful
    /// for exercising the regression on synthetic input.
    pub fn from_values(n: usize, lambda_hat: Vec<f64>) -> Result<Self> {
        let m = curve_points(n);
        if lambda_hat.len() != m {
            return Err(Error::parameter(
                "lambda_hat",
                format!("expected {m} ordinates for n = {n}, got {}", lambda_hat.len()),
            ));
        }
        if let Some((index, &value)) = lambda_hat.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Data { index, value });
        }
        let nf = n as f64;
        let p = (1..=m).map(|i| i as f64 / nf).collect();
        Ok(Self { n, p, lambda_hat })
    }
}

/// Estimates the inequality curve on `p_i = i/n`, `i = 1..=n - floor(sqrt(n))`.
pub fn lambda_curve(sample: &Sample) -> Result<LambdaCurve> {
    let n = sample.len();
    if n < MIN_CURVE_SIZE {
        return Err(Error::SampleSize { n, min: MIN_CURVE_SIZE });
    }
    let m = curve_points(n);
    let log_survival = log_survival_grid(n, m);
    let mut lambda_hat = Vec::with_capacity(m);
    lambda_values(sample.values(), &log_survival, &mut lambda_hat);
    let nf = n as f64;
    let p = (1..=m).map(|i| i as f64 / nf).collect();
    Ok(LambdaCurve { n, p, lambda_hat })
}
