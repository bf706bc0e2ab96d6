//! The Pareto null, the alternatives of the power study, and their samplers.

use std::fmt;
use std::str::FromStr;

use rand::distr::{Distribution, Open01};
use rand::Rng;
use rand_distr::{Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Parameters of one distribution family. Build through [`DistributionSpec`],
/// which rejects non-positive parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Type I Pareto, `F(x) = 1 - (x/x0)^-alpha` on `x >= x0`.
    Pareto { alpha: f64, x0: f64 },
    /// `exp(sigma * Z)` with `Z` standard normal.
    LogNormal { sigma: f64 },
    /// Unit-rate exponential.
    Exponential,
    /// Gamma with the given shape and unit scale.
    Gamma { shape: f64 },
    /// `exp(W)` with `W ~ Weibull(shape 1 + theta, scale 1)`, so that
    /// `F(x) = 1 - exp(-(ln x)^(1 + theta))` on `x >= 1`. `theta -> 0` is Pareto(1, 1).
    LogWeibull { theta: f64 },
}

/// A validated distribution.
///
/// Parses from and prints as the compact form used by the CLI and study
/// configs: `pareto:2:1`, `lognormal:2.5`, `exp`, `gamma:2`, `logweibull:0.5`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DistributionSpec(Family);

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::parameter(name, format!("must be finite and > 0, got {value}")))
    }
}

impl DistributionSpec {
    pub fn new(family: Family) -> Result<Self> {
        match family {
            Family::Pareto { alpha, x0 } => {
                positive("alpha", alpha)?;
                positive("x0", x0)?;
            }
            Family::LogNormal { sigma } => {
                positive("sigma", sigma)?;
            }
            Family::Exponential => {}
            Family::Gamma { shape } => {
                positive("shape", shape)?;
            }
            Family::LogWeibull { theta } => {
                positive("theta", theta)?;
            }
        }
        Ok(Self(family))
    }

    pub fn pareto(alpha: f64, x0: f64) -> Result<Self> {
        Self::new(Family::Pareto { alpha, x0 })
    }

    pub fn lognormal(sigma: f64) -> Result<Self> {
        Self::new(Family::LogNormal { sigma })
    }

    pub fn exponential() -> Self {
        Self(Family::Exponential)
    }

    pub fn gamma(shape: f64) -> Result<Self> {
        Self::new(Family::Gamma { shape })
    }

    pub fn log_weibull(theta: f64) -> Result<Self> {
        Self::new(Family::LogWeibull { theta })
    }

    pub fn family(&self) -> Family {
        self.0
    }

    /// Short column label in the style of the power table: `Pa(2)`, `LN(2.5)`,
    /// `Exp`, `Ga(2)`, `LW(0.25)`.
    pub fn label(&self) -> String {
        match self.0 {
            Family::Pareto { alpha, x0: 1.0 } => format!("Pa({alpha})"),
            Family::Pareto { alpha, x0 } => format!("Pa({alpha},{x0})"),
            Family::LogNormal { sigma } => format!("LN({sigma})"),
            Family::Exponential => "Exp".to_string(),
            Family::Gamma { shape } => format!("Ga({shape})"),
            Family::LogWeibull { theta } => format!("LW({theta})"),
        }
    }

    /// Draws one variate.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.0 {
            Family::Pareto { alpha, x0 } => pareto_inverse(rng.random::<f64>(), alpha, x0),
            Family::LogNormal { sigma } => {
                let z: f64 = rng.sample(StandardNormal);
                (sigma * z).exp()
            }
            Family::Exponential => unit_exponential(rng),
            Family::Gamma { shape } => Gamma::new(shape, 1.0)
                .expect("shape validated at construction")
                .sample(rng),
            Family::LogWeibull { theta } => unit_exponential(rng).powf(1.0 / (1.0 + theta)).exp(),
        }
    }

    /// Fills `out` with independent variates.
    pub fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self.0 {
            // Construct the sampler once rather than per draw.
            Family::Gamma { shape } => {
                let gamma = Gamma::new(shape, 1.0).expect("shape validated at construction");
                for x in out.iter_mut() {
                    *x = gamma.sample(rng);
                }
            }
            _ => {
                for x in out.iter_mut() {
                    *x = self.draw(rng);
                }
            }
        }
    }

    /// Draws a sample of size `n` from the start of `stream`.
    pub fn sample(&self, n: usize, stream: &RngStream) -> Result<Sample> {
        if n == 0 {
            return Err(Error::SampleSize { n, min: 1 });
        }
        let mut values = vec![0.0; n];
        self.fill(&mut stream.generator(), &mut values);
        Sample::new(values)
    }
}

/// `-ln(1 - U)` with `U` uniform on the open interval, so the result is never 0.
fn unit_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    -(-u).ln_1p()
}

#[inline]
fn pareto_inverse(u: f64, alpha: f64, x0: f64) -> f64 {
    x0 * (1.0 - u).powf(-1.0 / alpha)
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Family::Pareto { alpha, x0 } => write!(f, "pareto:{alpha}:{x0}"),
            Family::LogNormal { sigma } => write!(f, "lognormal:{sigma}"),
            Family::Exponential => write!(f, "exp"),
            Family::Gamma { shape } => write!(f, "gamma:{shape}"),
            Family::LogWeibull { theta } => write!(f, "logweibull:{theta}"),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownDistribution(s.to_string());
        let mut parts = s.trim().split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params = parts
            .map(|p| p.trim().parse::<f64>().map_err(|_| unknown()))
            .collect::<Result<Vec<f64>>>()?;
        match (name.as_str(), params.as_slice()) {
            ("pareto", [alpha]) => Self::pareto(*alpha, 1.0),
            ("pareto", [alpha, x0]) => Self::pareto(*alpha, *x0),
            ("lognormal", [sigma]) => Self::lognormal(*sigma),
            ("exp", []) => Ok(Self::exponential()),
            ("gamma", [shape]) => Self::gamma(*shape),
            ("logweibull", [theta]) => Self::log_weibull(*theta),
            _ => Err(unknown()),
        }
    }
}

impl TryFrom<String> for DistributionSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DistributionSpec> for String {
    fn from(spec: DistributionSpec) -> String {
        spec.to_string()
    }
}

/// Type I Pareto distribution function.
pub fn pareto_cdf(x: f64, alpha: f64, x0: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    positive("x0", x0)?;
    if x.is_nan() {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "the real line",
        });
    }
    if x < x0 {
        return Ok(0.0);
    }
    Ok(1.0 - (x / x0).powf(-alpha))
}

/// Inverse of [`pareto_cdf`] on `[0, 1)`.
pub fn pareto_quantile(u: f64, alpha: f64, x0: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    positive("x0", x0)?;
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain {
            what: "u",
            value: u,
            domain: "[0, 1)",
        });
    }
    Ok(pareto_inverse(u, alpha, x0))
}

/// The constant level `1/alpha` of the inequality curve of a Pareto law.
pub fn pareto_lambda_theoretical(alpha: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    Ok(1.0 / alpha)
}

/// Lorenz curve of a Pareto law with finite mean: `1 - (1 - p)^(1 - 1/alpha)`.
pub fn pareto_lorenz(p: f64, alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::parameter("alpha", format!("the mean is finite only for alpha > 1, got {alpha}")));
    }
    open_unit("p", p)?;
    Ok(-((1.0 - 1.0 / alpha) * (-p).ln_1p()).exp_m1())
}

/// Inequality curve value from a Lorenz ordinate: `1 - ln(1 - L(p)) / ln(1 - p)`.
pub fn zenga_lambda(p: f64, lorenz: f64) -> Result<f64> {
    open_unit("p", p)?;
    if !(0.0..1.0).contains(&lorenz) {
        return Err(Error::Domain {
            what: "L(p)",
            value: lorenz,
            domain: "[0, 1)",
        });
    }
    Ok(1.0 - (-lorenz).ln_1p() / (-p).ln_1p())
}

pub(crate) fn open_unit(what: &'static str, p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::Domain {
            what,
            value: p,
            domain: "(0, 1)",
        })
    }
}
