//! Estimation of the Zenga inequality curve and a parametric-bootstrap
//! goodness-of-fit test for the Type I Pareto distribution.
//!
//! The curve `lambda(p) = 1 - ln(1 - L(p)) / ln(1 - p)`, with `L` the Lorenz
//! curve, is constant at `1/alpha` exactly when the data are Pareto. The test
//! regresses the estimated curve on `p` and rejects when the slope is large
//! compared with slopes of samples drawn from the fitted Pareto law.

pub mod distributions;
pub mod empirical;
pub mod error;
pub mod gof;
pub mod ingest;
pub mod power;
pub mod rng;

pub use distributions::{DistributionSpec, Family};
pub use empirical::{LambdaCurve, Sample};
pub use error::{Error, Result};
pub use gof::{GofTestResult, RegressionEstimates};
pub use power::{PowerEntry, PowerStudyConfig, PowerTable};
pub use rng::RngStream;
