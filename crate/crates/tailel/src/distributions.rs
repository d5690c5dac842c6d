//! Heavy-tailed test distributions with closed-form quantile functions.
//!
//! Fréchet and Burr are the simulation-study distributions; Pareto and
//! Exponential serve as exact oracles in tests (under Pareto the scaled
//! log-spacings are exactly i.i.d. exponential).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::{unit_open, StreamSeed};
use crate::tailstats::Sample;

/// A distribution family together with its parameters.
///
/// The textual form accepted by [`FromStr`] (and emitted by `Display`) is
/// `frechet:ALPHA`, `burr:ALPHA,BETA`, `pareto:GAMMA`, `exp:MEAN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    /// `F(x) = exp(-x^-alpha)` for x > 0; `γ = 1/alpha`.
    Frechet { alpha: f64 },
    /// `F(x) = 1 - (1 + x^alpha)^-beta` for x > 0; `γ = 1/(alpha·beta)`.
    Burr { alpha: f64, beta: f64 },
    /// `F(x) = 1 - x^(-1/gamma)` for x ≥ 1; `γ` is the tail index itself.
    Pareto { gamma: f64 },
    /// Exponential with the given mean. Not heavy-tailed; used only as an
    /// EL oracle where `true_gamma` is the mean.
    Exponential { mean: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        let valid = match *self {
            Self::Frechet { alpha } => ok(alpha),
            Self::Burr { alpha, beta } => ok(alpha) && ok(beta),
            Self::Pareto { gamma } => ok(gamma),
            Self::Exponential { mean } => ok(mean),
        };
        if valid {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "distribution parameters must be strictly positive and finite: {self:?}"
            )))
        }
    }

    /// The extreme-value index γ of the distribution (for `Exponential`,
    /// the mean — an EL oracle value, not a tail index).
    pub fn true_gamma(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Self::Frechet { alpha } => 1.0 / alpha,
            Self::Burr { alpha, beta } => 1.0 / (alpha * beta),
            Self::Pareto { gamma } => gamma,
            Self::Exponential { mean } => mean,
        })
    }

    /// Inverse CDF at `u ∈ (0, 1)`; strictly increasing in `u`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        self.validate()?;
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain(format!(
                "quantile argument must lie in (0, 1), got {u}"
            )));
        }
        Ok(match *self {
            Self::Frechet { alpha } => (-u.ln()).powf(-1.0 / alpha),
            Self::Burr { alpha, beta } => ((1.0 - u).powf(-1.0 / beta) - 1.0).powf(1.0 / alpha),
            Self::Pareto { gamma } => (1.0 - u).powf(-gamma),
            Self::Exponential { mean } => -mean * (1.0 - u).ln(),
        })
    }

    /// Value whose upper-tail probability is `s`; equals `quantile(1 - s)`
    /// but works directly in the survival scale, so deep-tail values keep
    /// full precision (no `1 - u` cancellation).
    fn quantile_survival(&self, s: f64) -> f64 {
        match *self {
            Self::Frechet { alpha } => (-(-s).ln_1p()).powf(-1.0 / alpha),
            Self::Burr { alpha, beta } => (s.powf(-1.0 / beta) - 1.0).powf(1.0 / alpha),
            Self::Pareto { gamma } => s.powf(-gamma),
            Self::Exponential { mean } => -mean * s.ln(),
        }
    }

    /// Closed-form CDF (0 below the support).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Self::Frechet { alpha } => {
                if x <= 0.0 {
                    0.0
                } else {
                    (-x.powf(-alpha)).exp()
                }
            }
            Self::Burr { alpha, beta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (1.0 + x.powf(alpha)).powf(-beta)
                }
            }
            Self::Pareto { gamma } => {
                if x <= 1.0 {
                    0.0
                } else {
                    1.0 - x.powf(-1.0 / gamma)
                }
            }
            Self::Exponential { mean } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x / mean).exp_m1()
                }
            }
        })
    }

    /// Draw `n` i.i.d. variates by inverse CDF on the seeded stream.
    /// Deterministic: the output depends only on `(self, n, seed)`.
    pub fn sample(&self, n: usize, seed: StreamSeed) -> Result<Sample> {
        self.validate()?;
        if n == 0 {
            return Err(Error::Parameter("sample size must be at least 1".into()));
        }
        let mut rng = seed.rng();
        let values: Vec<f64> = (0..n)
            .map(|_| self.quantile_survival(unit_open(&mut rng)))
            .collect();
        Sample::new(&values)
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Frechet { alpha } => write!(f, "frechet:{alpha}"),
            Self::Burr { alpha, beta } => write!(f, "burr:{alpha},{beta}"),
            Self::Pareto { gamma } => write!(f, "pareto:{gamma}"),
            Self::Exponential { mean } => write!(f, "exp:{mean}"),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected KIND:PARAMS, got {s:?}")))?;
        let values = params
            .split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad numeric parameter {p:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let spec = match (kind.trim().to_ascii_lowercase().as_str(), values.as_slice()) {
            ("frechet", &[alpha]) => Self::Frechet { alpha },
            ("burr", &[alpha, beta]) => Self::Burr { alpha, beta },
            ("pareto", &[gamma]) => Self::Pareto { gamma },
            ("exp", &[mean]) => Self::Exponential { mean },
            (kind, values) => {
                return Err(Error::Parse(format!(
                    "unknown distribution {kind:?} with {} parameter(s); expected \
                     frechet:A | burr:A,B | pareto:G | exp:M",
                    values.len()
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for DistributionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
