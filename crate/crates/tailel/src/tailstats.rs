//! Order statistics, scaled log-spacings, and Hill's estimator.

use crate::error::{Error, Result};

/// Positive observations together with their ascending order statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
    rejected: usize,
}

impl Sample {
    /// Build a sample from raw observations.
    ///
    /// Entries that are not finite or not strictly positive are dropped and
    /// counted in [`Sample::rejected`] (logs are taken downstream, so the
    /// model's domain is x > 0). Errors only if nothing survives.
    pub fn new(raw: &[f64]) -> Result<Self> {
        let values: Vec<f64> = raw
            .iter()
            .copied()
            .filter(|v| v.is_finite() && *v > 0.0)
            .collect();
        let rejected = raw.len() - values.len();
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut sorted = values.clone();
        sorted.sort_unstable_by(f64::total_cmp);
        Ok(Self {
            values,
            sorted,
            rejected,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Accepted values in input order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Ascending order statistics.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// How many raw entries were filtered out.
    pub fn rejected(&self) -> usize {
        self.rejected
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Range(format!(
            "need at least 2 observations, have {n}"
        )));
    }
    if k < 1 || k > n - 1 {
        return Err(Error::Range(format!(
            "k must satisfy 1 <= k <= n-1 = {}, got {k}",
            n - 1
        )));
    }
    Ok(())
}

/// Hill's estimator: the average log-excess of the top `k` order statistics
/// over the `(k+1)`-th largest.
pub fn hill(sample: &Sample, k: usize) -> Result<f64> {
    check_k(sample.n(), k)?;
    let s = sample.sorted();
    let n = s.len();
    let base = s[n - 1 - k].ln();
    let mean_log: f64 = s[n - k..].iter().map(|x| x.ln()).sum::<f64>() / k as f64;
    // Ties make this exactly zero; clamp shields the subtraction from
    // producing -0.0-scale rounding noise.
    Ok((mean_log - base).max(0.0))
}

/// The vector `y_i = i (ln X_{n,n-i+1} - ln X_{n,n-i})`, `i = 1..k`, plus the
/// Hill estimate it implies (`mean(y)`, by the telescoping identity).
#[derive(Debug, Clone, PartialEq)]
pub struct LogSpacings {
    k: usize,
    y: Vec<f64>,
    hill: f64,
}

impl LogSpacings {
    /// Wrap a spacings vector produced elsewhere (e.g. exact exponential
    /// draws in oracle tests). Entries must be finite and nonnegative.
    pub fn from_y(y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::Range("spacings vector must be nonempty".into()));
        }
        if y.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Parameter(
                "spacings must be finite and nonnegative".into(),
            ));
        }
        let hill = y.iter().sum::<f64>() / y.len() as f64;
        Ok(Self { k: y.len(), y, hill })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Hill estimate implied by the spacings.
    pub fn hill(&self) -> f64 {
        self.hill
    }
}

/// Scaled log-spacings of the top `k + 1` order statistics.
pub fn log_spacings(sample: &Sample, k: usize) -> Result<LogSpacings> {
    check_k(sample.n(), k)?;
    let s = sample.sorted();
    let n = s.len();
    let y: Vec<f64> = (1..=k)
        .map(|i| i as f64 * (s[n - i].ln() - s[n - i - 1].ln()))
        .collect();
    let hill = y.iter().sum::<f64>() / k as f64;
    Ok(LogSpacings { k, y, hill })
}

/// Hill estimates over the arithmetic grid `k_min, k_min+k_step, ..<= k_max`.
pub fn hill_series(
    sample: &Sample,
    k_min: usize,
    k_max: usize,
    k_step: usize,
) -> Result<Vec<(usize, f64)>> {
    if k_step < 1 {
        return Err(Error::Range("k step must be at least 1".into()));
    }
    if k_min > k_max {
        return Err(Error::Range(format!(
            "empty k grid: {k_min} > {k_max}"
        )));
    }
    check_k(sample.n(), k_min)?;
    check_k(sample.n(), k_max)?;
    (k_min..=k_max)
        .step_by(k_step)
        .map(|k| hill(sample, k).map(|h| (k, h)))
        .collect()
}
