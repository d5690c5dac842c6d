//! EL and AEL log-likelihood-ratio statistics at a candidate γ.
//!
//! Both statistics reduce to a scalar Lagrange-multiplier equation over the
//! centered spacings `y_i - γ` (plus, for AEL, one pseudo-observation
//! `-a_n (γ̂ - γ)` that keeps the mean constraint feasible at every γ):
//!
//! ```text
//!   Σ z_i / (1 + λ z_i) = 0,      l = 2 Σ ln(1 + λ z_i)
//! ```
//!
//! The equation's left side is strictly decreasing in λ on the interval
//! where all weights stay positive, so a bracketing solve cannot miss.

use crate::error::{Error, Result};
use crate::solve::brent;
use crate::tailstats::LogSpacings;

/// Adjustment applied before the EL solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AdjustmentPolicy {
    /// Plain EL: no pseudo-observation.
    None,
    /// `a_n = max(1, ln(k)/2)`, the general-purpose recommendation.
    ChenLog,
    /// `a_n = 19/12`, Bartlett-optimal for exponential spacings.
    BartlettExp,
    /// User-supplied positive constant.
    Fixed(f64),
}

impl AdjustmentPolicy {
    /// Resolved factor `a_n` at sample fraction `k`; the `None` policy has
    /// no factor.
    pub fn factor(self, k: usize) -> Result<Option<f64>> {
        if k < 1 {
            return Err(Error::Range("k must be at least 1".into()));
        }
        match self {
            Self::None => Ok(None),
            Self::ChenLog => Ok(Some(((k as f64).ln() / 2.0).max(1.0))),
            Self::BartlettExp => Ok(Some(19.0 / 12.0)),
            Self::Fixed(c) => {
                if c.is_finite() && c > 0.0 {
                    Ok(Some(c))
                } else {
                    Err(Error::Parameter(format!(
                        "fixed adjustment factor must be a positive real, got {c}"
                    )))
                }
            }
        }
    }
}

/// Numeric `a_n` per the policy table; errors for the plain-EL policy.
pub fn resolve_adjustment(policy: AdjustmentPolicy, k: usize) -> Result<f64> {
    policy.factor(k)?.ok_or_else(|| {
        Error::Parameter("plain EL has no adjustment factor to resolve".into())
    })
}

/// Result of evaluating the EL or AEL ratio statistic at one γ.
#[derive(Debug, Clone)]
pub struct ElEvaluation {
    /// `-2 log` likelihood ratio; `+inf` when the constraint set is empty.
    pub statistic: f64,
    /// Lagrange multiplier at the optimum; NaN when undefined.
    pub lambda: f64,
    /// Optimal probability weights (`k` entries for EL, `k + 1` for AEL);
    /// empty when undefined.
    pub weights: Vec<f64>,
    /// The centered pseudo-observation, when the policy appends one.
    pub pseudo_point: Option<f64>,
    /// False iff zero lies outside the open hull of the working points,
    /// which can only happen for plain EL.
    pub defined: bool,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "candidate gamma must be a positive real, got {gamma}"
        )))
    }
}

/// Centered spacings `y_i(γ) = y_i - γ`.
pub fn centered(spacings: &LogSpacings, gamma: f64) -> Result<Vec<f64>> {
    check_gamma(gamma)?;
    Ok(spacings.y().iter().map(|y| y - gamma).collect())
}

/// The AEL pseudo-observation `-a_n (γ̂ - γ)`: opposite in sign to the mean
/// of the centered sample, zero exactly at `γ = γ̂`.
pub fn pseudo_point(
    spacings: &LogSpacings,
    gamma: f64,
    policy: AdjustmentPolicy,
) -> Result<f64> {
    check_gamma(gamma)?;
    let a = resolve_adjustment(policy, spacings.k())?;
    Ok(-a * (spacings.hill() - gamma))
}

/// Solve `Σ z_i/(1 + λ z_i) = 0` for λ and return `(λ, statistic)`.
///
/// Caller guarantees `min z < 0 < max z`. The root lies strictly inside
/// `((1/m - 1)/z_max, (1/m - 1)/z_min)`: every optimal weight is below 1,
/// which pins `1 + λ z_i > 1/m` at the extremes. The objective is finite
/// and sign-changing on that closed bracket, so it feeds straight into
/// Brent; a short Newton polish then drives the residual to rounding level.
fn solve_lambda(z: &[f64]) -> (f64, f64) {
    let m = z.len() as f64;
    let z_max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let z_min = z.iter().copied().fold(f64::INFINITY, f64::min);
    debug_assert!(z_min < 0.0 && z_max > 0.0);

    let g = |lam: f64| z.iter().map(|zi| zi / (1.0 + lam * zi)).sum::<f64>();

    let mut lo = (1.0 / m - 1.0) / z_max;
    let mut hi = (1.0 / m - 1.0) / z_min;
    let mut glo = g(lo);
    let mut ghi = g(hi);
    // Rounding at the bracket ends can flip a sign when an optimal weight
    // sits at 1 - ulp; walk toward the feasibility limits -1/z_max, -1/z_min.
    let mut widen = 0;
    while glo <= 0.0 && widen < 64 {
        lo = 0.5 * (lo + (-1.0 / z_max));
        glo = g(lo);
        widen += 1;
    }
    while ghi >= 0.0 && widen < 128 {
        hi = 0.5 * (hi + (-1.0 / z_min));
        ghi = g(hi);
        widen += 1;
    }
    let mut lam = if glo <= 0.0 {
        lo
    } else if ghi >= 0.0 {
        hi
    } else {
        brent(g, lo, hi, glo, ghi, 1e-12, 1e-12, 200)
    };

    // Newton polish inside the feasibility interval.
    let feas_lo = -1.0 / z_max;
    let feas_hi = -1.0 / z_min;
    for _ in 0..4 {
        let mut val = 0.0;
        let mut deriv = 0.0;
        for &zi in z {
            let t = zi / (1.0 + lam * zi);
            val += t;
            deriv -= t * t;
        }
        if val == 0.0 || deriv == 0.0 {
            break;
        }
        let cand = lam - val / deriv;
        if !(cand > feas_lo && cand < feas_hi) {
            break;
        }
        lam = cand;
    }

    let statistic = 2.0 * z.iter().map(|zi| (lam * zi).ln_1p()).sum::<f64>();
    (lam, statistic)
}

fn uniform_evaluation(m: usize, pseudo: Option<f64>) -> ElEvaluation {
    ElEvaluation {
        statistic: 0.0,
        lambda: 0.0,
        weights: vec![1.0 / m as f64; m],
        pseudo_point: pseudo,
        defined: true,
    }
}

fn undefined_evaluation(pseudo: Option<f64>) -> ElEvaluation {
    ElEvaluation {
        statistic: f64::INFINITY,
        lambda: f64::NAN,
        weights: Vec::new(),
        pseudo_point: pseudo,
        defined: false,
    }
}

/// Evaluate the EL (`policy = None`) or AEL ratio statistic at `gamma`.
///
/// An empty constraint set (possible only for plain EL, when the centered
/// points all share one strict sign) is reported in-band as
/// `defined = false` with `statistic = +inf`, so interval inversion can
/// treat such γ as rejected.
pub fn el_statistic(
    spacings: &LogSpacings,
    gamma: f64,
    policy: AdjustmentPolicy,
) -> Result<ElEvaluation> {
    check_gamma(gamma)?;
    let k = spacings.k();
    if matches!(policy, AdjustmentPolicy::None) && k < 2 {
        return Err(Error::Range(format!("plain EL needs k >= 2, got {k}")));
    }

    let mut z = centered(spacings, gamma)?;
    let pseudo = match policy.factor(k)? {
        Some(a) => {
            let p = -a * (spacings.hill() - gamma);
            z.push(p);
            Some(p)
        }
        None => None,
    };

    if z.iter().all(|&zi| zi == 0.0) {
        // Every y_i equals gamma: uniform weights already satisfy the
        // constraint.
        return Ok(uniform_evaluation(z.len(), pseudo));
    }

    let z_max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let z_min = z.iter().copied().fold(f64::INFINITY, f64::min);
    if !(z_min < 0.0 && z_max > 0.0) {
        if pseudo.is_some() {
            // With a pseudo-point the hull condition can only fail through
            // rounding at gamma == hill; the statistic there is zero.
            let scale = gamma.abs().max(1.0);
            if z.iter().all(|zi| zi.abs() <= 1e-10 * scale) {
                return Ok(uniform_evaluation(z.len(), pseudo));
            }
        }
        return Ok(undefined_evaluation(pseudo));
    }

    let (lambda, statistic) = solve_lambda(&z);
    let m = z.len() as f64;
    let weights = z.iter().map(|zi| 1.0 / (m * (1.0 + lambda * zi))).collect();
    Ok(ElEvaluation {
        statistic,
        lambda,
        weights,
        pseudo_point: pseudo,
        defined: true,
    })
}
