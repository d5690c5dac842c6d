//! Confidence intervals for γ: normal approximation (self-normalized and
//! conventional) and EL/AEL likelihood-ratio inversion.

// The PPND16 coefficient tables and the frozen quantile test values are
// transcribed digit-for-digit from their sources.
#![allow(clippy::excessive_precision)]

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::likelihood::{el_statistic, AdjustmentPolicy};
use crate::solve::brent;
use crate::tailstats::LogSpacings;

/// The five interval constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    /// Inverts the pivot `(γ̂ - γ)/γ`: `(γ̂/(1 + z/√k), γ̂/(1 - z/√k))`.
    NormalSelfNorm,
    /// Inverts `(γ̂ - γ)/γ̂`: `γ̂ ∓ z γ̂/√k`.
    NormalConventional,
    /// Empirical-likelihood inversion.
    El,
    /// AEL inversion with `a_n = max(1, ln(k)/2)`.
    AelChen,
    /// AEL inversion with `a_n = 19/12`.
    AelBartlett,
}

impl MethodKind {
    pub const ALL: [MethodKind; 5] = [
        MethodKind::NormalSelfNorm,
        MethodKind::NormalConventional,
        MethodKind::El,
        MethodKind::AelChen,
        MethodKind::AelBartlett,
    ];

    /// Stable name used in CSV columns and CLI flags.
    pub fn name(self) -> &'static str {
        match self {
            Self::NormalSelfNorm => "normal",
            Self::NormalConventional => "normal-conv",
            Self::El => "el",
            Self::AelChen => "ael-chen",
            Self::AelBartlett => "ael-bartlett",
        }
    }

    /// Adjustment policy backing the EL-family methods.
    pub fn policy(self) -> Option<AdjustmentPolicy> {
        match self {
            Self::El => Some(AdjustmentPolicy::None),
            Self::AelChen => Some(AdjustmentPolicy::ChenLog),
            Self::AelBartlett => Some(AdjustmentPolicy::BartlettExp),
            _ => None,
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "normal" => Ok(Self::NormalSelfNorm),
            "normal-conv" => Ok(Self::NormalConventional),
            "el" => Ok(Self::El),
            "ael-chen" => Ok(Self::AelChen),
            "ael-bartlett" => Ok(Self::AelBartlett),
            other => Err(Error::Parse(format!(
                "unknown method {other:?}; expected one of normal, normal-conv, el, ael-chen, ael-bartlett"
            ))),
        }
    }
}

impl Serialize for MethodKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Parse a comma-separated method list, e.g. `"normal,el,ael-bartlett"`.
pub fn parse_methods(s: &str) -> Result<Vec<MethodKind>> {
    let methods = s
        .split(',')
        .map(MethodKind::from_str)
        .collect::<Result<Vec<_>>>()?;
    if methods.is_empty() {
        return Err(Error::Parse("empty method list".into()));
    }
    let mut seen = Vec::new();
    for m in methods {
        if !seen.contains(&m) {
            seen.push(m);
        }
    }
    Ok(seen)
}

/// One confidence interval for γ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub method: MethodKind,
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
    /// `upper - lower` (`+inf` for an unbounded interval).
    pub length: f64,
    /// True when a boundary or floor bound was substituted for a genuine
    /// threshold crossing.
    pub degenerate: bool,
    /// Hill estimate the interval is centered on.
    pub point_estimate: f64,
}

impl ConfidenceInterval {
    fn new(
        method: MethodKind,
        level: f64,
        lower: f64,
        upper: f64,
        degenerate: bool,
        point_estimate: f64,
    ) -> Self {
        Self {
            method,
            level,
            lower,
            upper,
            length: upper - lower,
            degenerate,
            point_estimate,
        }
    }

    pub fn contains(&self, gamma: f64) -> bool {
        self.lower <= gamma && gamma <= self.upper
    }
}

// Coefficients of the rational approximations in Wichura's PPND16
// (algorithm AS 241), accurate to ~1e-16 over (0, 1).
const PPND16_A: [f64; 8] = [
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
];
const PPND16_B: [f64; 7] = [
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
];
const PPND16_C: [f64; 8] = [
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
];
const PPND16_D: [f64; 7] = [
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
];
const PPND16_E: [f64; 8] = [
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
];
const PPND16_F: [f64; 7] = [
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-5,
    1.42151175831644588870e-7,
    2.04426310338993978564e-15,
];

fn ppnd16_ratio(r: f64, num: &[f64; 8], den: &[f64; 7]) -> f64 {
    let mut p = num[7];
    for c in num[..7].iter().rev() {
        p = p * r + c;
    }
    let mut q = den[6];
    for c in den[..6].iter().rev() {
        q = q * r + c;
    }
    p / (q * r + 1.0)
}

/// Standard normal quantile `Φ⁻¹(p)` (Wichura's AS 241).
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "normal quantile argument must lie in (0, 1), got {p}"
        )));
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return Ok(q * ppnd16_ratio(r, &PPND16_A, &PPND16_B));
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = (-r.ln()).sqrt();
    let x = if r <= 5.0 {
        ppnd16_ratio(r - 1.6, &PPND16_C, &PPND16_D)
    } else {
        ppnd16_ratio(r - 5.0, &PPND16_E, &PPND16_F)
    };
    Ok(if q < 0.0 { -x } else { x })
}

/// χ²₁ quantile: the square of the matching normal quantile,
/// `chi_sq1_quantile(1 - α) = normal_quantile(1 - α/2)²`.
pub fn chi_sq1_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "chi-square quantile argument must lie in (0, 1), got {p}"
        )));
    }
    let z = normal_quantile(0.5 * (1.0 + p))?;
    Ok(z * z)
}

fn check_level(level: f64) -> Result<()> {
    if level.is_finite() && level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )))
    }
}

/// Normal-approximation interval around the Hill estimate.
///
/// Self-normalized form (`conventional = false`): finite only for
/// `k > z²`; otherwise the upper limit is `+inf` and the interval is
/// flagged degenerate. Conventional form: the lower limit is floored at 0,
/// flagged when the floor binds.
pub fn normal_interval(
    spacings: &LogSpacings,
    level: f64,
    conventional: bool,
) -> Result<ConfidenceInterval> {
    check_level(level)?;
    let hill = spacings.hill();
    let z = normal_quantile(0.5 * (1.0 + level))?;
    let q = z / (spacings.k() as f64).sqrt();
    let method = if conventional {
        MethodKind::NormalConventional
    } else {
        MethodKind::NormalSelfNorm
    };
    if conventional {
        let raw_lower = hill * (1.0 - q);
        let floored = raw_lower < 0.0;
        Ok(ConfidenceInterval::new(
            method,
            level,
            raw_lower.max(0.0),
            hill * (1.0 + q),
            floored,
            hill,
        ))
    } else {
        let lower = hill / (1.0 + q);
        if q < 1.0 {
            Ok(ConfidenceInterval::new(
                method,
                level,
                lower,
                hill / (1.0 - q),
                false,
                hill,
            ))
        } else {
            Ok(ConfidenceInterval::new(
                method,
                level,
                lower,
                f64::INFINITY,
                true,
                hill,
            ))
        }
    }
}

/// Endpoint search state for one flank of the EL/AEL inversion.
struct FlankCrossing {
    gamma: f64,
    degenerate: bool,
}

/// Walk from `γ̂` toward `boundary` through the geometric candidate
/// sequence, then refine the first threshold crossing with Brent.
/// `candidates` yields strictly-progressing γ values with
/// `stat(first prev) < threshold`.
fn find_crossing<S, I>(
    stat: &S,
    threshold: f64,
    start: f64,
    boundary: f64,
    candidates: I,
) -> FlankCrossing
where
    S: Fn(f64) -> f64,
    I: Iterator<Item = f64>,
{
    let mut prev = start;
    let mut f_prev = stat(prev) - threshold;
    for cand in candidates {
        if cand == prev {
            break;
        }
        let f_cand = stat(cand) - threshold;
        if f_cand >= 0.0 {
            let root = brent(
                |g| stat(g) - threshold,
                cand,
                prev,
                f_cand,
                f_prev,
                0.0,
                1e-10,
                100,
            );
            return FlankCrossing {
                gamma: root,
                degenerate: false,
            };
        }
        prev = cand;
        f_prev = f_cand;
    }
    FlankCrossing {
        gamma: boundary,
        degenerate: true,
    }
}

const EXPANSION: f64 = 1.25;
const MAX_STEPS: usize = 200;
/// AEL has no upper feasibility boundary; cap the outward search here.
const AEL_UPPER_CAP: f64 = 1e6;

/// Invert the EL (`policy = None`) or AEL ratio statistic: the connected
/// component of `{γ > 0 : l(γ) < χ²-threshold}` containing `γ̂`.
///
/// Plain EL is only defined on `(min y, max y)`; when the threshold is not
/// reached before that boundary, the boundary is returned and the interval
/// flagged degenerate. AEL is defined for every γ > 0; if the statistic
/// stays under the threshold out to `γ̂·1e6` (tiny k), the flank is
/// reported unbounded and degenerate.
pub fn el_interval(
    spacings: &LogSpacings,
    level: f64,
    policy: AdjustmentPolicy,
) -> Result<ConfidenceInterval> {
    check_level(level)?;
    let k = spacings.k();
    if k < 2 {
        return Err(Error::Range(format!(
            "interval inversion needs k >= 2, got {k}"
        )));
    }
    policy.factor(k)?;

    let method = match policy {
        AdjustmentPolicy::None => MethodKind::El,
        AdjustmentPolicy::ChenLog => MethodKind::AelChen,
        _ => MethodKind::AelBartlett,
    };
    let hill = spacings.hill();
    let y_min = spacings.y().iter().copied().fold(f64::INFINITY, f64::min);
    let y_max = spacings
        .y()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);

    if y_min == y_max {
        // All spacings equal: the statistic is zero only at hill itself.
        return Ok(ConfidenceInterval::new(method, level, hill, hill, true, hill));
    }

    let threshold = chi_sq1_quantile(level)?;
    let stat = |gamma: f64| -> f64 {
        el_statistic(spacings, gamma, policy)
            .map(|e| e.statistic)
            .unwrap_or(f64::INFINITY)
    };

    let plain_el = matches!(policy, AdjustmentPolicy::None);

    // Lower flank: approach the feasibility boundary geometrically.
    // Plain EL is undefined at or below min y; AEL runs down toward 0.
    let lo_boundary = if plain_el { y_min } else { 0.0 };
    let down = {
        let gap = hill - lo_boundary;
        let steps = (1..=MAX_STEPS).map(|j| lo_boundary + gap / EXPANSION.powi(j as i32));
        find_crossing(&stat, threshold, hill, lo_boundary, steps)
    };

    // Upper flank.
    let up = if plain_el {
        let gap = y_max - hill;
        let steps = (1..=MAX_STEPS).map(|j| y_max - gap / EXPANSION.powi(j as i32));
        find_crossing(&stat, threshold, hill, y_max, steps)
    } else {
        let cap = hill * AEL_UPPER_CAP;
        let steps = (1..=MAX_STEPS).map(|j| (hill * EXPANSION.powi(j as i32)).min(cap));
        find_crossing(&stat, threshold, hill, f64::INFINITY, steps)
    };

    Ok(ConfidenceInterval::new(
        method,
        level,
        down.gamma,
        up.gamma,
        down.degenerate || up.degenerate,
        hill,
    ))
}

/// Build the interval for one method.
pub fn interval_for(
    spacings: &LogSpacings,
    method: MethodKind,
    level: f64,
) -> Result<ConfidenceInterval> {
    match method {
        MethodKind::NormalSelfNorm => normal_interval(spacings, level, false),
        MethodKind::NormalConventional => normal_interval(spacings, level, true),
        _ => el_interval(spacings, level, method.policy().expect("EL-family method")),
    }
}

/// All five intervals in [`MethodKind::ALL`] order.
pub fn all_intervals(spacings: &LogSpacings, level: f64) -> Result<Vec<ConfidenceInterval>> {
    MethodKind::ALL
        .iter()
        .map(|&m| interval_for(spacings, m, level))
        .collect()
}
