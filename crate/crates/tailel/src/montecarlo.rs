//! Monte Carlo coverage study: empirical coverage probability and average
//! interval length per (k, method) over a grid of sample fractions.
//!
//! Replications are the unit of parallelism. Each replication draws its
//! sample from stream `r` of the plan's base seed, so the report is a pure
//! function of the plan: worker count and scheduling cannot change a byte
//! of the output. Aggregation runs over fixed-size replication chunks that
//! are reduced in index order, keeping float sums associative-in-practice.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::intervals::{interval_for, MethodKind};
use crate::rng::StreamSeed;
use crate::tailstats::log_spacings;

/// Arithmetic grid of sample fractions, `min, min+step, ..<= max`.
///
/// Textual form `MIN:MAX:STEP`; a bare `K` abbreviates `K:K:1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KGrid {
    pub min: usize,
    pub max: usize,
    pub step: usize,
}

impl KGrid {
    pub fn new(min: usize, max: usize, step: usize) -> Result<Self> {
        let grid = Self { min, max, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.min < 1 || self.step < 1 || self.min > self.max {
            return Err(Error::Range(format!(
                "invalid k grid {self}: need 1 <= MIN <= MAX and STEP >= 1"
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<usize> {
        (self.min..=self.max).step_by(self.step).collect()
    }
}

impl fmt::Display for KGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.step)
    }
}

impl FromStr for KGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse = |p: &str| -> Result<usize> {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad k-grid field {p:?} in {s:?}")))
        };
        match parts.as_slice() {
            [single] => {
                let k = parse(single)?;
                KGrid::new(k, k, 1)
            }
            [min, max, step] => KGrid::new(parse(min)?, parse(max)?, parse(step)?),
            _ => Err(Error::Parse(format!(
                "expected K or MIN:MAX:STEP, got {s:?}"
            ))),
        }
    }
}

impl Serialize for KGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Everything needed to reproduce one coverage study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationPlan {
    pub dist: DistributionSpec,
    pub n: usize,
    pub reps: usize,
    pub k_grid: KGrid,
    pub level: f64,
    pub methods: Vec<MethodKind>,
    pub base_seed: u64,
}

impl SimulationPlan {
    pub fn validate(&self) -> Result<()> {
        self.dist.validate()?;
        self.k_grid.validate()?;
        if self.n < 2 {
            return Err(Error::Plan(format!("sample size must be >= 2, got {}", self.n)));
        }
        if self.reps < 1 {
            return Err(Error::Plan("need at least one replication".into()));
        }
        if self.k_grid.max > self.n - 1 {
            return Err(Error::Plan(format!(
                "k grid reaches {} but k must stay <= n-1 = {}",
                self.k_grid.max,
                self.n - 1
            )));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::Plan(format!(
                "level must lie in (0, 1), got {}",
                self.level
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::Plan("method list is empty".into()));
        }
        let el_family = self.methods.iter().any(|m| m.policy().is_some());
        if el_family && self.k_grid.min < 2 {
            return Err(Error::Plan(
                "EL-family methods need k >= 2; raise the k grid minimum".into(),
            ));
        }
        Ok(())
    }
}

/// Coverage and length for one (k, method) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageRow {
    pub k: usize,
    pub method: MethodKind,
    /// Fraction of replications whose interval covers the true γ
    /// (degenerate intervals never count as covering).
    pub coverage: f64,
    /// `sqrt(coverage (1 - coverage) / reps)`.
    pub mc_std_err: f64,
    /// Mean length over non-degenerate intervals; `None` when every
    /// replication degenerated.
    pub avg_length: Option<f64>,
    /// Replications whose interval was degenerate or failed numerically.
    pub degenerate_count: usize,
}

/// How degenerate replications enter the report, echoed in output metadata.
pub const DEGENERATE_CONVENTION: &str =
    "degenerate or undefined intervals count as non-covering and are excluded from avg_length";

/// Full result of [`run_plan`].
#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub plan: SimulationPlan,
    pub true_gamma: f64,
    pub degenerate_convention: &'static str,
    pub rows: Vec<CoverageRow>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Default)]
struct CellAcc {
    covered: u64,
    length_sum: f64,
    length_count: u64,
    degenerate: u64,
}

impl CellAcc {
    fn merge(&mut self, other: &CellAcc) {
        self.covered += other.covered;
        self.length_sum += other.length_sum;
        self.length_count += other.length_count;
        self.degenerate += other.degenerate;
    }
}

// Replications per work item. Fixed (not thread-count dependent) so chunk
// partials, and therefore the merged float sums, are reproducible.
const CHUNK: usize = 32;

/// Run the study described by `plan`.
///
/// Per-replication numerical failures are recorded in `degenerate_count`
/// and never abort the run.
pub fn run_plan(plan: &SimulationPlan) -> Result<CoverageReport> {
    plan.validate()?;
    let started = Instant::now();
    let true_gamma = plan.dist.true_gamma()?;
    let ks = plan.k_grid.values();
    let n_methods = plan.methods.len();
    let cells = ks.len() * n_methods;

    let n_chunks = plan.reps.div_ceil(CHUNK);
    let partials: Vec<Vec<CellAcc>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![CellAcc::default(); cells];
            let rep_end = ((chunk + 1) * CHUNK).min(plan.reps);
            for rep in chunk * CHUNK..rep_end {
                let seed = StreamSeed::new(plan.base_seed, rep as u64);
                let sample = match plan.dist.sample(plan.n, seed) {
                    Ok(s) => s,
                    Err(_) => {
                        for cell in acc.iter_mut() {
                            cell.degenerate += 1;
                        }
                        continue;
                    }
                };
                for (ki, &k) in ks.iter().enumerate() {
                    let spacings = match log_spacings(&sample, k) {
                        Ok(sp) => sp,
                        Err(_) => {
                            for mi in 0..n_methods {
                                acc[ki * n_methods + mi].degenerate += 1;
                            }
                            continue;
                        }
                    };
                    for (mi, &method) in plan.methods.iter().enumerate() {
                        let cell = &mut acc[ki * n_methods + mi];
                        match interval_for(&spacings, method, plan.level) {
                            Ok(ci) if !ci.degenerate => {
                                if ci.contains(true_gamma) {
                                    cell.covered += 1;
                                }
                                cell.length_sum += ci.length;
                                cell.length_count += 1;
                            }
                            _ => cell.degenerate += 1,
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut totals = vec![CellAcc::default(); cells];
    for partial in &partials {
        for (total, cell) in totals.iter_mut().zip(partial) {
            total.merge(cell);
        }
    }

    let reps = plan.reps as f64;
    let rows = ks
        .iter()
        .enumerate()
        .flat_map(|(ki, &k)| {
            let totals = &totals;
            let methods = &plan.methods;
            (0..n_methods).map(move |mi| {
                let cell = &totals[ki * n_methods + mi];
                let coverage = cell.covered as f64 / reps;
                CoverageRow {
                    k,
                    method: methods[mi],
                    coverage,
                    mc_std_err: (coverage * (1.0 - coverage) / reps).sqrt(),
                    avg_length: (cell.length_count > 0)
                        .then(|| cell.length_sum / cell.length_count as f64),
                    degenerate_count: cell.degenerate as usize,
                }
            })
        })
        .collect();

    Ok(CoverageReport {
        plan: plan.clone(),
        true_gamma,
        degenerate_convention: DEGENERATE_CONVENTION,
        rows,
        wall_time: started.elapsed(),
    })
}

const CSV_HEADER: &str = "k,method,coverage,mc_stderr,avg_length,degenerate_count";

impl CoverageReport {
    /// CSV rendering: `#`-prefixed plan echo, then one row per
    /// (k, method) cell with 6-decimal fixed formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# dist={} true_gamma={:.6} n={} reps={} k={} level={:.6} seed={}\n",
            self.plan.dist,
            self.true_gamma,
            self.plan.n,
            self.plan.reps,
            self.plan.k_grid,
            self.plan.level,
            self.plan.base_seed,
        ));
        let names: Vec<&str> = self.plan.methods.iter().map(|m| m.name()).collect();
        out.push_str(&format!("# methods={}\n", names.join(",")));
        out.push_str(&format!("# note: {DEGENERATE_CONVENTION}\n"));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let avg = row
                .avg_length
                .map(|v| format!("{v:.6}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{:.6},{:.6},{},{}\n",
                row.k, row.method, row.coverage, row.mc_std_err, avg, row.degenerate_count
            ));
        }
        out
    }
}

/// Parse rows emitted by [`CoverageReport::to_csv`] (comments skipped).
pub fn parse_coverage_csv(text: &str) -> Result<Vec<CoverageRow>> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header {CSV_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Parse(format!(
                "expected 6 fields, got {}: {line:?}",
                fields.len()
            )));
        }
        let parse_f = |s: &str, lo: f64, hi: f64| -> Result<f64> {
            let v = s
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad numeric field {s:?}")))?;
            if v.is_finite() && v >= lo && v <= hi {
                Ok(v)
            } else {
                Err(Error::Parse(format!("field {s:?} outside [{lo}, {hi}]")))
            }
        };
        let parse_u = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer field {s:?}")))
        };
        rows.push(CoverageRow {
            k: parse_u(fields[0])?,
            method: fields[1].parse()?,
            coverage: parse_f(fields[2], 0.0, 1.0)?,
            mc_std_err: parse_f(fields[3], 0.0, 0.5)?,
            avg_length: if fields[4].is_empty() {
                None
            } else {
                Some(parse_f(fields[4], 0.0, f64::MAX)?)
            },
            degenerate_count: parse_u(fields[5])?,
        });
    }
    Ok(rows)
}

/// Per-k comparison of the methods in a report.
#[derive(Debug, Clone, Serialize)]
pub struct MethodComparison {
    pub nominal: f64,
    pub per_k: Vec<KComparison>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KComparison {
    pub k: usize,
    /// `coverage - nominal` per method.
    pub coverage_delta: Vec<(MethodKind, f64)>,
    /// `avg_length(a) / avg_length(b)` for each ordered method pair with
    /// both lengths available.
    pub length_ratio: Vec<(MethodKind, MethodKind, f64)>,
    /// Method whose coverage sits closest to nominal at this k.
    pub closest: MethodKind,
}

/// Summarize coverage deltas and pairwise length ratios per k.
pub fn compare_methods(report: &CoverageReport) -> Result<MethodComparison> {
    if report.plan.methods.len() < 2 {
        return Err(Error::Plan("needs >=2 methods".into()));
    }
    let nominal = report.plan.level;
    let per_k = report
        .plan
        .k_grid
        .values()
        .into_iter()
        .map(|k| {
            let rows: Vec<&CoverageRow> =
                report.rows.iter().filter(|r| r.k == k).collect();
            let coverage_delta: Vec<(MethodKind, f64)> = rows
                .iter()
                .map(|r| (r.method, r.coverage - nominal))
                .collect();
            let mut length_ratio = Vec::new();
            for a in &rows {
                for b in &rows {
                    if a.method != b.method {
                        if let (Some(la), Some(lb)) = (a.avg_length, b.avg_length) {
                            length_ratio.push((a.method, b.method, la / lb));
                        }
                    }
                }
            }
            let closest = coverage_delta
                .iter()
                .min_by(|(_, a), (_, b)| a.abs().total_cmp(&b.abs()))
                .map(|(m, _)| *m)
                .expect("validated nonempty");
            KComparison {
                k,
                coverage_delta,
                length_ratio,
                closest,
            }
        })
        .collect();
    Ok(MethodComparison { nominal, per_k })
}
