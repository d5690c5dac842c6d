//! Tail-index inference for heavy-tailed data.
//!
//! Point estimation uses Hill's estimator on the top `k` order statistics.
//! Confidence intervals for the extreme-value index `γ` come in five
//! flavours: the self-normalized normal approximation, the conventional
//! normal interval, empirical likelihood (EL) inversion, and adjusted
//! empirical likelihood (AEL) inversion with either the Chen
//! `max(1, ln(k)/2)` factor or the Bartlett-optimal factor `19/12` for
//! exponential spacings.
//!
//! The [`montecarlo`] module runs seeded, reproducible coverage studies
//! over a grid of sample fractions, and [`dataset`] ingests single-column
//! CSV files of raw losses.

pub mod dataset;
pub mod distributions;
pub mod error;
pub mod hillplot;
pub mod intervals;
pub mod likelihood;
pub mod montecarlo;
pub mod rng;
mod solve;
pub mod tailstats;

pub use dataset::{parse_dataset, read_dataset, Dataset};
pub use distributions::DistributionSpec;
pub use error::{Error, Result};
pub use hillplot::{hill_plot, HillPlotRow, HillPlotTable};
pub use intervals::{
    all_intervals, chi_sq1_quantile, el_interval, interval_for, normal_interval, normal_quantile,
    parse_methods, ConfidenceInterval, MethodKind,
};
pub use likelihood::{
    centered, el_statistic, pseudo_point, resolve_adjustment, AdjustmentPolicy, ElEvaluation,
};
pub use montecarlo::{
    compare_methods, parse_coverage_csv, run_plan, CoverageReport, CoverageRow, KGrid,
    MethodComparison, SimulationPlan,
};
pub use rng::StreamSeed;
pub use tailstats::{hill, hill_series, log_spacings, LogSpacings, Sample};
