//! Hill-plot data: the Hill estimate and per-method confidence limits over
//! a grid of sample fractions, as a plot-ready CSV table.

use crate::error::{Error, Result};
use crate::intervals::{interval_for, MethodKind};
use crate::montecarlo::KGrid;
use crate::tailstats::{log_spacings, Sample};

#[derive(Debug, Clone, PartialEq)]
pub struct HillPlotRow {
    pub k: usize,
    pub hill: f64,
    /// `(lower, upper)` per method, aligned with the table's method list.
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HillPlotTable {
    pub methods: Vec<MethodKind>,
    pub rows: Vec<HillPlotRow>,
    /// Number of (row, method) cells whose interval was degenerate.
    pub degenerate_count: usize,
}

/// Compute Hill estimates and interval limits over the grid.
pub fn hill_plot(
    sample: &Sample,
    grid: &KGrid,
    level: f64,
    methods: &[MethodKind],
) -> Result<HillPlotTable> {
    grid.validate()?;
    if methods.is_empty() {
        return Err(Error::Plan("method list is empty".into()));
    }
    let mut rows = Vec::new();
    let mut degenerate_count = 0usize;
    for k in grid.values() {
        let spacings = log_spacings(sample, k)?;
        let mut bounds = Vec::with_capacity(methods.len());
        for &method in methods {
            let ci = interval_for(&spacings, method, level)?;
            if ci.degenerate {
                degenerate_count += 1;
            }
            bounds.push((ci.lower, ci.upper));
        }
        rows.push(HillPlotRow {
            k,
            hill: spacings.hill(),
            bounds,
        });
    }
    Ok(HillPlotTable {
        methods: methods.to_vec(),
        rows,
        degenerate_count,
    })
}

impl HillPlotTable {
    /// CSV columns: `k,hill` then `NAME_lower,NAME_upper` per method;
    /// 6-decimal fixed formatting (`inf` for unbounded limits).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,hill");
        for m in &self.methods {
            out.push_str(&format!(",{m}_lower,{m}_upper"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("{},{:.6}", row.k, row.hill));
            for (lo, hi) in &row.bounds {
                out.push_str(&format!(",{lo:.6},{hi:.6}"));
            }
            out.push('\n');
        }
        out
    }

    /// Parse a table emitted by [`HillPlotTable::to_csv`].
    /// `degenerate_count` is re-derived from non-finite limits only.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty hill-plot table".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 4 || cols[0] != "k" || cols[1] != "hill" || !(cols.len() - 2).is_multiple_of(2) {
            return Err(Error::Parse(format!("bad hill-plot header {header:?}")));
        }
        let mut methods = Vec::new();
        for pair in cols[2..].chunks(2) {
            let name = pair[0]
                .strip_suffix("_lower")
                .ok_or_else(|| Error::Parse(format!("expected NAME_lower, got {:?}", pair[0])))?;
            let upper_name = pair[1]
                .strip_suffix("_upper")
                .ok_or_else(|| Error::Parse(format!("expected NAME_upper, got {:?}", pair[1])))?;
            if name != upper_name {
                return Err(Error::Parse(format!(
                    "mismatched column pair {:?}, {:?}",
                    pair[0], pair[1]
                )));
            }
            methods.push(name.parse::<MethodKind>()?);
        }
        let mut rows = Vec::new();
        let mut degenerate_count = 0usize;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != cols.len() {
                return Err(Error::Parse(format!(
                    "expected {} fields, got {}: {line:?}",
                    cols.len(),
                    fields.len()
                )));
            }
            let k = fields[0]
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad k field {:?}", fields[0])))?;
            let parse_f = |s: &str| -> Result<f64> {
                let v = s
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad numeric field {s:?}")))?;
                // unbounded limits print as inf; NaN never appears
                if v.is_nan() {
                    return Err(Error::Parse(format!("NaN field {s:?}")));
                }
                Ok(v)
            };
            let hill = parse_f(fields[1])?;
            if !hill.is_finite() {
                return Err(Error::Parse(format!("non-finite hill field {:?}", fields[1])));
            }
            let mut bounds = Vec::with_capacity(methods.len());
            for pair in fields[2..].chunks(2) {
                let lo = parse_f(pair[0])?;
                let hi = parse_f(pair[1])?;
                if !lo.is_finite() || !hi.is_finite() {
                    degenerate_count += 1;
                }
                bounds.push((lo, hi));
            }
            rows.push(HillPlotRow { k, hill, bounds });
        }
        Ok(Self {
            methods,
            rows,
            degenerate_count,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::DistributionSpec;
    use crate::rng::StreamSeed;
    use approx::assert_abs_diff_eq;

    fn fixture() -> Sample {
        DistributionSpec::Pareto { gamma: 1.0 }
            .sample(200, StreamSeed::new(11, 0))
            .unwrap()
    }

    #[test]
    fn row_count_matches_the_grid() {
        let table = hill_plot(
            &fixture(),
            &KGrid::new(20, 80, 1).unwrap(),
            0.95,
            &[MethodKind::NormalSelfNorm, MethodKind::AelBartlett],
        )
        .unwrap();
        assert_eq!(table.rows.len(), 61);
        assert_eq!(table.rows[0].k, 20);
        assert_eq!(table.rows[60].k, 80);
    }

    #[test]
    fn single_k_row_matches_the_direct_interval() {
        let sample = fixture();
        let table = hill_plot(
            &sample,
            &KGrid::new(50, 50, 1).unwrap(),
            0.95,
            &[MethodKind::El],
        )
        .unwrap();
        let spacings = log_spacings(&sample, 50).unwrap();
        let ci = interval_for(&spacings, MethodKind::El, 0.95).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_abs_diff_eq!(table.rows[0].hill, spacings.hill());
        assert_abs_diff_eq!(table.rows[0].bounds[0].0, ci.lower);
        assert_abs_diff_eq!(table.rows[0].bounds[0].1, ci.upper);
    }

    #[test]
    fn csv_round_trips() {
        let table = hill_plot(
            &fixture(),
            &KGrid::new(10, 40, 10).unwrap(),
            0.95,
            &[MethodKind::NormalSelfNorm, MethodKind::AelBartlett],
        )
        .unwrap();
        let parsed = HillPlotTable::parse_csv(&table.to_csv()).unwrap();
        assert_eq!(parsed.methods, table.methods);
        assert_eq!(parsed.rows.len(), table.rows.len());
        for (p, o) in parsed.rows.iter().zip(&table.rows) {
            assert_eq!(p.k, o.k);
            assert_abs_diff_eq!(p.hill, o.hill, epsilon = 5e-7);
            for (pb, ob) in p.bounds.iter().zip(&o.bounds) {
                assert_abs_diff_eq!(pb.0, ob.0, epsilon = 5e-7);
                assert_abs_diff_eq!(pb.1, ob.1, epsilon = 5e-7);
            }
        }
    }

    #[test]
    fn infinite_limits_survive_the_csv() {
        // k = 3 < z²: self-normalized upper limit is +inf
        let sample = Sample::new(&[1.0, 2.0, 4.0, 9.0]).unwrap();
        let table = hill_plot(
            &sample,
            &KGrid::new(3, 3, 1).unwrap(),
            0.95,
            &[MethodKind::NormalSelfNorm],
        )
        .unwrap();
        assert_eq!(table.degenerate_count, 1);
        let parsed = HillPlotTable::parse_csv(&table.to_csv()).unwrap();
        assert!(parsed.rows[0].bounds[0].1.is_infinite());
        assert_eq!(parsed.degenerate_count, 1);
    }

    #[test]
    fn parse_rejects_malformed_tables() {
        assert!(HillPlotTable::parse_csv("").is_err());
        assert!(HillPlotTable::parse_csv("k,hill\n").is_err());
        assert!(HillPlotTable::parse_csv("k,hill,el_lower,normal_upper\n").is_err());
        assert!(HillPlotTable::parse_csv("k,hill,el_lower,el_upper\n1,2\n").is_err());
        assert!(HillPlotTable::parse_csv("k,hill,bogus_lower,bogus_upper\n").is_err());
    }
}
