//! Property tests for the quantile, spacing, likelihood, and interval
//! invariants.

use proptest::prelude::*;

use tailel::{
    el_interval, el_statistic, hill, log_spacings, parse_coverage_csv, AdjustmentPolicy,
    CoverageReport, CoverageRow, DistributionSpec, KGrid, LogSpacings, MethodKind, Sample,
    SimulationPlan, StreamSeed,
};

fn spec_strategy() -> impl Strategy<Value = DistributionSpec> {
    let p = 0.3..3.0f64;
    prop_oneof![
        p.clone().prop_map(|alpha| DistributionSpec::Frechet { alpha }),
        (p.clone(), 0.3..3.0f64).prop_map(|(alpha, beta)| DistributionSpec::Burr { alpha, beta }),
        p.clone().prop_map(|gamma| DistributionSpec::Pareto { gamma }),
        p.prop_map(|mean| DistributionSpec::Exponential { mean }),
    ]
}

proptest! {
    /// CDF(quantile(u)) recovers u on the percent grid.
    #[test]
    fn quantile_cdf_round_trip(spec in spec_strategy()) {
        for i in 1..=99 {
            let u = i as f64 / 100.0;
            let x = spec.quantile(u).unwrap();
            prop_assert!(x > 0.0);
            let back = spec.cdf(x).unwrap();
            prop_assert!((back - u).abs() <= 1e-9, "u={u}, back={back}, spec={spec}");
        }
    }

    /// The quantile is strictly increasing over a thousand-point grid.
    #[test]
    fn quantile_is_strictly_increasing(spec in spec_strategy()) {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..1000 {
            let x = spec.quantile(i as f64 / 1000.0).unwrap();
            prop_assert!(x > prev, "not increasing at i={i} for {spec}");
            prev = x;
        }
    }
}

fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
    // log-uniform positive values spanning twelve decades
    prop::collection::vec((-6.0..6.0f64).prop_map(|e| 10f64.powf(e)), 5..60)
}

proptest! {
    /// mean(y) equals Hill's estimator (telescoping identity), spacings are
    /// nonnegative, and both are invariant under rescaling the sample.
    #[test]
    fn telescoping_and_scale_invariance(
        values in sample_strategy(),
        k_frac in 0.1..0.9f64,
        scale_exp in -5.0..5.0f64,
    ) {
        let sample = Sample::new(&values).unwrap();
        let k = ((sample.n() - 1) as f64 * k_frac).max(1.0) as usize;
        let sp = log_spacings(&sample, k).unwrap();
        let h = hill(&sample, k).unwrap();

        let mean_y = sp.y().iter().sum::<f64>() / k as f64;
        prop_assert!((mean_y - h).abs() <= 1e-12 * h.max(1.0));
        for &yi in sp.y() {
            prop_assert!(yi >= 0.0);
        }

        let c = 10f64.powf(scale_exp);
        let scaled: Vec<f64> = values.iter().map(|v| v * c).collect();
        let scaled_sample = Sample::new(&scaled).unwrap();
        let sp_scaled = log_spacings(&scaled_sample, k).unwrap();
        let h_scaled = hill(&scaled_sample, k).unwrap();
        prop_assert!((h_scaled - h).abs() <= 1e-12 * h.abs().max(1.0));
        for (a, b) in sp_scaled.y().iter().zip(sp.y()) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}

fn spacings_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..5.0f64, 3..50)
}

fn gamma_inside(y: &[f64]) -> Option<(f64, f64, f64)> {
    let y_min = y.iter().copied().fold(f64::INFINITY, f64::min);
    let y_max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if y_max - y_min < 1e-9 || y_min >= y_max {
        return None;
    }
    Some((y_min, y_max, y.iter().sum::<f64>() / y.len() as f64))
}

const POLICIES: [AdjustmentPolicy; 3] = [
    AdjustmentPolicy::None,
    AdjustmentPolicy::ChenLog,
    AdjustmentPolicy::BartlettExp,
];

proptest! {
    /// Solved multiplier sits strictly inside its weight bracket, the
    /// constraint residual is tiny, weights reconstruct a probability
    /// vector, and the statistic is (numerically) nonnegative.
    #[test]
    fn lagrange_solution_identities(y in spacings_strategy(), t in 0.05..0.95f64) {
        let Some((y_min, y_max, _)) = gamma_inside(&y) else { return Ok(()) };
        let gamma = (y_min + t * (y_max - y_min)).max(1e-12);
        let sp = LogSpacings::from_y(y).unwrap();

        for policy in POLICIES {
            let eval = el_statistic(&sp, gamma, policy).unwrap();
            if !eval.defined {
                continue;
            }
            prop_assert!(eval.statistic >= -1e-12);

            let mut z: Vec<f64> = sp.y().iter().map(|v| v - gamma).collect();
            if let Some(p) = eval.pseudo_point {
                z.push(p);
            }
            let m = z.len() as f64;
            prop_assert_eq!(eval.weights.len(), z.len());

            let sum_w: f64 = eval.weights.iter().sum();
            prop_assert!((sum_w - 1.0).abs() <= 1e-10, "sum of weights {sum_w}");
            let z_abs_max = z.iter().fold(0.0f64, |acc, zi| acc.max(zi.abs()));
            let constraint: f64 = eval.weights.iter().zip(&z).map(|(w, zi)| w * zi).sum();
            prop_assert!(constraint.abs() <= 1e-10 * z_abs_max.max(1e-300));
            for w in &eval.weights {
                prop_assert!(*w > 0.0 && *w < 1.0, "weight {w} outside (0,1)");
            }

            let z_max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let z_min = z.iter().copied().fold(f64::INFINITY, f64::min);
            if z_min < 0.0 && z_max > 0.0 {
                let lo = (1.0 / m - 1.0) / z_max;
                let hi = (1.0 / m - 1.0) / z_min;
                prop_assert!(eval.lambda > lo && eval.lambda < hi,
                    "lambda {} not in ({lo}, {hi})", eval.lambda);
                let residual: f64 = z.iter().map(|zi| zi / (1.0 + eval.lambda * zi)).sum();
                let z_l1: f64 = z.iter().map(|zi| zi.abs()).sum();
                prop_assert!(residual.abs() <= 1e-9 * z_l1, "residual {residual}");
            }
        }
    }

    /// Moving γ away from γ̂ never decreases the statistic (both flanks,
    /// all policies), within a 1e-9 plateau tolerance.
    #[test]
    fn statistic_is_monotone_on_each_flank(y in spacings_strategy()) {
        let Some((y_min, y_max, hill)) = gamma_inside(&y) else { return Ok(()) };
        if hill <= 0.0 { return Ok(()); }
        let sp = LogSpacings::from_y(y).unwrap();

        for policy in POLICIES {
            let stat = |g: f64| el_statistic(&sp, g, policy).unwrap().statistic;
            // downward flank: γ̂ -> y_min
            let mut prev = stat(hill);
            for i in 1..=50 {
                let g = hill + (y_min - hill) * i as f64 / 51.0;
                if g <= 0.0 { break; }
                let s = stat(g);
                prop_assert!(s >= prev - 1e-9, "down flank dips at {g}: {s} < {prev}");
                prev = s;
            }
            // upward flank: γ̂ -> y_max
            let mut prev = stat(hill);
            for i in 1..=50 {
                let g = hill + (y_max - hill) * i as f64 / 51.0;
                let s = stat(g);
                prop_assert!(s >= prev - 1e-9, "up flank dips at {g}: {s} < {prev}");
                prev = s;
            }
        }
    }

    /// Wherever EL is defined, the adjusted statistic cannot exceed it.
    #[test]
    fn ael_is_dominated_by_el(y in spacings_strategy(), t in 0.02..0.98f64) {
        let Some((y_min, y_max, _)) = gamma_inside(&y) else { return Ok(()) };
        let gamma = (y_min + t * (y_max - y_min)).max(1e-12);
        let sp = LogSpacings::from_y(y).unwrap();
        let el = el_statistic(&sp, gamma, AdjustmentPolicy::None).unwrap();
        if !el.defined {
            return Ok(());
        }
        for policy in [AdjustmentPolicy::ChenLog, AdjustmentPolicy::BartlettExp] {
            let ael = el_statistic(&sp, gamma, policy).unwrap();
            prop_assert!(ael.statistic <= el.statistic + 1e-9,
                "AEL {} > EL {} at gamma {gamma}", ael.statistic, el.statistic);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Endpoint residuals, point-estimate containment, EL ⊆ AEL, and
    /// nesting across confidence levels, on seeded Pareto samples.
    #[test]
    fn el_interval_geometry(seed in 0u64..1_000, k in 10usize..50) {
        let sample = DistributionSpec::Pareto { gamma: 1.0 }
            .sample(300, StreamSeed::new(2024, seed))
            .unwrap();
        let sp = log_spacings(&sample, k).unwrap();
        let hill = sp.hill();

        let mut per_policy = Vec::new();
        for policy in POLICIES {
            let ci = el_interval(&sp, 0.95, policy).unwrap();
            if !ci.degenerate {
                prop_assert!(ci.lower < hill && hill < ci.upper);
                let threshold = tailel::chi_sq1_quantile(0.95).unwrap();
                for endpoint in [ci.lower, ci.upper] {
                    let s = el_statistic(&sp, endpoint, policy).unwrap().statistic;
                    prop_assert!((s - threshold).abs() <= 1e-6 * threshold,
                        "residual {} at endpoint {endpoint}", s - threshold);
                }
            }
            per_policy.push(ci);
        }
        // dominance in interval form: EL ⊆ each AEL interval
        let el = &per_policy[0];
        if !el.degenerate {
            for ael in &per_policy[1..] {
                prop_assert!(ael.lower <= el.lower + 1e-7 * hill.max(1.0));
                prop_assert!(ael.upper >= el.upper - 1e-7 * hill.max(1.0));
            }
        }

        // nesting in level, all five methods
        for method in MethodKind::ALL {
            let slack = 1e-9 * hill.max(1.0);
            let c90 = tailel::interval_for(&sp, method, 0.90).unwrap();
            let c95 = tailel::interval_for(&sp, method, 0.95).unwrap();
            let c99 = tailel::interval_for(&sp, method, 0.99).unwrap();
            if !(c90.degenerate || c95.degenerate || c99.degenerate) {
                prop_assert!(c90.lower >= c95.lower - slack && c95.lower >= c99.lower - slack);
                prop_assert!(c90.upper <= c95.upper + slack && c95.upper <= c99.upper + slack);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Emitted coverage CSV parses back to the printed precision.
    #[test]
    fn coverage_csv_round_trip(
        coverage in 0.0..1.0f64,
        length in prop::option::of(0.0..100.0f64),
        k in 2usize..500,
        degenerate in 0usize..100,
    ) {
        let plan = SimulationPlan {
            dist: DistributionSpec::Pareto { gamma: 1.0 },
            n: 1000,
            reps: 100,
            k_grid: KGrid::new(k, k, 1).unwrap(),
            level: 0.95,
            methods: vec![MethodKind::AelBartlett],
            base_seed: 9,
        };
        let row = CoverageRow {
            k,
            method: MethodKind::AelBartlett,
            coverage,
            mc_std_err: (coverage * (1.0 - coverage) / 100.0).sqrt(),
            avg_length: length,
            degenerate_count: degenerate,
        };
        let report = CoverageReport {
            plan,
            true_gamma: 1.0,
            degenerate_convention: tailel::montecarlo::DEGENERATE_CONVENTION,
            rows: vec![row.clone()],
            wall_time: std::time::Duration::ZERO,
        };
        let parsed = parse_coverage_csv(&report.to_csv()).unwrap();
        prop_assert_eq!(parsed.len(), 1);
        prop_assert!((parsed[0].coverage - row.coverage).abs() <= 5e-7);
        prop_assert!((parsed[0].mc_std_err - row.mc_std_err).abs() <= 5e-7);
        match (parsed[0].avg_length, row.avg_length) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 5e-7),
            (None, None) => {}
            other => prop_assert!(false, "avg_length mismatch {:?}", other),
        }
        prop_assert_eq!(parsed[0].degenerate_count, row.degenerate_count);
    }
}
