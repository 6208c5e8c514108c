//! CSV rendering of aggregates, bound curves and coverage reports.
//!
//! One schema for everything: `round,metric,mean,std,trials`, rows in
//! checkpoint-major, metric-minor order. Analytic rows (bound curves,
//! coverage rates) carry `std = 0` and `trials = 0` where no sampling is
//! involved. Output is deterministic byte-for-byte for a fixed input.

use crate::engine::{Aggregate, CoverageReport};

pub const CSV_HEADER: &str = "round,metric,mean,std,trials";

/// One output row in the common schema.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub round: u64,
    pub metric: String,
    pub mean: f64,
    pub std: f64,
    pub trials: u64,
}

pub fn rows_to_csv(rows: &[CsvRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 32 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.round, r.metric, r.mean, r.std, r.trials
        ));
    }
    out
}

/// CSV for an experiment aggregate.
pub fn aggregate_csv(aggregate: &Aggregate) -> String {
    let rows: Vec<CsvRow> = aggregate
        .rows
        .iter()
        .map(|r| CsvRow {
            round: r.round,
            metric: r.metric.to_string(),
            mean: r.mean,
            std: r.std,
            trials: aggregate.trials,
        })
        .collect();
    rows_to_csv(&rows)
}

/// CSV for bound curves: `(round, metric, value)` triples, typically with
/// metric names `bound_cost_thm1` and `bound_regret_thm3`.
pub fn bound_curve_csv(points: &[(u64, &str, f64)]) -> String {
    let rows: Vec<CsvRow> = points
        .iter()
        .map(|&(round, metric, value)| CsvRow {
            round,
            metric: metric.to_string(),
            mean: value,
            std: 0.0,
            trials: 0,
        })
        .collect();
    rows_to_csv(&rows)
}

/// CSV for a coverage report, evaluated at the experiment horizon.
pub fn coverage_csv(horizon: u64, report: &CoverageReport) -> String {
    let rows = vec![
        CsvRow {
            round: horizon,
            metric: "e1_violation_rate".into(),
            mean: report.e1_violation_rate,
            std: 0.0,
            trials: report.trials,
        },
        CsvRow {
            round: horizon,
            metric: "e2_violation_rate".into(),
            mean: report.e2_violation_rate,
            std: 0.0,
            trials: report.trials,
        },
        CsvRow {
            round: horizon,
            metric: "lemma3_violation_rate".into(),
            mean: report.lemma3_violation_rate,
            std: 0.0,
            trials: report.trials,
        },
    ];
    rows_to_csv(&rows)
}
