//! Static SVG charts of experiment aggregates: one chart per metric, mean
//! line over a shaded mean-plus-minus-std band, log10 round axis. CSV is the
//! contract; these are a convenience for eyeballing curves.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bandit_lab_core::engine::{Aggregate, METRICS};
use plotters::prelude::*;

/// Writes `<name>_<metric>.svg` for every metric present in `aggregate`.
/// Returns the written paths.
pub fn write_plots(dir: &Path, name: &str, aggregate: &Aggregate) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for metric in METRICS {
        let series: Vec<(f64, f64, f64)> = aggregate
            .rows
            .iter()
            .filter(|r| r.metric == metric)
            .map(|r| ((r.round as f64).log10(), r.mean, r.std))
            .collect();
        if series.is_empty() {
            continue;
        }
        let path = dir.join(format!("{name}_{metric}.svg"));
        render_metric(&path, name, metric, &series)
            .with_context(|| format!("rendering {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}

fn render_metric(path: &Path, name: &str, metric: &str, series: &[(f64, f64, f64)]) -> Result<()> {
    let x_min = series.first().map(|p| p.0).unwrap_or(0.0);
    let x_max = series.last().map(|p| p.0).unwrap_or(1.0).max(x_min + 1e-9);
    let y_max = series
        .iter()
        .map(|&(_, m, s)| m + s)
        .fold(f64::MIN, f64::max)
        .max(1e-9);
    let y_min = series
        .iter()
        .map(|&(_, m, s)| m - s)
        .fold(f64::MAX, f64::min)
        .min(0.0);

    let root = SVGBackend::new(path, (800, 500)).into_drawing_area();
    root.fill(&WHITE)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(format!("{name}: {metric}"), ("sans-serif", 22))
        .margin(12)
        .x_label_area_size(42)
        .y_label_area_size(64)
        .build_cartesian_2d(x_min..x_max, y_min..y_max * 1.05)?;
    chart
        .configure_mesh()
        .x_desc("log10(round)")
        .y_desc(metric)
        .draw()?;

    // Shaded band: upper edge forward, lower edge backward.
    let mut band: Vec<(f64, f64)> = series.iter().map(|&(x, m, s)| (x, m + s)).collect();
    band.extend(series.iter().rev().map(|&(x, m, s)| (x, m - s)));
    chart.draw_series(std::iter::once(Polygon::new(band, BLUE.mix(0.15))))?;
    chart.draw_series(LineSeries::new(
        series.iter().map(|&(x, m, _)| (x, m)),
        BLUE.stroke_width(2),
    ))?;
    root.present()?;
    Ok(())
}
