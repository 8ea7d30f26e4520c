use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::competency::CompetencySignal;
use crate::error::{Error, Result};

use super::correlation::{channel_indicator, correlation_matrix};
use super::incremental::IncrementalCorrelator;
use super::window::window_slice;
use super::WindowSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorPoint {
    pub t: usize,
    /// `V_i(t)` per channel.
    pub values: Vec<f64>,
    /// `sum_i V_i(t)`.
    pub sum: f64,
}

impl IndicatorPoint {
    pub fn new(t: usize, values: Vec<f64>) -> Self {
        let sum = values.iter().sum();
        IndicatorPoint { t, values, sum }
    }
}

/// Indicator values for every evaluated period, plus the grand total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorSeries {
    /// Window used to compute the series; `None` for ingested series.
    pub spec: Option<WindowSpec>,
    pub channel_names: Vec<String>,
    pub points: Vec<IndicatorPoint>,
    pub grand_total: f64,
}

impl IndicatorSeries {
    pub fn new(
        spec: Option<WindowSpec>,
        channel_names: Vec<String>,
        points: Vec<IndicatorPoint>,
    ) -> Self {
        let grand_total = sum_points(&points);
        IndicatorSeries {
            spec,
            channel_names,
            points,
            grand_total,
        }
    }

    /// Single-channel series from published per-period totals.
    pub fn from_totals(rows: &[(usize, f64)]) -> Self {
        let points = rows
            .iter()
            .map(|&(t, v)| IndicatorPoint::new(t, vec![v]))
            .collect();
        Self::new(None, vec!["V".to_string()], points)
    }

    pub fn first_t(&self) -> Option<usize> {
        self.points.first().map(|p| p.t)
    }

    pub fn last_t(&self) -> Option<usize> {
        self.points.last().map(|p| p.t)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

fn sum_points(points: &[IndicatorPoint]) -> f64 {
    points.iter().map(|p| p.sum).sum()
}

/// Grand total `V = sum_t sum_i V_i(t)`. An empty series totals 0.
pub fn total_indicator(series: &IndicatorSeries) -> f64 {
    sum_points(&series.points)
}

fn admissible(
    signal: &CompetencySignal,
    spec: &WindowSpec,
) -> Result<std::ops::RangeInclusive<usize>> {
    spec.validate()?;
    let first = spec.first_anchor();
    let last = signal.periods();
    if last < first {
        return Err(Error::InsufficientHistory {
            t: last,
            available: last.saturating_sub(1),
            required: spec.min_lags(),
        });
    }
    Ok(first..=last)
}

/// Evaluates every admissible anchor in ascending order using the rolling
/// correlator.
pub fn indicator_series(signal: &CompetencySignal, spec: &WindowSpec) -> Result<IndicatorSeries> {
    let anchors = admissible(signal, spec)?;
    let mut inc = IncrementalCorrelator::new(signal.channels(), *spec)?;
    let mut points = Vec::with_capacity(anchors.clone().count());
    // the row for period T would only feed anchor T + 1
    for row in signal.rows().take(signal.periods() - 1) {
        if let Some(corr) = inc.advance(row)? {
            debug_assert!(anchors.contains(&corr.anchor));
            points.push(IndicatorPoint::new(corr.anchor, corr.indicators()));
        }
    }
    Ok(IndicatorSeries::new(
        Some(*spec),
        signal.names().to_vec(),
        points,
    ))
}

/// Same series as [`indicator_series`], recomputing every window from
/// scratch. Anchors are evaluated in parallel.
pub fn indicator_series_direct(
    signal: &CompetencySignal,
    spec: &WindowSpec,
) -> Result<IndicatorSeries> {
    let anchors: Vec<usize> = admissible(signal, spec)?.collect();
    let points = anchors
        .into_par_iter()
        .map(|t| {
            let window = window_slice(signal, t, spec)?;
            let corr = correlation_matrix(&window, spec.mode)?;
            let values = (0..corr.channels())
                .map(|i| channel_indicator(&corr, i))
                .collect::<Result<Vec<_>>>()?;
            Ok(IndicatorPoint::new(t, values))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndicatorSeries::new(
        Some(*spec),
        signal.names().to_vec(),
        points,
    ))
}
