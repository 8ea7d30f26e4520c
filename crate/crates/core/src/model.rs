//! The enterprise event model: a period-by-channel grid of money amounts.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Process tag given to channels that arrive without one.
pub const DEFAULT_PROCESS: &str = "enterprise";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelLabel {
    pub name: String,
    /// Business process the channel belongs to.
    pub process: String,
}

impl ChannelLabel {
    pub fn new(name: impl Into<String>, process: impl Into<String>) -> Self {
        ChannelLabel {
            name: name.into(),
            process: process.into(),
        }
    }

    pub fn untagged(name: impl Into<String>) -> Self {
        ChannelLabel::new(name, DEFAULT_PROCESS)
    }
}

/// Unvalidated input to [`validate_event_matrix`]: one time index and one
/// row of values per period.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEventGrid {
    pub labels: Vec<ChannelLabel>,
    pub times: Vec<i64>,
    pub rows: Vec<Vec<f64>>,
}

/// Validated `T_max x n` grid of event values `x^j(t)`, in thousand rubles
/// per period. Periods are numbered `1..=T_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct EventMatrix {
    labels: Vec<ChannelLabel>,
    periods: usize,
    values: Vec<f64>,
}

pub fn validate_event_matrix(raw: RawEventGrid) -> Result<EventMatrix> {
    let RawEventGrid {
        labels,
        times,
        rows,
    } = raw;
    let channels = labels.len();
    if channels == 0 || rows.is_empty() {
        return Err(Error::EmptyModel {
            periods: rows.len(),
            channels,
        });
    }
    if times.len() != rows.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            found: times.len(),
        });
    }

    let mut names = HashSet::with_capacity(channels);
    for label in &labels {
        if !names.insert(label.name.as_str()) {
            return Err(Error::DuplicateChannel(label.name.clone()));
        }
    }

    let mut values = Vec::with_capacity(rows.len() * channels);
    for (row, (&t, cells)) in times.iter().zip(&rows).enumerate() {
        let expected = row as i64 + 1;
        if t != expected {
            return Err(Error::TimeAxisGap {
                row: row + 1,
                expected,
                found: t,
            });
        }
        if cells.len() != channels {
            return Err(Error::RaggedRow {
                row: row + 1,
                expected: channels,
                found: cells.len(),
            });
        }
        if let Some(j) = cells.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { t, channel: j + 1 });
        }
        values.extend_from_slice(cells);
    }

    Ok(EventMatrix {
        labels,
        periods: rows.len(),
        values,
    })
}

impl EventMatrix {
    /// Builds a matrix whose rows are periods `1..=rows.len()`.
    pub fn from_rows(labels: Vec<ChannelLabel>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let times = (1..=rows.len() as i64).collect();
        validate_event_matrix(RawEventGrid {
            labels,
            times,
            rows,
        })
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    pub fn channels(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[ChannelLabel] {
        &self.labels
    }

    pub fn time_indices(&self) -> impl Iterator<Item = usize> {
        1..=self.periods
    }

    /// Values at period `t` (1-based).
    pub fn row(&self, t: usize) -> &[f64] {
        assert!(
            t >= 1 && t <= self.periods,
            "period {t} outside 1..={}",
            self.periods
        );
        let n = self.channels();
        &self.values[(t - 1) * n..t * n]
    }

    pub fn value(&self, t: usize, channel: usize) -> f64 {
        self.row(t)[channel]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.channels())
    }

    pub fn channel_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    pub fn to_raw(&self) -> RawEventGrid {
        RawEventGrid {
            labels: self.labels.clone(),
            times: (1..=self.periods as i64).collect(),
            rows: self.rows().map(<[f64]>::to_vec).collect(),
        }
    }

    /// Same labels, every value passed through `f(t, channel, value)`.
    /// Non-finite results are rejected.
    pub fn map_values(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let n = self.channels();
        let mut values = Vec::with_capacity(self.values.len());
        for (idx, &v) in self.values.iter().enumerate() {
            let (t, j) = (idx / n + 1, idx % n);
            let out = f(t, j, v);
            if !out.is_finite() {
                return Err(Error::NonFiniteValue {
                    t: t as i64,
                    channel: j + 1,
                });
            }
            values.push(out);
        }
        Ok(EventMatrix {
            labels: self.labels.clone(),
            periods: self.periods,
            values,
        })
    }

    /// Sum of every cell, e.g. total enterprise expenses over the horizon.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}
