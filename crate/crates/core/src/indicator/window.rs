use crate::competency::CompetencySignal;
use crate::error::{Error, Result};

use super::{Startup, WindowSpec};

/// Lagged window `V_k(t)`: row `r` (0-based) holds the signal at `t - r - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowMatrix {
    anchor: usize,
    channels: usize,
    values: Vec<f64>,
}

impl WindowMatrix {
    /// Builds a window from explicit rows, lag 1 first.
    pub fn from_rows(anchor: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let channels = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(rows.len() * channels);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != channels {
                return Err(Error::RaggedRow {
                    row: r + 1,
                    expected: channels,
                    found: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput(format!("window row {}", r + 1)));
            }
            values.extend_from_slice(row);
        }
        Ok(WindowMatrix {
            anchor,
            channels,
            values,
        })
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.values.len().checked_div(self.channels).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Row holding the signal at `anchor - lag`, `lag` in `1..=len()`.
    pub fn lag(&self, lag: usize) -> &[f64] {
        self.row(lag - 1)
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.values[r * self.channels..(r + 1) * self.channels]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.channels.max(1))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows().map(move |r| r[j])
    }
}

pub fn window_slice(
    signal: &CompetencySignal,
    t: usize,
    spec: &WindowSpec,
) -> Result<WindowMatrix> {
    spec.validate()?;
    if t == 0 || t > signal.periods() {
        return Err(Error::IndexOutOfRange {
            index: t,
            len: signal.periods(),
        });
    }
    let available = t - 1;
    let len = match spec.startup {
        Startup::Skip if available >= spec.k => spec.k,
        Startup::Grow if available >= 2 => available.min(spec.k),
        _ => {
            return Err(Error::InsufficientHistory {
                t,
                available,
                required: spec.min_lags(),
            })
        }
    };
    let mut values = Vec::with_capacity(len * signal.channels());
    for lag in 1..=len {
        values.extend_from_slice(signal.row(t - lag));
    }
    Ok(WindowMatrix {
        anchor: t,
        channels: signal.channels(),
        values,
    })
}
