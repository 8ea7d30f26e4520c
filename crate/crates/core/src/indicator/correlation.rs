use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::window::WindowMatrix;
use super::CorrelationMode;

/// Symmetric `p x p` matrix `R_k(t)` for one anchor period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub anchor: usize,
    pub mode: CorrelationMode,
    /// Number of window rows the matrix was computed from.
    pub window_len: usize,
    channels: usize,
    entries: Vec<f64>,
}

impl CorrelationMatrix {
    pub(crate) fn from_entries(
        anchor: usize,
        mode: CorrelationMode,
        window_len: usize,
        channels: usize,
        entries: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(entries.len(), channels * channels);
        CorrelationMatrix {
            anchor,
            mode,
            window_len,
            channels,
            entries,
        }
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.channels + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.channels..(i + 1) * self.channels]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest `|r_ij - r_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let p = self.channels;
        let mut worst = 0.0f64;
        for i in 0..p {
            for j in i + 1..p {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `V_i(t)` for every channel.
    pub fn indicators(&self) -> Vec<f64> {
        (0..self.channels)
            .map(|i| row_indicator(self.row(i)))
            .collect()
    }
}

pub(crate) fn row_indicator(row: &[f64]) -> f64 {
    row.iter().map(|r| r.abs()).sum()
}

pub fn correlation_matrix(
    window: &WindowMatrix,
    mode: CorrelationMode,
) -> Result<CorrelationMatrix> {
    let rows = window.len();
    if rows < 2 {
        return Err(Error::DegenerateWindow { rows });
    }
    let p = window.channels();

    // column-major copy so the inner product loops run over contiguous data
    let mut columns: Vec<Vec<f64>> = (0..p).map(|j| window.column(j).collect()).collect();
    let standardized = mode == CorrelationMode::Standardized;
    let mut live = vec![true; p];
    if standardized {
        for (col, live) in columns.iter_mut().zip(&mut live) {
            *live = standardize(col);
        }
    }

    let scale = 1.0 / (rows - 1) as f64;
    let mut entries = vec![0.0; p * p];
    for i in 0..p {
        for j in i..p {
            let dot: f64 = columns[i].iter().zip(&columns[j]).map(|(a, b)| a * b).sum();
            let r = match (standardized, i == j) {
                (false, _) => dot * scale,
                // same conventions as the incremental path: exact unit
                // diagonal, rounding spill past +-1 clipped
                (true, true) => {
                    if live[i] {
                        1.0
                    } else {
                        0.0
                    }
                }
                (true, false) => (dot * scale).clamp(-1.0, 1.0),
            };
            entries[i * p + j] = r;
            entries[j * p + i] = r;
        }
    }
    Ok(CorrelationMatrix::from_entries(
        window.anchor(),
        mode,
        rows,
        p,
        entries,
    ))
}

/// In-place z-score with the `n - 1` sample deviation. A column whose
/// values are all identical becomes all zeros and `false` is returned.
fn standardize(col: &mut [f64]) -> bool {
    let first = col[0];
    if col.iter().all(|&v| v == first) {
        col.fill(0.0);
        return false;
    }
    let n = col.len() as f64;
    let mean = col.iter().sum::<f64>() / n;
    let ss: f64 = col.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sd = (ss / (n - 1.0)).sqrt();
    if !(sd > 0.0 && sd.is_finite()) {
        col.fill(0.0);
        return false;
    }
    for v in col.iter_mut() {
        *v = (*v - mean) / sd;
    }
    true
}

pub fn channel_indicator(corr: &CorrelationMatrix, i: usize) -> Result<f64> {
    if i >= corr.channels() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: corr.channels(),
        });
    }
    Ok(row_indicator(corr.row(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(rows: &[Vec<f64>]) -> WindowMatrix {
        WindowMatrix::from_rows(10, rows).unwrap()
    }

    fn matrix(entries: Vec<f64>) -> CorrelationMatrix {
        let p = (entries.len() as f64).sqrt() as usize;
        CorrelationMatrix::from_entries(1, CorrelationMode::Standardized, 2, p, entries)
    }

    #[test]
    fn raw_constant_ones() {
        let c = correlation_matrix(&window(&vec![vec![1.0; 3]; 5]), CorrelationMode::Raw).unwrap();
        assert!(c.entries().iter().all(|&r| r == 1.25));
        assert_eq!(c.window_len, 5);
    }

    #[test]
    fn perfect_anticorrelation() {
        let rows: Vec<Vec<f64>> = [3.0, -1.0, 4.0, 1.5, -5.0]
            .iter()
            .map(|&x| vec![x, -x])
            .collect();
        let c = correlation_matrix(&window(&rows), CorrelationMode::Standardized).unwrap();
        assert!((c.get(0, 1) + 1.0).abs() < 1e-12);
        assert_eq!(c.get(0, 1), c.get(1, 0));
        assert!((c.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((c.get(1, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_column_is_zeroed() {
        // 0.1 does not average back to itself exactly, so this exercises
        // the equality check rather than a computed zero variance
        let rows: Vec<Vec<f64>> = [1.0, 2.0, 4.0].iter().map(|&x| vec![x, 0.1]).collect();
        let c = correlation_matrix(&window(&rows), CorrelationMode::Standardized).unwrap();
        assert_eq!(c.row(1), &[0.0, 0.0]);
        assert_eq!(c.get(0, 1), 0.0);
        assert!((c.get(0, 0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_window() {
        let err = correlation_matrix(&window(&[vec![1.0, 2.0]]), CorrelationMode::Raw).unwrap_err();
        assert_eq!(err, Error::DegenerateWindow { rows: 1 });
    }

    #[test]
    fn indicator_row_sums() {
        let c = matrix(vec![1.0, 0.5, 0.5, 1.0]);
        assert_eq!(channel_indicator(&c, 0).unwrap(), 1.5);
        assert_eq!(channel_indicator(&matrix(vec![0.0; 4]), 1).unwrap(), 0.0);
        let c = matrix(vec![1.0, -0.3, 0.2, -0.3, 1.0, 0.0, 0.2, 0.0, 1.0]);
        assert!((channel_indicator(&c, 0).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(
            channel_indicator(&c, 3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, len: 3 }
        );
    }
}
