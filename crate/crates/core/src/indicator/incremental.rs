//! Rolling-sum correlation over a sliding window.
//!
//! Keeps per-channel sums and the full cross-product matrix of the rows
//! currently in the window, so each advance costs `O(p^2)`. In
//! standardized mode the sums are taken over shifted values `x - c` (the
//! shift `c` is re-centered on the window mean at every rebuild) to keep
//! the co-moment subtraction well conditioned. Sums are rebuilt from the
//! ring buffer every `k` advances so add/subtract drift stays bounded;
//! that is `O(k p^2)` once per `k` steps, still `O(p^2)` amortized.

use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::correlation::CorrelationMatrix;
use super::{CorrelationMode, WindowSpec};

#[derive(Debug, Clone)]
pub struct IncrementalCorrelator {
    spec: WindowSpec,
    channels: usize,
    buffer: VecDeque<Vec<f64>>,
    shift: Vec<f64>,
    sums: Vec<f64>,
    cross: Vec<f64>,
    // trailing count of rows equal to the newest one, per channel
    run: Vec<usize>,
    pushed: usize,
    since_rebuild: usize,
}

impl IncrementalCorrelator {
    pub fn new(channels: usize, spec: WindowSpec) -> Result<Self> {
        spec.validate()?;
        if channels == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(IncrementalCorrelator {
            spec,
            channels,
            buffer: VecDeque::with_capacity(spec.k + 1),
            shift: vec![0.0; channels],
            sums: vec![0.0; channels],
            cross: vec![0.0; channels * channels],
            run: vec![0; channels],
            pushed: 0,
            since_rebuild: 0,
        })
    }

    pub fn spec(&self) -> &WindowSpec {
        &self.spec
    }

    /// Number of rows pushed so far; the next anchor is `pushed() + 1`.
    pub fn pushed(&self) -> usize {
        self.pushed
    }

    pub fn window_len(&self) -> usize {
        self.buffer.len()
    }

    /// Pushes the signal row for period `pushed() + 1` and returns the
    /// matrix for anchor `pushed() + 1` (after the push), i.e. the window
    /// whose newest lag is the row just pushed. `None` until the startup
    /// policy admits a window.
    pub fn advance(&mut self, row: &[f64]) -> Result<Option<CorrelationMatrix>> {
        if row.len() != self.channels {
            return Err(Error::DimensionMismatch {
                expected: self.channels,
                found: row.len(),
            });
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!(
                "row {} channel {}",
                self.pushed + 1,
                j + 1
            )));
        }

        if self.pushed == 0 && self.spec.mode == CorrelationMode::Standardized {
            self.shift.copy_from_slice(row);
        }
        match self.buffer.back() {
            Some(last) => {
                for (j, run) in self.run.iter_mut().enumerate() {
                    *run = if row[j] == last[j] { *run + 1 } else { 1 };
                }
            }
            None => self.run.fill(1),
        }

        self.accumulate(row, 1.0);
        self.buffer.push_back(row.to_vec());
        if self.buffer.len() > self.spec.k {
            let old = self.buffer.pop_front().expect("buffer is over capacity");
            self.accumulate(&old, -1.0);
        }
        self.pushed += 1;
        self.since_rebuild += 1;
        if self.since_rebuild >= self.spec.k {
            self.rebuild();
        }

        if self.buffer.len() < self.spec.min_lags() {
            return Ok(None);
        }
        Ok(Some(self.matrix()))
    }

    fn accumulate(&mut self, row: &[f64], sign: f64) {
        let p = self.channels;
        let shifted: Vec<f64> = row.iter().zip(&self.shift).map(|(x, c)| x - c).collect();
        for i in 0..p {
            self.sums[i] += sign * shifted[i];
            let yi = sign * shifted[i];
            let cross_row = &mut self.cross[i * p..(i + 1) * p];
            for (j, c) in cross_row.iter_mut().enumerate().skip(i) {
                *c += yi * shifted[j];
            }
        }
    }

    fn rebuild(&mut self) {
        self.since_rebuild = 0;
        if self.spec.mode == CorrelationMode::Standardized {
            let n = self.buffer.len() as f64;
            for j in 0..self.channels {
                self.shift[j] = self.buffer.iter().map(|r| r[j]).sum::<f64>() / n;
            }
        }
        self.sums.fill(0.0);
        self.cross.fill(0.0);
        let rows: Vec<Vec<f64>> = self.buffer.iter().cloned().collect();
        for row in &rows {
            self.accumulate(row, 1.0);
        }
    }

    fn matrix(&self) -> CorrelationMatrix {
        let p = self.channels;
        let len = self.buffer.len();
        let n = len as f64;
        let mut entries = vec![0.0; p * p];
        match self.spec.mode {
            CorrelationMode::Raw => {
                let scale = 1.0 / (n - 1.0);
                for i in 0..p {
                    for j in i..p {
                        let r = self.cross[i * p + j] * scale;
                        entries[i * p + j] = r;
                        entries[j * p + i] = r;
                    }
                }
            }
            CorrelationMode::Standardized => {
                let comoment =
                    |i: usize, j: usize| self.cross[i * p + j] - self.sums[i] * self.sums[j] / n;
                let spread: Vec<Option<f64>> = (0..p)
                    .map(|i| {
                        let m = comoment(i, i);
                        (self.run[i] < len && m > 0.0 && m.is_finite()).then(|| m.sqrt())
                    })
                    .collect();
                for i in 0..p {
                    let Some(si) = spread[i] else { continue };
                    entries[i * p + i] = 1.0;
                    for j in i + 1..p {
                        let Some(sj) = spread[j] else { continue };
                        let r = (comoment(i, j) / (si * sj)).clamp(-1.0, 1.0);
                        entries[i * p + j] = r;
                        entries[j * p + i] = r;
                    }
                }
            }
        }
        CorrelationMatrix::from_entries(self.pushed + 1, self.spec.mode, len, p, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::Startup;

    fn spec(k: usize, mode: CorrelationMode) -> WindowSpec {
        WindowSpec::new(k, mode, Startup::Skip).unwrap()
    }

    #[test]
    fn constant_rows_match_closed_form() {
        let k = 4;
        let row = [2.0, -3.0, 0.5];
        let mut inc = IncrementalCorrelator::new(3, spec(k, CorrelationMode::Raw)).unwrap();
        let mut last = None;
        for _ in 0..k {
            last = inc.advance(&row).unwrap();
        }
        let m = last.expect("full window after k rows");
        assert_eq!(m.anchor, k + 1);
        let scale = k as f64 / (k - 1) as f64;
        for i in 0..3 {
            for j in 0..3 {
                assert!((m.get(i, j) - row[i] * row[j] * scale).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn forgets_spikes() {
        let k = 3;
        let base: Vec<Vec<f64>> = (0..10)
            .map(|t| vec![t as f64 % 4.0, (t * t) as f64 % 5.0])
            .collect();
        for mode in [CorrelationMode::Raw, CorrelationMode::Standardized] {
            let mut clean = IncrementalCorrelator::new(2, spec(k, mode)).unwrap();
            let mut spiked = IncrementalCorrelator::new(2, spec(k, mode)).unwrap();
            let mut a = None;
            let mut b = None;
            for (t, row) in base.iter().enumerate() {
                a = clean.advance(row).unwrap();
                let spike = if t == 4 { vec![1e6, -1e6] } else { row.clone() };
                b = spiked.advance(&spike).unwrap();
            }
            let (a, b) = (a.unwrap(), b.unwrap());
            for (x, y) in a.entries().iter().zip(b.entries()) {
                assert!((x - y).abs() < 1e-9, "{mode:?}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn warmup_and_errors() {
        let mut inc =
            IncrementalCorrelator::new(2, spec(3, CorrelationMode::Standardized)).unwrap();
        assert!(inc.advance(&[1.0, 2.0]).unwrap().is_none());
        assert!(inc.advance(&[2.0, 1.0]).unwrap().is_none());
        assert_eq!(
            inc.advance(&[1.0]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
        assert!(inc.advance(&[f64::NAN, 1.0]).is_err());
        let m = inc.advance(&[3.0, 3.0]).unwrap().unwrap();
        assert_eq!(m.anchor, 4);
        assert_eq!(inc.pushed(), 3);
    }

    #[test]
    fn grow_emits_from_two_rows() {
        let spec = WindowSpec::new(5, CorrelationMode::Raw, Startup::Grow).unwrap();
        let mut inc = IncrementalCorrelator::new(1, spec).unwrap();
        assert!(inc.advance(&[1.0]).unwrap().is_none());
        let m = inc.advance(&[3.0]).unwrap().unwrap();
        assert_eq!((m.anchor, m.window_len), (3, 2));
        assert_eq!(m.get(0, 0), 10.0);
    }

    #[test]
    fn standardized_constant_channel_is_zero() {
        let mut inc =
            IncrementalCorrelator::new(2, spec(3, CorrelationMode::Standardized)).unwrap();
        let mut m = None;
        for t in 0..6 {
            m = inc.advance(&[t as f64, 0.1]).unwrap();
        }
        let m = m.unwrap();
        assert_eq!(m.row(1), &[0.0, 0.0]);
        assert_eq!(m.get(0, 0), 1.0);
    }
}
