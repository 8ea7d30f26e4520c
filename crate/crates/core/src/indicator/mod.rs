//! Sliding-window correlation indicator.
//!
//! For each anchor period `t` the engine takes the `k` signal rows at lags
//! `t-1 .. t-k`, forms `R_k(t) = W^T W / (k-1)`, and scores every channel
//! by the absolute row sum `V_i(t) = sum_j |r_ij(t)|`. The grand total is
//! the sum of `V_i(t)` over every evaluated period and channel.
//!
//! Two correlation modes are offered. `raw` applies the inner-product
//! average to the signal as is; `standardized` z-scores each column inside
//! the window first, which makes `r_ij` the sample Pearson coefficient.
//! A channel that is constant within the window gets an all-zero row and
//! column in standardized mode (diagonal included).

mod correlation;
mod incremental;
mod series;
mod window;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use correlation::{channel_indicator, correlation_matrix, CorrelationMatrix};
pub use incremental::IncrementalCorrelator;
pub use series::{
    indicator_series, indicator_series_direct, total_indicator, IndicatorPoint, IndicatorSeries,
};
pub use window::{window_slice, WindowMatrix};

/// Suggested window: twelve monthly periods.
pub const DEFAULT_WINDOW: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationMode {
    Raw,
    #[default]
    Standardized,
}

/// What to do with anchors that have fewer than `k` lags behind them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Startup {
    /// Emit nothing until a full window exists (first anchor `k + 1`).
    #[default]
    Skip,
    /// Use whatever lags exist, as long as there are at least two.
    Grow,
}

impl std::str::FromStr for CorrelationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "raw" => Ok(CorrelationMode::Raw),
            "standardized" => Ok(CorrelationMode::Standardized),
            other => Err(format!("unknown mode `{other}` (raw|standardized)")),
        }
    }
}

impl std::str::FromStr for Startup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "skip" => Ok(Startup::Skip),
            "grow" => Ok(Startup::Grow),
            other => Err(format!("unknown startup `{other}` (skip|grow)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub k: usize,
    #[serde(default)]
    pub mode: CorrelationMode,
    #[serde(default)]
    pub startup: Startup,
}

impl WindowSpec {
    pub fn new(k: usize, mode: CorrelationMode, startup: Startup) -> Result<Self> {
        let spec = WindowSpec { k, mode, startup };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidWindow(self.k));
        }
        Ok(())
    }

    /// Fewest lags an anchor needs under this startup policy.
    pub fn min_lags(&self) -> usize {
        match self.startup {
            Startup::Skip => self.k,
            Startup::Grow => 2,
        }
    }

    /// First anchor period that can be evaluated.
    pub fn first_anchor(&self) -> usize {
        self.min_lags() + 1
    }
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            k: DEFAULT_WINDOW,
            mode: CorrelationMode::default(),
            startup: Startup::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_spec_bounds() {
        assert_eq!(
            WindowSpec::new(1, CorrelationMode::Raw, Startup::Skip),
            Err(Error::InvalidWindow(1))
        );
        let spec = WindowSpec::new(12, CorrelationMode::Raw, Startup::Skip).unwrap();
        assert_eq!(spec.first_anchor(), 13);
        let spec = WindowSpec {
            startup: Startup::Grow,
            ..spec
        };
        assert_eq!(spec.first_anchor(), 3);
    }

    #[test]
    fn parses_flags() {
        assert_eq!(
            "raw".parse::<CorrelationMode>().unwrap(),
            CorrelationMode::Raw
        );
        assert_eq!("grow".parse::<Startup>().unwrap(), Startup::Grow);
        assert!("pearson".parse::<CorrelationMode>().is_err());
    }
}
