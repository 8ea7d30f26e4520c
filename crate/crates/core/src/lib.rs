//! Digital-twin event model of an enterprise with a competency-weighted
//! sliding-window correlation indicator.
//!
//! The pipeline runs in four steps:
//!
//! 1. [`model`]: the enterprise as a grid of per-period money events.
//! 2. [`competency`]: a 0/1 map from staff competencies (tagged with
//!    [`taxonomy`] coordinates) onto event channels, turned into a signal.
//! 3. [`indicator`]: lagged-window correlation matrices and the per-channel
//!    absolute row sums `V_i(t)`, totalled over all periods.
//! 4. [`regime`]: scenario overlays, budget audits, and comparison of
//!    regimes by total indicator.
//!
//! [`synthgen`] produces seeded synthetic enterprises and [`io`] holds the
//! file formats.

pub mod competency;
pub mod error;
pub mod indicator;
pub mod io;
pub mod model;
pub mod regime;
pub mod synthgen;
pub mod taxonomy;

pub use competency::{
    bind_competencies, classify_competency, CompetencyMap, CompetencySignal, ReductionMode,
};
pub use error::{Error, Result};
pub use indicator::{
    channel_indicator, correlation_matrix, indicator_series, indicator_series_direct,
    total_indicator, window_slice, CorrelationMatrix, CorrelationMode, IncrementalCorrelator,
    IndicatorSeries, Startup, WindowMatrix, WindowSpec,
};
pub use model::{validate_event_matrix, ChannelLabel, EventMatrix, RawEventGrid};
pub use regime::{
    apply_scenario, audit_budget, audit_costs, compare_regimes, Comparison, CostInput, CostReport,
    Intervention, Regime, Scenario,
};
pub use synthgen::{generate_competency_map, generate_enterprise, GeneratorConfig};
pub use taxonomy::{Domain, Taxonomy};
