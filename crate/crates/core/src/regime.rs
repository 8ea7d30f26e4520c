//! Management regimes, timed interventions, budget audits, and regime
//! comparison by total indicator.

use serde::{Deserialize, Serialize};

use crate::competency::{bind_competencies, CompetencyMap, CompetencySignal};
use crate::error::{Error, Result};
use crate::indicator::{indicator_series, IndicatorSeries, WindowSpec};
use crate::model::EventMatrix;

/// Additive overlay: every targeted channel gains `delta_per_period` on
/// periods `start ..= start + duration - 1`. An effect that "ends" (staff
/// dismissed, contract over) is expressed by the duration running out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intervention {
    pub name: String,
    pub start: usize,
    pub duration: usize,
    /// Event channel names.
    pub channels: Vec<String>,
    pub delta_per_period: f64,
}

impl Intervention {
    pub fn end(&self) -> usize {
        self.start + self.duration.saturating_sub(1)
    }

    fn check(&self, events: &EventMatrix) -> Result<Vec<usize>> {
        let invalid = |reason: &str| Error::InvalidIntervention {
            name: self.name.clone(),
            reason: reason.to_string(),
        };
        if self.duration == 0 {
            return Err(invalid("duration must be at least 1"));
        }
        if self.channels.is_empty() {
            return Err(invalid("no target channels"));
        }
        if !self.delta_per_period.is_finite() {
            return Err(invalid("delta is not finite"));
        }
        if self.start == 0 || self.end() > events.periods() {
            return Err(Error::OutOfRange {
                name: self.name.clone(),
                start: self.start,
                end: self.end(),
                periods: events.periods(),
            });
        }
        self.channels
            .iter()
            .map(|c| {
                events
                    .channel_index(c)
                    .ok_or_else(|| Error::UnknownChannel(c.clone()))
            })
            .collect()
    }
}

/// JSON exchange shape for a list of interventions.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Scenario {
    pub interventions: Vec<Intervention>,
}

/// Applies every intervention to a copy of `events`.
///
/// Deltas landing on the same cell are summed in ascending order before
/// being added, so the result does not depend on intervention order. Zero
/// deltas are skipped and untouched cells keep their exact bits.
pub fn apply_scenario(events: &EventMatrix, scenario: &[Intervention]) -> Result<EventMatrix> {
    let n = events.channels();
    let mut deltas: Vec<Vec<f64>> = vec![Vec::new(); events.periods() * n];
    for iv in scenario {
        let targets = iv.check(events)?;
        if iv.delta_per_period == 0.0 {
            continue;
        }
        for t in iv.start..=iv.end() {
            for &j in &targets {
                deltas[(t - 1) * n + j].push(iv.delta_per_period);
            }
        }
    }
    events.map_values(|t, j, x| {
        let cell = &mut deltas[(t - 1) * n + j];
        if cell.is_empty() {
            return x;
        }
        cell.sort_by(f64::total_cmp);
        x + cell.iter().sum::<f64>()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Regime {
    pub name: String,
    events: EventMatrix,
    map: CompetencyMap,
    scenario: Vec<Intervention>,
    install_cost: f64,
}

impl Regime {
    pub fn new(
        name: impl Into<String>,
        events: EventMatrix,
        map: CompetencyMap,
        scenario: Vec<Intervention>,
        install_cost: f64,
    ) -> Result<Self> {
        if !(install_cost.is_finite() && install_cost >= 0.0) {
            return Err(Error::NonFiniteInput(format!(
                "install cost {install_cost}"
            )));
        }
        map.validate()?;
        if map.columns() != events.channels() {
            return Err(Error::DimensionMismatch {
                expected: events.channels(),
                found: map.columns(),
            });
        }
        for iv in &scenario {
            iv.check(&events)?;
        }
        Ok(Regime {
            name: name.into(),
            events,
            map,
            scenario,
            install_cost,
        })
    }

    pub fn events(&self) -> &EventMatrix {
        &self.events
    }

    pub fn map(&self) -> &CompetencyMap {
        &self.map
    }

    pub fn scenario(&self) -> &[Intervention] {
        &self.scenario
    }

    pub fn install_cost(&self) -> f64 {
        self.install_cost
    }

    /// Events with the scenario applied.
    pub fn effective_events(&self) -> Result<EventMatrix> {
        apply_scenario(&self.events, &self.scenario)
    }

    pub fn signal(&self) -> Result<CompetencySignal> {
        bind_competencies(&self.effective_events()?, &self.map)
    }

    pub fn indicator(&self, spec: &WindowSpec) -> Result<IndicatorSeries> {
        indicator_series(&self.signal()?, spec)
    }

    /// Activation cost of every competency bound to at least one channel,
    /// counted once per competency.
    pub fn competency_cost(&self) -> f64 {
        self.map
            .competencies
            .iter()
            .enumerate()
            .filter(|(i, _)| self.map.is_active(*i))
            .map(|(_, c)| c.cost)
            .sum()
    }

    pub fn cost_input(&self, base_cost: f64) -> CostInput {
        CostInput {
            base_cost,
            install_cost: self.install_cost,
            competency_cost: self.competency_cost(),
        }
    }
}

/// Cost components in thousand rubles; the JSON file read by `compare`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CostInput {
    pub base_cost: f64,
    #[serde(default)]
    pub install_cost: f64,
    #[serde(default)]
    pub competency_cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub base_cost: f64,
    pub install_cost: f64,
    pub competency_cost: f64,
    pub total_cost: f64,
    pub budget: f64,
    pub within_budget: bool,
}

pub fn audit_costs(costs: &CostInput, budget: f64) -> CostReport {
    let total_cost = costs.base_cost + costs.install_cost + costs.competency_cost;
    CostReport {
        base_cost: costs.base_cost,
        install_cost: costs.install_cost,
        competency_cost: costs.competency_cost,
        total_cost,
        budget,
        within_budget: total_cost <= budget,
    }
}

pub fn audit_budget(regime: &Regime, base_cost: f64, budget: f64) -> CostReport {
    audit_costs(&regime.cost_input(base_cost), budget)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub name_a: String,
    pub name_b: String,
    pub total_a: f64,
    pub total_b: f64,
    /// `total_a - total_b`.
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_a: Option<CostReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_b: Option<CostReport>,
}

pub fn compare_regimes(
    (name_a, total_a): (&str, f64),
    (name_b, total_b): (&str, f64),
    costs: Option<(CostReport, CostReport)>,
) -> Result<Comparison> {
    for (name, v) in [(name_a, total_a), (name_b, total_b)] {
        if !v.is_finite() {
            return Err(Error::NonFiniteInput(format!("total of `{name}` is {v}")));
        }
    }
    let (cost_a, cost_b) = costs.map_or((None, None), |(a, b)| (Some(a), Some(b)));
    Ok(Comparison {
        name_a: name_a.to_string(),
        name_b: name_b.to_string(),
        total_a,
        total_b,
        delta: total_a - total_b,
        cost_a,
        cost_b,
    })
}
