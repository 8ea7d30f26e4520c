//! Binding staff competencies onto event channels.
//!
//! A [`CompetencyMap`] is an `m x n` 0/1 mask saying which event channels
//! evidence which competency. [`bind_competencies`] turns an event matrix
//! into the signal the indicator engine consumes, in one of two reductions:
//!
//! * `aggregate`: one channel per competency, `u^i(t) = sum_j v_i^j x^j(t)`;
//! * `masked`: one channel per nonzero mask cell, valued `x^j(t)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::EventMatrix;
use crate::taxonomy::{Domain, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionMode {
    #[default]
    Aggregate,
    Masked,
}

impl std::str::FromStr for ReductionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "aggregate" => Ok(ReductionMode::Aggregate),
            "masked" => Ok(ReductionMode::Masked),
            other => Err(format!("unknown reduction `{other}` (aggregate|masked)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Competency {
    pub id: String,
    pub name: String,
    pub domain: Domain,
    pub level: String,
    /// Activation cost in thousand rubles.
    #[serde(default)]
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompetencyMap {
    /// Replaces the default Bloom taxonomy when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taxonomy: Option<Taxonomy>,
    #[serde(default)]
    pub reduction: ReductionMode,
    pub competencies: Vec<Competency>,
    pub mask: Vec<Vec<u8>>,
}

impl CompetencyMap {
    pub fn new(
        competencies: Vec<Competency>,
        mask: Vec<Vec<u8>>,
        reduction: ReductionMode,
    ) -> Result<Self> {
        let map = CompetencyMap {
            taxonomy: None,
            reduction,
            competencies,
            mask,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn with_taxonomy(mut self, taxonomy: Taxonomy) -> Result<Self> {
        self.taxonomy = Some(taxonomy);
        self.validate()?;
        Ok(self)
    }

    pub fn taxonomy(&self) -> Taxonomy {
        self.taxonomy.clone().unwrap_or_default()
    }

    /// Checks everything except the column count, which depends on the
    /// event matrix the map is later bound to.
    pub fn validate(&self) -> Result<()> {
        if self.competencies.is_empty() {
            return Err(Error::EmptyCompetencyMap);
        }
        if self.mask.len() != self.competencies.len() {
            return Err(Error::DimensionMismatch {
                expected: self.competencies.len(),
                found: self.mask.len(),
            });
        }
        let width = self.mask[0].len();
        let tax = self.taxonomy();
        let mut ids = HashSet::new();
        for (i, (c, row)) in self.competencies.iter().zip(&self.mask).enumerate() {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate competency id `{}`",
                    c.id
                )));
            }
            tax.resolve(c.domain, &c.level)?;
            if !(c.cost.is_finite() && c.cost >= 0.0) {
                return Err(Error::InvalidCost(c.id.clone()));
            }
            if row.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    found: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|&v| v > 1) {
                return Err(Error::NonBinaryMask {
                    row: i + 1,
                    column: j + 1,
                    value: row[j],
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.competencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.competencies.is_empty()
    }

    /// Number of event channels the mask spans.
    pub fn columns(&self) -> usize {
        self.mask.first().map_or(0, Vec::len)
    }

    pub fn active_cells(&self) -> usize {
        self.mask.iter().flatten().filter(|&&v| v == 1).count()
    }

    /// True when competency `i` is bound to at least one channel.
    pub fn is_active(&self, i: usize) -> bool {
        self.mask[i].contains(&1)
    }

    pub fn find(&self, id: &str) -> Option<&Competency> {
        self.competencies.iter().find(|c| c.id == id)
    }
}

pub fn classify_competency(
    id: &str,
    map: &CompetencyMap,
    tax: &Taxonomy,
) -> Result<(Domain, String)> {
    let c = map
        .find(id)
        .ok_or_else(|| Error::UnknownCompetency(id.to_string()))?;
    tax.resolve(c.domain, &c.level)?;
    Ok((c.domain, c.level.clone()))
}

/// Which (competency, event channel) cells feed one signal channel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub competency: usize,
    pub event_channels: Vec<usize>,
}

/// Realized competency signal: `T_max x p` grid on the same time axis as
/// the source events.
#[derive(Debug, Clone, PartialEq)]
pub struct CompetencySignal {
    periods: usize,
    channels: usize,
    values: Vec<f64>,
    names: Vec<String>,
    provenance: Vec<Provenance>,
}

impl CompetencySignal {
    /// Wraps an arbitrary `periods x p` grid, e.g. raw events used directly.
    pub fn from_rows(names: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let channels = names.len();
        if channels == 0 || rows.is_empty() {
            return Err(Error::EmptyModel {
                periods: rows.len(),
                channels,
            });
        }
        let mut values = Vec::with_capacity(rows.len() * channels);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != channels {
                return Err(Error::RaggedRow {
                    row: r + 1,
                    expected: channels,
                    found: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteValue {
                    t: r as i64 + 1,
                    channel: j + 1,
                });
            }
            values.extend_from_slice(row);
        }
        let provenance = (0..channels)
            .map(|j| Provenance {
                competency: j,
                event_channels: vec![j],
            })
            .collect();
        Ok(CompetencySignal {
            periods: rows.len(),
            channels,
            values,
            names,
            provenance,
        })
    }

    /// Uses event channels as signal channels one-to-one.
    pub fn from_events(events: &EventMatrix) -> Self {
        let names = events.labels().iter().map(|l| l.name.clone()).collect();
        let rows: Vec<Vec<f64>> = events.rows().map(<[f64]>::to_vec).collect();
        Self::from_rows(names, &rows).expect("event matrix is already validated")
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// Signal at period `t` (1-based).
    pub fn row(&self, t: usize) -> &[f64] {
        assert!(
            t >= 1 && t <= self.periods,
            "period {t} outside 1..={}",
            self.periods
        );
        &self.values[(t - 1) * self.channels..t * self.channels]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.channels)
    }

    /// Reorders channels: output channel `c` is input channel `order[c]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.channels);
        let mut values = Vec::with_capacity(self.values.len());
        for row in self.rows() {
            values.extend(order.iter().map(|&j| row[j]));
        }
        CompetencySignal {
            periods: self.periods,
            channels: self.channels,
            values,
            names: order.iter().map(|&j| self.names[j].clone()).collect(),
            provenance: order.iter().map(|&j| self.provenance[j].clone()).collect(),
        }
    }
}

pub fn bind_competencies(events: &EventMatrix, map: &CompetencyMap) -> Result<CompetencySignal> {
    map.validate()?;
    let n = events.channels();
    if map.columns() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: map.columns(),
        });
    }

    let ones = |i: usize| -> Vec<usize> {
        map.mask[i]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(j, _)| j)
            .collect()
    };

    let (names, provenance): (Vec<String>, Vec<Provenance>) = match map.reduction {
        ReductionMode::Aggregate => map
            .competencies
            .iter()
            .enumerate()
            .map(|(i, c)| {
                (
                    c.id.clone(),
                    Provenance {
                        competency: i,
                        event_channels: ones(i),
                    },
                )
            })
            .unzip(),
        ReductionMode::Masked => {
            let mut out = (Vec::new(), Vec::new());
            for (i, c) in map.competencies.iter().enumerate() {
                for j in ones(i) {
                    out.0.push(format!("{}@{}", c.id, events.labels()[j].name));
                    out.1.push(Provenance {
                        competency: i,
                        event_channels: vec![j],
                    });
                }
            }
            out
        }
    };
    if names.is_empty() {
        return Err(Error::EmptySignal);
    }

    let channels = provenance.len();
    let mut values = Vec::with_capacity(events.periods() * channels);
    for x in events.rows() {
        for p in &provenance {
            // mask cells are 1, so v * x reduces to x
            let mut u = 0.0;
            for &j in &p.event_channels {
                u += x[j];
            }
            values.push(u);
        }
    }
    Ok(CompetencySignal {
        periods: events.periods(),
        channels,
        values,
        names,
        provenance,
    })
}
