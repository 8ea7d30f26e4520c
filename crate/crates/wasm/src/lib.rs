//! Browser bindings for the demo page in `www/`.
//!
//! Every exported function takes a JSON object of parameters and returns a
//! JSON string; errors come back to JavaScript as thrown strings. The
//! `*_json` functions are the plain Rust versions and are what the tests
//! exercise.

use bloomtwin::{
    correlation_matrix, generate_competency_map, generate_enterprise, window_slice,
    CorrelationMode, GeneratorConfig, IndicatorSeries, Intervention, ReductionMode, Regime,
    Startup, WindowSpec,
};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub seed: u64,
    pub periods: usize,
    pub density: f64,
    pub competencies: usize,
    pub k: usize,
    pub mode: CorrelationMode,
    pub startup: Startup,
    pub reduction: ReductionMode,
}

impl Default for Params {
    fn default() -> Self {
        let cfg = GeneratorConfig::default();
        Params {
            seed: cfg.seed,
            periods: cfg.periods,
            density: cfg.map_density,
            competencies: cfg.competency_count,
            k: bloomtwin::indicator::DEFAULT_WINDOW,
            mode: CorrelationMode::default(),
            startup: Startup::default(),
            reduction: ReductionMode::default(),
        }
    }
}

/// Hiring intervention on top of [`Params`]. With no channels listed the
/// first channel of every process is used.
#[derive(Debug, Clone, Deserialize)]
pub struct HireParams {
    #[serde(flatten)]
    pub base: Params,
    pub start: usize,
    pub duration: usize,
    pub delta: f64,
    #[serde(default)]
    pub channels: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct HeatmapParams {
    #[serde(flatten)]
    pub base: Params,
    pub anchor: usize,
}

#[derive(Debug, Serialize)]
pub struct Curve {
    pub t: Vec<usize>,
    pub v: Vec<f64>,
    pub channels: Vec<String>,
    /// `per_channel[c][i]` is `V_c` at `t[i]`.
    pub per_channel: Vec<Vec<f64>>,
    pub total: f64,
}

impl From<&IndicatorSeries> for Curve {
    fn from(s: &IndicatorSeries) -> Self {
        let per_channel = (0..s.channel_names.len())
            .map(|c| s.points.iter().map(|p| p.values[c]).collect())
            .collect();
        Curve {
            t: s.points.iter().map(|p| p.t).collect(),
            v: s.points.iter().map(|p| p.sum).collect(),
            channels: s.channel_names.clone(),
            per_channel,
            total: s.grand_total,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HireOutcome {
    pub baseline: Curve,
    pub hired: Curve,
    pub channels: Vec<String>,
    pub delta: f64,
}

#[derive(Debug, Serialize)]
pub struct Heatmap {
    pub anchor: usize,
    pub first_anchor: usize,
    pub last_anchor: usize,
    pub names: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub indicators: Vec<f64>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn regime(p: &Params, scenario: Vec<Intervention>) -> Result<(Regime, WindowSpec), String> {
    let cfg = GeneratorConfig {
        seed: p.seed,
        periods: p.periods,
        map_density: p.density,
        competency_count: p.competencies,
        reduction: p.reduction,
        ..GeneratorConfig::default()
    };
    cfg.validate().map_err(err)?;
    let spec = WindowSpec::new(p.k, p.mode, p.startup).map_err(err)?;
    let events = generate_enterprise(&cfg).map_err(err)?;
    let map = generate_competency_map(&cfg, events.channels()).map_err(err)?;
    let regime = Regime::new("demo", events, map, scenario, 0.0).map_err(err)?;
    Ok((regime, spec))
}

fn parse<'a, T: Deserialize<'a>>(json: &'a str) -> Result<T, String> {
    serde_json::from_str(json).map_err(err)
}

fn render<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(err)
}

pub fn simulate_json(params: &str) -> Result<String, String> {
    let p: Params = parse(params)?;
    let (regime, spec) = regime(&p, vec![])?;
    let series = regime.indicator(&spec).map_err(err)?;
    render(&Curve::from(&series))
}

pub fn compare_hire_json(params: &str) -> Result<String, String> {
    let p: HireParams = parse(params)?;
    let (baseline, spec) = regime(&p.base, vec![])?;
    let channels = if p.channels.is_empty() {
        let mut seen = Vec::new();
        let mut first = Vec::new();
        for l in baseline.events().labels() {
            if !seen.contains(&l.process) {
                seen.push(l.process.clone());
                first.push(l.name.clone());
            }
        }
        first
    } else {
        p.channels
    };
    let hire = Intervention {
        name: "hire".into(),
        start: p.start,
        duration: p.duration,
        channels: channels.clone(),
        delta_per_period: p.delta,
    };
    let (hired, _) = regime(&p.base, vec![hire])?;
    let a = baseline.indicator(&spec).map_err(err)?;
    let b = hired.indicator(&spec).map_err(err)?;
    render(&HireOutcome {
        delta: b.grand_total - a.grand_total,
        baseline: Curve::from(&a),
        hired: Curve::from(&b),
        channels,
    })
}

pub fn heatmap_json(params: &str) -> Result<String, String> {
    let p: HeatmapParams = parse(params)?;
    let (regime, spec) = regime(&p.base, vec![])?;
    let signal = regime.signal().map_err(err)?;
    let window = window_slice(&signal, p.anchor, &spec).map_err(err)?;
    let corr = correlation_matrix(&window, spec.mode).map_err(err)?;
    render(&Heatmap {
        anchor: p.anchor,
        first_anchor: spec.first_anchor(),
        last_anchor: signal.periods(),
        names: signal.names().to_vec(),
        matrix: (0..corr.channels()).map(|i| corr.row(i).to_vec()).collect(),
        indicators: corr.indicators(),
    })
}

#[wasm_bindgen]
pub fn simulate(params: &str) -> Result<String, String> {
    simulate_json(params)
}

#[wasm_bindgen(js_name = compareHire)]
pub fn compare_hire(params: &str) -> Result<String, String> {
    compare_hire_json(params)
}

#[wasm_bindgen]
pub fn heatmap(params: &str) -> Result<String, String> {
    heatmap_json(params)
}
