//! Exchange formats: CSV for matrices and series, JSON for everything
//! nested (competency maps, taxonomies, scenarios, generator configs, cost
//! inputs, comparisons).

mod format;
mod report;
mod table;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::competency::CompetencyMap;
use crate::error::Result;
use crate::regime::Scenario;
use crate::synthgen::GeneratorConfig;

pub use format::{emit_plot_data, format_fixed};
pub use report::{parse_report_json, write_report, write_report_json};
pub use table::{
    parse_event_csv, parse_indicator_csv, write_event_csv, write_indicator_csv, SeriesTable,
};

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("value serializes");
    text.push('\n');
    text
}

pub fn parse_competency_map(text: &str) -> Result<CompetencyMap> {
    let map: CompetencyMap = from_json(text)?;
    map.validate()?;
    Ok(map)
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    from_json(text)
}

pub fn parse_generator_config(text: &str) -> Result<GeneratorConfig> {
    let config: GeneratorConfig = from_json(text)?;
    config.validate()?;
    Ok(config)
}
