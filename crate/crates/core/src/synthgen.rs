//! Seeded synthetic enterprise data.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`), seeded through
//! `rand_core`'s `seed_from_u64`. Event noise uses stream 0 and mask
//! cells use stream 1, so changing one never shifts the other. Each draw
//! consumes whole `u64` words:
//!
//! * uniform: `(next_u64() >> 11) * 2^-53`, in `[0, 1)`;
//! * normal: Box-Muller cosine branch from two uniforms,
//!   `sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`.
//!
//! Event noise is drawn period by period, channels in declaration order;
//! mask cells row by row. Any implementation following these rules
//! reproduces the same bits.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::competency::{Competency, CompetencyMap, ReductionMode};
use crate::error::{Error, Result};
use crate::model::{ChannelLabel, EventMatrix};
use crate::taxonomy::{Domain, Taxonomy};

/// Relative seasonal swing by month, starting in January. Timber
/// deliveries by river peak in the summer navigation season.
pub const SEASONAL_SHAPE: [f64; 12] = [
    -0.8, -0.9, -0.6, -0.1, 0.5, 0.9, 1.0, 0.9, 0.6, 0.1, -0.4, -0.7,
];

const EVENT_STREAM: u64 = 0;
const MASK_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub name: String,
    pub channel_count: usize,
    /// Mean level in thousand rubles per period.
    pub base_level: f64,
    #[serde(default)]
    pub seasonal_amplitude: f64,
    /// Standard deviation of the additive Gaussian noise.
    #[serde(default)]
    pub noise_level: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub periods: usize,
    #[serde(default = "default_processes")]
    pub processes: Vec<ProcessSpec>,
    #[serde(default = "default_density")]
    pub map_density: f64,
    #[serde(default = "default_competencies")]
    pub competency_count: usize,
    /// Activation cost assigned to every generated competency.
    #[serde(default)]
    pub competency_cost: f64,
    #[serde(default)]
    pub reduction: ReductionMode,
}

fn default_processes() -> Vec<ProcessSpec> {
    let process =
        |name: &str, base_level: f64, seasonal_amplitude: f64, noise_level: f64| ProcessSpec {
            name: name.to_string(),
            channel_count: 4,
            base_level,
            seasonal_amplitude,
            noise_level,
        };
    vec![
        process("logging", 30_000.0, 0.3, 1_500.0),
        process("river-delivery", 20_000.0, 0.8, 1_000.0),
        process("roundwood-production", 45_000.0, 0.1, 2_000.0),
    ]
}

fn default_density() -> f64 {
    0.3
}

fn default_competencies() -> usize {
    9
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 2021,
            periods: 57,
            processes: default_processes(),
            map_density: default_density(),
            competency_count: default_competencies(),
            competency_cost: 0.0,
            reduction: ReductionMode::default(),
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.periods == 0 {
            return bad("periods must be at least 1".into());
        }
        if self.processes.is_empty() {
            return bad("at least one process is required".into());
        }
        for p in &self.processes {
            if p.channel_count == 0 {
                return bad(format!("process `{}` has no channels", p.name));
            }
            if !p.base_level.is_finite() {
                return bad(format!("process `{}` base level is not finite", p.name));
            }
            if !(p.seasonal_amplitude.is_finite() && p.seasonal_amplitude >= 0.0) {
                return bad(format!(
                    "process `{}` seasonal amplitude must be >= 0",
                    p.name
                ));
            }
            if !(p.noise_level.is_finite() && p.noise_level >= 0.0) {
                return bad(format!("process `{}` noise level must be >= 0", p.name));
            }
        }
        if !(0.0..=1.0).contains(&self.map_density) {
            return bad(format!("map density {} outside [0, 1]", self.map_density));
        }
        if self.competency_count == 0 {
            return bad("competency count must be at least 1".into());
        }
        if !(self.competency_cost.is_finite() && self.competency_cost >= 0.0) {
            return bad("competency cost must be >= 0".into());
        }
        Ok(())
    }

    pub fn channel_count(&self) -> usize {
        self.processes.iter().map(|p| p.channel_count).sum()
    }
}

struct Draws(ChaCha8Rng);

impl Draws {
    fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Draws(rng)
    }

    fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

pub fn seasonal(t: usize) -> f64 {
    SEASONAL_SHAPE[(t - 1) % 12]
}

pub fn generate_enterprise(config: &GeneratorConfig) -> Result<EventMatrix> {
    config.validate()?;
    let mut labels = Vec::with_capacity(config.channel_count());
    let mut channel_process = Vec::with_capacity(config.channel_count());
    for process in &config.processes {
        for c in 1..=process.channel_count {
            labels.push(ChannelLabel::new(
                format!("{}-{c:02}", process.name),
                process.name.clone(),
            ));
            channel_process.push(process);
        }
    }

    let mut draws = Draws::new(config.seed, EVENT_STREAM);
    let rows = (1..=config.periods)
        .map(|t| {
            channel_process
                .iter()
                .map(|p| {
                    let noise = draws.normal();
                    p.base_level * (1.0 + p.seasonal_amplitude * seasonal(t))
                        + p.noise_level * noise
                })
                .collect()
        })
        .collect();
    EventMatrix::from_rows(labels, rows)
}

/// Random `competency_count x n` mask. Competencies cycle through the
/// three domains and, within a domain, through its levels.
pub fn generate_competency_map(config: &GeneratorConfig, n: usize) -> Result<CompetencyMap> {
    config.validate()?;
    if n == 0 {
        return Err(Error::InvalidConfig(
            "channel count must be at least 1".into(),
        ));
    }
    let tax = Taxonomy::bloom();
    let competencies = (0..config.competency_count)
        .map(|i| {
            let domain = Domain::ALL[i % 3];
            let levels = tax.levels(domain);
            let level = levels[(i / 3) % levels.len()].clone();
            Competency {
                id: format!("c{:02}", i + 1),
                name: format!("{domain} {level}"),
                domain,
                level,
                cost: config.competency_cost,
            }
        })
        .collect();

    let mut draws = Draws::new(config.seed, MASK_STREAM);
    let mask = (0..config.competency_count)
        .map(|_| {
            (0..n)
                .map(|_| u8::from(draws.uniform() < config.map_density))
                .collect()
        })
        .collect();
    CompetencyMap::new(competencies, mask, config.reduction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig::default();
        let a = generate_enterprise(&cfg).unwrap();
        let b = generate_enterprise(&cfg).unwrap();
        assert!(a
            .rows()
            .flatten()
            .zip(b.rows().flatten())
            .all(|(x, y)| x.to_bits() == y.to_bits()));
        let other = generate_enterprise(&GeneratorConfig {
            seed: 7,
            ..cfg.clone()
        })
        .unwrap();
        assert_ne!(a, other);
        assert_eq!(
            generate_competency_map(&cfg, 12).unwrap(),
            generate_competency_map(&cfg, 12).unwrap()
        );
    }

    #[test]
    fn channels_tagged_in_declaration_order() {
        let m = generate_enterprise(&GeneratorConfig::default()).unwrap();
        assert_eq!(m.channels(), 12);
        let tags: Vec<&str> = m.labels().iter().map(|l| l.process.as_str()).collect();
        assert_eq!(&tags[..4], &["logging"; 4]);
        assert_eq!(&tags[4..8], &["river-delivery"; 4]);
        assert_eq!(&tags[8..], &["roundwood-production"; 4]);
        assert_eq!(m.labels()[5].name, "river-delivery-02");
    }

    #[test]
    fn flat_config_is_constant() {
        let mut cfg = GeneratorConfig::default();
        for p in &mut cfg.processes {
            p.noise_level = 0.0;
            p.seasonal_amplitude = 0.0;
        }
        let m = generate_enterprise(&cfg).unwrap();
        for row in m.rows() {
            assert_eq!(&row[..4], &[30_000.0; 4]);
            assert_eq!(row[11], 45_000.0);
        }
    }

    #[test]
    fn degenerate_densities() {
        let cfg = GeneratorConfig {
            map_density: 0.0,
            ..Default::default()
        };
        assert_eq!(generate_competency_map(&cfg, 10).unwrap().active_cells(), 0);
        let cfg = GeneratorConfig {
            map_density: 1.0,
            ..Default::default()
        };
        let map = generate_competency_map(&cfg, 10).unwrap();
        assert_eq!(map.active_cells(), 90);
    }

    #[test]
    fn domains_round_robin() {
        let map = generate_competency_map(&GeneratorConfig::default(), 3).unwrap();
        let domains: Vec<Domain> = map.competencies.iter().map(|c| c.domain).collect();
        assert_eq!(
            &domains[..4],
            &[
                Domain::Cognitive,
                Domain::Affective,
                Domain::Psychomotor,
                Domain::Cognitive
            ]
        );
        assert_eq!(map.competencies[3].level, "comprehension");
    }

    #[test]
    fn density_converges() {
        let cfg = GeneratorConfig {
            map_density: 0.37,
            competency_count: 100,
            ..Default::default()
        };
        let map = generate_competency_map(&cfg, 120).unwrap();
        let density = map.active_cells() as f64 / 12_000.0;
        assert!((density - 0.37).abs() <= 0.02, "{density}");
    }

    #[test]
    fn rejects_bad_configs() {
        for cfg in [
            GeneratorConfig {
                periods: 0,
                ..Default::default()
            },
            GeneratorConfig {
                map_density: 1.5,
                ..Default::default()
            },
            GeneratorConfig {
                competency_count: 0,
                ..Default::default()
            },
        ] {
            assert!(matches!(
                generate_enterprise(&cfg),
                Err(Error::InvalidConfig(_))
            ));
        }
        let mut cfg = GeneratorConfig::default();
        cfg.processes[1].channel_count = 0;
        assert!(generate_enterprise(&cfg).is_err());
        let mut cfg = GeneratorConfig::default();
        cfg.processes[0].noise_level = -1.0;
        assert!(generate_competency_map(&cfg, 4).is_err());
    }

    #[test]
    fn normal_draws_look_standard() {
        let mut d = Draws::new(99, EVENT_STREAM);
        let xs: Vec<f64> = (0..20_000).map(|_| d.normal()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert!(
            mean.abs() < 0.03 && (var - 1.0).abs() < 0.05,
            "{mean} {var}"
        );
    }
}
