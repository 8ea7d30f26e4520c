//! Bloom's three-domain taxonomy of learning goals.
//!
//! The level lists are data, not law: [`Taxonomy::bloom`] ships a default
//! reading, and any JSON file with the same shape can replace it.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Cognitive,
    Affective,
    Psychomotor,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::Cognitive, Domain::Affective, Domain::Psychomotor];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Cognitive => "cognitive",
            Domain::Affective => "affective",
            Domain::Psychomotor => "psychomotor",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainLevels {
    pub domain: Domain,
    /// Ordered from the most basic level to the most integrated one.
    pub levels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DomainLevels>", into = "Vec<DomainLevels>")]
pub struct Taxonomy {
    domains: Vec<DomainLevels>,
}

impl Taxonomy {
    /// Validates domain coverage and level uniqueness. Domains are stored in
    /// canonical order regardless of input order.
    pub fn new(mut domains: Vec<DomainLevels>) -> Result<Self> {
        if domains.len() != 3 {
            return Err(Error::InvalidTaxonomy(format!(
                "expected exactly 3 domains, found {}",
                domains.len()
            )));
        }
        domains.sort_by_key(|d| d.domain);
        for (entry, expected) in domains.iter().zip(Domain::ALL) {
            if entry.domain != expected {
                return Err(Error::InvalidTaxonomy(format!(
                    "missing the {expected} domain"
                )));
            }
            if entry.levels.is_empty() {
                return Err(Error::InvalidTaxonomy(format!(
                    "{expected} domain has no levels"
                )));
            }
            let mut seen = HashSet::new();
            for level in &entry.levels {
                if level.trim().is_empty() {
                    return Err(Error::InvalidTaxonomy(format!("blank level in {expected}")));
                }
                if !seen.insert(level.as_str()) {
                    return Err(Error::InvalidTaxonomy(format!(
                        "level `{level}` repeated in {expected}"
                    )));
                }
            }
        }
        Ok(Taxonomy { domains })
    }

    pub fn bloom() -> Self {
        fn levels(names: &[&str]) -> Vec<String> {
            names.iter().map(|s| s.to_string()).collect()
        }
        Taxonomy {
            domains: vec![
                DomainLevels {
                    domain: Domain::Cognitive,
                    levels: levels(&[
                        "knowledge",
                        "comprehension",
                        "application",
                        "analysis",
                        "synthesis",
                        "evaluation",
                    ]),
                },
                DomainLevels {
                    domain: Domain::Affective,
                    levels: levels(&[
                        "perception",
                        "reacting",
                        "value-orientations",
                        "organization",
                        "characterization",
                    ]),
                },
                DomainLevels {
                    domain: Domain::Psychomotor,
                    levels: levels(&[
                        "imitation",
                        "control",
                        "accuracy",
                        "articulation",
                        "naturalization",
                    ]),
                },
            ],
        }
    }

    pub fn levels(&self, domain: Domain) -> &[String] {
        &self.domains[domain as usize].levels
    }

    pub fn domains(&self) -> &[DomainLevels] {
        &self.domains
    }

    /// Position of `level` within `domain`, 0 being the most basic.
    pub fn resolve(&self, domain: Domain, level: &str) -> Result<usize> {
        self.levels(domain)
            .iter()
            .position(|l| l == level)
            .ok_or_else(|| Error::UnknownTaxonomyLevel {
                domain,
                level: level.to_string(),
            })
    }
}

impl Default for Taxonomy {
    fn default() -> Self {
        Taxonomy::bloom()
    }
}

impl TryFrom<Vec<DomainLevels>> for Taxonomy {
    type Error = Error;

    fn try_from(domains: Vec<DomainLevels>) -> Result<Self> {
        Taxonomy::new(domains)
    }
}

impl From<Taxonomy> for Vec<DomainLevels> {
    fn from(tax: Taxonomy) -> Self {
        tax.domains
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bloom_default_is_valid() {
        let tax = Taxonomy::bloom();
        assert_eq!(Taxonomy::new(tax.domains().to_vec()).unwrap(), tax);
        assert_eq!(tax.resolve(Domain::Psychomotor, "imitation").unwrap(), 0);
        assert_eq!(tax.resolve(Domain::Affective, "reacting").unwrap(), 1);
    }

    #[test]
    fn rejects_missing_domain_and_duplicates() {
        let mut domains = Taxonomy::bloom().domains().to_vec();
        domains.pop();
        assert!(matches!(
            Taxonomy::new(domains),
            Err(Error::InvalidTaxonomy(_))
        ));

        let mut domains = Taxonomy::bloom().domains().to_vec();
        domains[2].domain = Domain::Affective;
        assert!(Taxonomy::new(domains).is_err());

        let mut domains = Taxonomy::bloom().domains().to_vec();
        domains[0].levels.push("knowledge".into());
        assert!(Taxonomy::new(domains).is_err());
    }

    #[test]
    fn unknown_level() {
        let err = Taxonomy::bloom()
            .resolve(Domain::Cognitive, "nonexistent-level")
            .unwrap_err();
        assert!(matches!(
            err,
            Error::UnknownTaxonomyLevel {
                domain: Domain::Cognitive,
                ..
            }
        ));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let tax = Taxonomy::bloom();
        let text = serde_json::to_string(&tax).unwrap();
        let back: Taxonomy = serde_json::from_str(&text).unwrap();
        assert_eq!(back, tax);
        let bad = r#"[{"domain":"cognitive","levels":["a"]}]"#;
        assert!(serde_json::from_str::<Taxonomy>(bad).is_err());
    }
}
