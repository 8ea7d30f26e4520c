//! Flag values read from a JSON settings file.
//!
//! The file is an object keyed by long flag names (`"k"`, `"series-a"`,
//! ...). Keys may sit at the top level or inside an object named after
//! the subcommand; the subcommand section wins over the top level, and a
//! flag given on the command line wins over both.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Default)]
pub struct Settings {
    root: Map<String, Value>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Settings::default());
        };
        let text = crate::read(path)?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(root)) => Ok(Settings { root }),
            Ok(_) => Err(CliError::Usage(format!(
                "{}: settings must be a JSON object",
                path.display()
            ))),
            Err(e) => Err(CliError::Usage(format!("{}: {e}", path.display()))),
        }
    }

    fn lookup(&self, command: &str, key: &str) -> Option<&Value> {
        self.root
            .get(command)
            .and_then(|section| section.get(key))
            .or_else(|| self.root.get(key).filter(|v| !v.is_object()))
    }

    pub fn get<T: DeserializeOwned>(
        &self,
        command: &str,
        key: &str,
    ) -> Result<Option<T>, CliError> {
        self.lookup(command, key)
            .map(|v| {
                serde_json::from_value(v.clone())
                    .map_err(|e| CliError::Usage(format!("settings `{key}`: {e}")))
            })
            .transpose()
    }

    /// Command-line value, else settings value, else `default`.
    pub fn pick<T: DeserializeOwned>(
        &self,
        flag: Option<T>,
        command: &str,
        key: &str,
        default: Option<T>,
    ) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => Ok(self.get(command, key)?.or(default)),
        }
    }

    pub fn require<T: DeserializeOwned>(
        &self,
        flag: Option<T>,
        command: &str,
        key: &str,
    ) -> Result<T, CliError> {
        self.pick(flag, command, key, None)?
            .ok_or_else(|| CliError::Usage(format!("{command}: missing required --{key}")))
    }
}
