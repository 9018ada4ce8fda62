//! Run configuration: a JSON file whose `params` keys mirror the
//! subcommand flags, overridden key by key by flags given on the command
//! line.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;
use crate::record::Format;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Must match the subcommand when present.
    pub command: Option<String>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }
}

/// Overlays the non-null fields of `flags` on the file parameters and
/// deserializes the result, rejecting unknown keys.
pub fn merge<T>(file: &serde_json::Map<String, serde_json::Value>, flags: &T) -> Result<T, CliError>
where
    T: Serialize + DeserializeOwned,
{
    let mut merged = file.clone();
    let overrides = serde_json::to_value(flags).map_err(|e| CliError::Config(e.to_string()))?;
    if let serde_json::Value::Object(map) = overrides {
        for (k, v) in map {
            if !v.is_null() {
                merged.insert(k, v);
            }
        }
    }
    serde_json::from_value(serde_json::Value::Object(merged)).map_err(|e| CliError::Config(format!("params: {e}")))
}

pub fn required<T: Clone>(value: &Option<T>, name: &str) -> Result<T, CliError> {
    value.clone().ok_or_else(|| CliError::Config(format!("missing parameter `{name}`")))
}

/// Comma-separated reals on the command line, a JSON array (or the same
/// comma-separated string) in a config file. Vectors put time first.
#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

impl FromStr for Reals {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Reals(Vec::new()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Reals)
    }
}

impl Serialize for Reals {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Reals {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            List(Vec<f64>),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::List(v) => Ok(Reals(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A value given as JSON text on the command line and inline in a config.
#[derive(Debug, Clone, PartialEq)]
pub struct Json<T>(pub T);

impl<T: DeserializeOwned> FromStr for Json<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s).map(Json).map_err(|e| e.to_string())
    }
}

impl<T: Serialize> Serialize for Json<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Json<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        T::deserialize(d).map(Json)
    }
}
