//! Run configuration: an optional TOML file whose sections are overlaid
//! with command-line flags before being deserialised into typed records.
//!
//! ```toml
//! format = "csv"
//! threads = 4
//!
//! [mean_square]
//! target = "AV"
//! s1_re = 2.0
//! s2_re = 2.0
//! sigma3 = 2.0
//! t_samples = [50.0, 100.0, 200.0, 400.0]
//! evaluator = "direct"
//! eps = 1e-10
//! ```

use std::path::{Path, PathBuf};

use dzeta::ComplexValue;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use toml::{Table, Value};

use crate::ConfigError;

const SECTIONS: [&str; 5] = ["eval", "mean_square", "regime", "relation_check", "mv_test"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Top-level keys of the config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Globals {
    format: Option<Format>,
    out: Option<PathBuf>,
    threads: Option<usize>,
    constants: Option<PathBuf>,
}

pub struct Config {
    globals: Globals,
    sections: Table,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let Some(path) = path else {
            return Ok(Self { globals: Globals::default(), sections: Table::new() });
        };
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut root: Table = text.parse().map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut sections = Table::new();
        for name in SECTIONS {
            if let Some(v) = root.remove(name) {
                if !v.is_table() {
                    return Err(ConfigError(format!("[{name}] must be a table")));
                }
                sections.insert(name.into(), v);
            }
        }
        let globals = Value::Table(root)
            .try_into()
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Ok(Self { globals, sections })
    }

    pub fn format(&self, flag: Option<Format>) -> Format {
        flag.or(self.globals.format).unwrap_or(Format::Csv)
    }

    pub fn out(&self, flag: Option<&Path>) -> Option<PathBuf> {
        flag.map(Path::to_path_buf).or_else(|| self.globals.out.clone())
    }

    pub fn threads(&self, flag: Option<usize>) -> Option<usize> {
        flag.or(self.globals.threads)
    }

    pub fn constants(&self, flag: Option<&Path>) -> Option<PathBuf> {
        flag.map(Path::to_path_buf).or_else(|| self.globals.constants.clone())
    }

    /// The named section, empty when the file has none.
    pub fn section(&self, name: &str) -> Section {
        let table = self.sections.get(name).and_then(Value::as_table).cloned().unwrap_or_default();
        Section { name: name.to_string(), table }
    }
}

/// A config section being overlaid with flags.
pub struct Section {
    name: String,
    table: Table,
}

impl Section {
    pub fn set(&mut self, key: &str, value: Option<impl Into<Value>>) {
        if let Some(v) = value {
            self.table.insert(key.into(), v.into());
        }
    }

    /// Stores `z` as `{key}_re`, `{key}_im`.
    pub fn set_complex(&mut self, key: &str, z: Option<ComplexValue>) {
        if let Some(z) = z {
            self.table.insert(format!("{key}_re"), Value::Float(z.re));
            self.table.insert(format!("{key}_im"), Value::Float(z.im));
        }
    }

    pub fn set_floats(&mut self, key: &str, xs: &[f64]) {
        if !xs.is_empty() {
            self.table.insert(key.into(), Value::Array(xs.iter().map(|&x| Value::Float(x)).collect()));
        }
    }

    /// Overrides one field of a nested table, seeding it from `default`.
    pub fn set_nested(&mut self, key: &str, default: Table, field: &str, value: Option<impl Into<Value>>) {
        if let Some(v) = value {
            let entry = self.table.entry(key).or_insert_with(|| Value::Table(default));
            if let Value::Table(t) = entry {
                t.insert(field.into(), v.into());
            }
        }
    }

    pub fn table_mut(&mut self) -> &mut Table {
        &mut self.table
    }

    pub fn parse<T: DeserializeOwned>(self) -> Result<T, ConfigError> {
        let name = self.name;
        Value::Table(self.table).try_into().map_err(|e| ConfigError(format!("[{name}] {e}")))
    }
}

/// Serialises `value` into a TOML table (used to seed nested defaults).
pub fn to_table<T: serde::Serialize>(value: &T) -> Table {
    Table::try_from(value).expect("plain records serialise to TOML")
}

/// `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<ComplexValue, String> {
    let mut parts = text.split(',').map(str::trim);
    let re = parts.next().unwrap_or_default().parse::<f64>().map_err(|e| format!("{text:?}: {e}"))?;
    let im = match parts.next() {
        Some(p) => p.parse::<f64>().map_err(|e| format!("{text:?}: {e}"))?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("{text:?}: expected re or re,im"));
    }
    Ok(ComplexValue::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_flags() {
        assert_eq!(parse_complex("2").unwrap(), ComplexValue::new(2.0, 0.0));
        assert_eq!(parse_complex("0.4, -50").unwrap(), ComplexValue::new(0.4, -50.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let mut table = Table::new();
        table.insert("eps".into(), Value::Float(1e-6));
        let mut s = Section { name: "eval".into(), table };
        s.set("eps", Some(1e-10));
        s.set("x", None::<f64>);
        assert_eq!(s.table.get("eps"), Some(&Value::Float(1e-10)));
        assert!(!s.table.contains_key("x"));
    }
}
