//! Flat key/value config files. Keys are the long flag names; `-` and `_`
//! are interchangeable. Values fill only the options left unset on the
//! command line.

use std::path::Path;
use std::str::FromStr;

use toml::{Table, Value};

const KNOWN_KEYS: &[&str] = &[
    "d",
    "e",
    "n",
    "variant",
    "coeffs",
    "poly-json",
    "precision",
    "tolerance",
    "claim",
    "min",
    "max",
    "x-max",
    "n-max",
    "jobs",
    "mode",
    "format",
    "near-miss",
    "seed",
];

#[derive(Debug, Default)]
pub struct FileConfig {
    table: Table,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let raw: Table = text
            .parse()
            .map_err(|e| format!("malformed config {}: {e}", path.display()))?;
        let mut table = Table::new();
        for (k, v) in raw {
            let key = k.replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("unknown config key '{k}'"));
            }
            if matches!(v, Value::Table(_)) {
                return Err(format!("config key '{k}' must be a plain value"));
            }
            table.insert(key, v);
        }
        Ok(FileConfig { table })
    }

    fn raw(&self, key: &str) -> Option<String> {
        self.table.get(key).map(|v| match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => items
                .iter()
                .map(|i| match i {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|s| s.trim().parse::<T>().map_err(|e| format!("config key '{key}': {e}")))
            .transpose()
    }

    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|s| {
                s.split(',')
                    .map(|p| p.trim().parse::<T>().map_err(|e| format!("config key '{key}': {e}")))
                    .collect()
            })
            .transpose()
    }

    pub fn get_enum<T: clap::ValueEnum>(&self, key: &str) -> Result<Option<T>, String> {
        self.raw(key)
            .map(|s| T::from_str(s.trim(), true).map_err(|e| format!("config key '{key}': {e}")))
            .transpose()
    }
}

/// Command-line value if given, else the config value.
pub fn merge<T>(flag: Option<T>, file: Result<Option<T>, String>) -> Result<Option<T>, String> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_str(text: &str) -> Result<FileConfig, String> {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(&p, text).unwrap();
        FileConfig::load(Some(&p))
    }

    #[test]
    fn values_and_lists() {
        let c = from_str("max = 51\nn = [3, 5, 7]\nnear_miss = 4\nvariant = \"positive\"\n").unwrap();
        assert_eq!(c.get::<i64>("max").unwrap(), Some(51));
        assert_eq!(c.get_list::<u32>("n").unwrap(), Some(vec![3, 5, 7]));
        assert_eq!(c.get::<u64>("near-miss").unwrap(), Some(4));
        assert_eq!(c.get::<String>("variant").unwrap().as_deref(), Some("positive"));
        assert_eq!(c.get::<u32>("seed").unwrap(), None);
        let c = from_str("n = \"3,5\"\n").unwrap();
        assert_eq!(c.get_list::<u32>("n").unwrap(), Some(vec![3, 5]));
    }

    #[test]
    fn flags_win() {
        let c = from_str("max = 51\n").unwrap();
        assert_eq!(merge(Some(7), c.get::<i64>("max")).unwrap(), Some(7));
        assert_eq!(merge(None, c.get::<i64>("max")).unwrap(), Some(51));
    }

    #[test]
    fn rejects_unknown_and_nested() {
        assert!(from_str("colour = 1\n").unwrap_err().contains("unknown config key"));
        assert!(from_str("[section]\nmax = 1\n").is_err());
        assert!(from_str("max = 1 1\n").unwrap_err().contains("malformed"));
    }
}
