use super::CliError;
use clap::ValueEnum;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
    Jsonl,
}

/// Contents of the `--config` TOML file. Every key is optional; unknown
/// keys are rejected so typos do not silently fall back to defaults.
///
/// ```toml
/// limit = 12
/// threads = 4
/// cache = "slowcolor.cache"
/// format = "text"
/// seed = 7
///
/// [verify]
/// n = 8
///
/// [table]
/// r = 20
/// s = 20
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub limit: Option<usize>,
    pub threads: Option<usize>,
    pub cache: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub verify: VerifyConfig,
    #[serde(default)]
    pub table: TableConfig,
}

/// Defaults for `verify` flags of the same names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub k: Option<usize>,
    pub samples: Option<usize>,
    pub sample_n: Option<usize>,
}

/// Defaults for `table --r/--s`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableConfig {
    pub r: Option<usize>,
    pub s: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: Config = toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        if config.limit == Some(0) {
            return Err(CliError::Usage("config: limit must be positive".into()));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let c = Config::parse(
            "limit = 10\nthreads = 2\ncache = \"x.cache\"\nformat = \"jsonl\"\nseed = 3\n[verify]\nn = 8\n[table]\nr = 4\n",
        )
        .unwrap();
        assert_eq!(c.limit, Some(10));
        assert_eq!(c.format, Some(Format::Jsonl));
        assert_eq!(c.cache, Some(PathBuf::from("x.cache")));
        assert_eq!(c.verify.n, Some(8));
        assert_eq!(c.table, TableConfig { r: Some(4), s: None });
        assert_eq!(Config::parse("").unwrap(), Config::default());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(Config::parse("limt = 3").is_err());
        assert!(Config::parse("[verify]\nsize = 3").is_err());
        assert!(Config::parse("format = \"xml\"").is_err());
        assert!(Config::parse("limit = 0").is_err());
        assert!(Config::parse("limit = -1").is_err());
    }
}
