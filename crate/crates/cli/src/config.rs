//! Flat `key = value` config files and parameter resolution.
//!
//! Command-line flags override config entries; every parameter a command
//! consumes is echoed back into its JSON report so identical (config,
//! seed) pairs reproduce identical bytes.

use std::collections::BTreeMap;
use std::path::Path;

use crate::{validation, CliResult};

/// Parsed config: flat string map, `#` starts a comment, blank lines
/// ignored.  Keys may not repeat.
#[derive(Debug, Clone, Default)]
pub struct Config {
    pub entries: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> CliResult<Config> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| validation(format!("config line {}: expected key = value, got {raw:?}", lineno + 1)))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(validation(format!("config line {}: empty key", lineno + 1)));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(validation(format!("config line {}: duplicate key {key:?}", lineno + 1)));
            }
        }
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> CliResult<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| validation(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }
}

/// One command's resolved parameters: flag value wins, then config, then
/// default.  Records everything it hands out for the report echo.
pub struct Params<'c> {
    config: &'c Config,
    /// (key, value) pairs actually consumed, for the config echo.
    pub resolved: BTreeMap<String, String>,
}

impl<'c> Params<'c> {
    pub fn new(config: &'c Config) -> Self {
        Params {
            config,
            resolved: BTreeMap::new(),
        }
    }

    fn raw(&mut self, key: &str, flag: Option<&str>, default: Option<&str>) -> CliResult<String> {
        let v = flag
            .map(|s| s.to_string())
            .or_else(|| self.config.get(key).map(|s| s.to_string()))
            .or_else(|| default.map(|s| s.to_string()))
            .ok_or_else(|| validation(format!("missing required parameter {key:?} (flag or config)")))?;
        self.resolved.insert(key.to_string(), v.clone());
        Ok(v)
    }

    pub fn string(&mut self, key: &str, flag: Option<&str>, default: Option<&str>) -> CliResult<String> {
        self.raw(key, flag, default)
    }

    pub fn usize(&mut self, key: &str, flag: Option<usize>, default: Option<usize>) -> CliResult<usize> {
        let fs = flag.map(|v| v.to_string());
        let ds = default.map(|v| v.to_string());
        let v = self.raw(key, fs.as_deref(), ds.as_deref())?;
        v.parse()
            .map_err(|_| validation(format!("parameter {key:?}: expected unsigned integer, got {v:?}")))
    }

    pub fn u64(&mut self, key: &str, flag: Option<u64>, default: Option<u64>) -> CliResult<u64> {
        let fs = flag.map(|v| v.to_string());
        let ds = default.map(|v| v.to_string());
        let v = self.raw(key, fs.as_deref(), ds.as_deref())?;
        v.parse()
            .map_err(|_| validation(format!("parameter {key:?}: expected unsigned integer, got {v:?}")))
    }

    pub fn u32(&mut self, key: &str, flag: Option<u32>, default: Option<u32>) -> CliResult<u32> {
        Ok(self.u64(key, flag.map(u64::from), default.map(u64::from))? as u32)
    }
}

/// Target partitions for `cl-sample` / `ff-census`: comma-separated items,
/// each `trivial` or `+`-joined exponents, e.g. `1,2,1+1`.
pub fn parse_targets(l: u64, text: &str) -> CliResult<Vec<hurwitz_core::cl::PartitionType>> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        if item == "trivial" {
            out.push(hurwitz_core::cl::PartitionType::trivial(l));
            continue;
        }
        let parts: Result<Vec<u32>, _> = item.split('+').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts
            .map_err(|_| validation(format!("bad target {item:?}: expected e.g. `2` or `1+1`")))?;
        if parts.iter().any(|&e| e == 0) {
            return Err(validation(format!("bad target {item:?}: zero exponent")));
        }
        out.push(hurwitz_core::cl::PartitionType::new(l, parts));
    }
    if out.is_empty() {
        return Err(validation("empty targets list"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blanks() {
        let c = Config::parse("# hi\n\n n_max = 6 # tail\ngroup = S3\n").unwrap();
        assert_eq!(c.get("n_max"), Some("6"));
        assert_eq!(c.get("group"), Some("S3"));
        assert_eq!(c.entries.len(), 2);
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(Config::parse("a = 1\na = 2\n").is_err());
        assert!(Config::parse("just words\n").is_err());
        assert!(Config::parse("= 3\n").is_err());
    }

    #[test]
    fn flag_overrides_config_overrides_default() {
        let c = Config::parse("n = 5\n").unwrap();
        let mut p = Params::new(&c);
        assert_eq!(p.usize("n", Some(9), Some(1)).unwrap(), 9);
        assert_eq!(p.usize("n", None, Some(1)).unwrap(), 5);
        assert_eq!(p.usize("m", None, Some(1)).unwrap(), 1);
        assert!(p.usize("k", None, None).is_err());
    }

    #[test]
    fn target_parsing() {
        let ts = parse_targets(3, "trivial, 1, 2, 1+1").unwrap();
        let labels: Vec<String> = ts.iter().map(|t| t.label()).collect();
        assert_eq!(labels, ["3^[]", "3^[1]", "3^[2]", "3^[1,1]"]);
        assert!(parse_targets(3, "").is_err());
        assert!(parse_targets(3, "1,x").is_err());
        assert!(parse_targets(3, "0").is_err());
    }
}
