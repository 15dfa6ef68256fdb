//! Flat `key = value` configuration files.
//!
//! One key per line; blank lines and lines starting with `#` are skipped,
//! and anything after ` #` on a value line is a comment. Keys may be written
//! with or without the leading `--` of the matching CLI flag.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

pub type ConfigMap = BTreeMap<String, String>;

pub fn parse_config(text: &str) -> Result<ConfigMap> {
    let mut map = ConfigMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line = line.split_once(" #").map_or(line, |(before, _)| before).trim();
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = key.trim().trim_start_matches("--").to_string();
        if key.is_empty() {
            return Err(Error::Parse(format!("config line {}: empty key", lineno + 1)));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("config line {}: duplicate key {key:?}", lineno + 1)));
        }
    }
    Ok(map)
}

pub fn load_config(path: &Path) -> Result<ConfigMap> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}
