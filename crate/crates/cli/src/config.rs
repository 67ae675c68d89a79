// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Flat `key=value` configuration and typed parameter tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Keys that configure the run itself rather than a model.
pub const RUN_KEYS: &[&str] = &["out", "format", "workers", "seed", "model", "time"];

/// Contents of a config file, split into run settings and model parameters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub run: BTreeMap<String, String>,
    pub params: Vec<(String, String)>,
}

/// Parses `key=value` lines. Blank lines and lines starting with `#` are
/// ignored.
pub fn parse_config(text: &str) -> Result<FileConfig, CliError> {
    let mut cfg = FileConfig::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = split_pair(line).map_err(|e| CliError::Config(format!("line {}: {e}", n + 1)))?;
        if RUN_KEYS.contains(&k.as_str()) {
            cfg.run.insert(k, v);
        } else {
            cfg.params.push((k, v));
        }
    }
    Ok(cfg)
}

pub fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Splits `key=value`, trimming both sides.
pub fn split_pair(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("empty key in {s:?}"));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

/// Effective run settings after merging file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub out: PathBuf,
    pub formats: Vec<Format>,
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

pub fn parse_formats(s: &str) -> Result<Vec<Format>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let f = match part {
            "csv" => Format::Csv,
            "svg" => Format::Svg,
            other => {
                return Err(CliError::Config(format!(
                    "unknown format {other:?}; valid formats: csv, svg"
                )))
            }
        };
        if !out.contains(&f) {
            out.push(f);
        }
    }
    if out.is_empty() {
        return Err(CliError::Config("no output format given".into()));
    }
    Ok(out)
}

pub fn parse_workers(s: &str) -> Result<usize, CliError> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::Config(format!("workers must be a positive integer, got {s:?}"))),
    }
}

/// Parameter table with fixed keys and defaults. Lookups of undeclared keys
/// are programming errors and panic.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    entries: Vec<(String, String)>,
}

impl Params {
    /// Applies `overrides` in order to `defaults`. Unknown keys are rejected
    /// with the list of valid ones.
    pub fn new(
        context: &str,
        defaults: &[(&str, String)],
        overrides: &[(String, String)],
    ) -> Result<Self, CliError> {
        let mut entries: Vec<(String, String)> =
            defaults.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        for (k, v) in overrides {
            match entries.iter_mut().find(|(key, _)| key == k) {
                Some(slot) => slot.1 = v.clone(),
                None => {
                    let valid: Vec<&str> = defaults.iter().map(|(k, _)| *k).collect();
                    return Err(CliError::Config(format!(
                        "unknown key {k:?} for {context}; valid keys: {}",
                        valid.join(", ")
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn raw(&self, key: &str) -> &str {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .unwrap_or_else(|| panic!("undeclared parameter {key}"))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let v = self.raw(key);
        v.parse::<f64>()
            .map_err(|_| CliError::Config(format!("{key}: expected a number, got {v:?}")))
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        let v = self.raw(key);
        v.parse::<usize>()
            .map_err(|_| CliError::Config(format!("{key}: expected a non-negative integer, got {v:?}")))
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        match self.raw(key) {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            v => Err(CliError::Config(format!("{key}: expected true or false, got {v:?}"))),
        }
    }

    /// Comma-separated list of numbers.
    pub fn list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let v = self.raw(key);
        let items = v
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Config(format!("{key}: bad number {s:?} in list")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if items.is_empty() {
            return Err(CliError::Config(format!("{key}: empty list")));
        }
        Ok(items)
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}
