//! Batch verification over parameter grids, driven by a small `key = value`
//! configuration format.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    build, default_grid, descriptor, verify_instance, Instance, Params, RegistryError, Report,
    CATALOG,
};
use crate::arith::parse_rational;

/// What to verify and how.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub order: usize,
    pub ids: Vec<String>,
    /// Worker threads; `0` lets the thread pool decide.
    pub jobs: usize,
    /// Grid overrides per identity; identities without one use their defaults.
    pub grids: BTreeMap<String, Vec<Params>>,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            order: 12,
            ids: CATALOG.iter().map(|d| d.id.to_string()).collect(),
            jobs: 0,
            grids: BTreeMap::new(),
        }
    }
}

/// One `(identity, parameters)` point of a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub id: String,
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub order: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchOutput {
    pub reports: Vec<Report>,
    pub summary: Summary,
}

impl BatchOutput {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

fn config_err(line: usize, msg: impl std::fmt::Display) -> RegistryError {
    RegistryError::Config(format!("line {line}: {msg}"))
}

/// Parses `name=p/q, name=p/q` into parameters.
pub fn parse_point(text: &str) -> Result<Params, String> {
    let mut params = Params::new();
    for entry in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got `{entry}`"))?;
        let value = parse_rational(value).map_err(|e| e.to_string())?;
        if params.insert(name.trim().to_string(), value).is_some() {
            return Err(format!("parameter `{}` given twice", name.trim()));
        }
    }
    Ok(params)
}

/// Parses the batch configuration.
///
/// ```text
/// # comment
/// order = 12
/// ids = H1, Ultra1, L2        # or `all`
/// jobs = 4
/// grid.Ultra1 = lambda=1/2; lambda=3
/// ```
pub fn parse_config(text: &str) -> Result<BatchConfig, RegistryError> {
    let mut config = BatchConfig::default();
    let mut seen = Vec::<String>::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(line_no, format!("expected key = value, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if seen.iter().any(|k| k == key) {
            return Err(config_err(line_no, format!("duplicate key `{key}`")));
        }
        seen.push(key.to_string());
        match key {
            "order" => {
                config.order = value.parse().map_err(|_| {
                    config_err(
                        line_no,
                        format!("order must be a nonnegative integer, got `{value}`"),
                    )
                })?;
            }
            "jobs" => {
                config.jobs = value.parse().map_err(|_| {
                    config_err(
                        line_no,
                        format!("jobs must be a nonnegative integer, got `{value}`"),
                    )
                })?;
            }
            "ids" => {
                if value != "all" {
                    let ids: Vec<String> = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect();
                    for id in &ids {
                        descriptor(id).map_err(|e| config_err(line_no, e))?;
                    }
                    config.ids = ids;
                }
            }
            _ => {
                let Some(id) = key.strip_prefix("grid.") else {
                    return Err(config_err(line_no, format!("unknown key `{key}`")));
                };
                descriptor(id).map_err(|e| config_err(line_no, e))?;
                let points = value
                    .split(';')
                    .map(str::trim)
                    .filter(|p| !p.is_empty())
                    .map(parse_point)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| config_err(line_no, e))?;
                config.grids.insert(id.to_string(), points);
            }
        }
    }
    if let Some(id) = config.grids.keys().find(|g| !config.ids.contains(g)) {
        return Err(RegistryError::Config(format!(
            "grid given for `{id}`, which is not among the selected ids"
        )));
    }
    Ok(config)
}

impl BatchConfig {
    /// Expands the configuration into `(id, params)` jobs.
    pub fn jobs(&self) -> Result<Vec<Job>, RegistryError> {
        let mut jobs = Vec::new();
        for id in &self.ids {
            let grid = match self.grids.get(id) {
                Some(g) => g.clone(),
                None => default_grid(id)?,
            };
            jobs.extend(grid.into_iter().map(|params| Job {
                id: id.clone(),
                params,
            }));
        }
        Ok(jobs)
    }

    /// Builds every job; the first invalid point aborts the batch.
    pub fn instances(&self) -> Result<Vec<Instance>, RegistryError> {
        self.jobs()?
            .par_iter()
            .map(|job| build(&job.id, &job.params, self.order))
            .collect()
    }
}

/// Verifies every job of `config` on a pool of `config.jobs` threads. Reports
/// come back in job order regardless of scheduling.
pub fn run_all(config: &BatchConfig) -> Result<BatchOutput, RegistryError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| RegistryError::Config(format!("cannot start thread pool: {e}")))?;
    let instances = pool.install(|| config.instances())?;
    let reports: Vec<Report> = pool.install(|| instances.par_iter().map(verify_instance).collect());
    let passed = reports.iter().filter(|r| r.passed()).count();
    let summary = Summary {
        order: config.order,
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
        elapsed: start.elapsed(),
    };
    Ok(BatchOutput { reports, summary })
}
