use std::path::PathBuf;
use std::time::Duration;

use rayon::prelude::*;

use super::stats::{InstanceStats, RunRecord};
use crate::error::{Error, Result};
use crate::instances::{instance_name, read_instance};
use crate::model::Instance;
use crate::search::{ils_mindiff, SearchParams};

/// An instance with the name it is reported under.
#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub name: String,
    pub instance: Instance<f64>,
}

impl NamedInstance {
    pub fn new(name: impl Into<String>, instance: Instance<f64>) -> Self {
        Self { name: name.into(), instance }
    }
}

/// Where an experiment gets an instance from.
#[derive(Debug, Clone)]
pub enum InstanceSource {
    File { path: PathBuf, m: Option<usize> },
    Loaded(NamedInstance),
}

impl InstanceSource {
    pub fn name(&self) -> String {
        match self {
            InstanceSource::File { path, .. } => instance_name(path),
            InstanceSource::Loaded(named) => named.name.clone(),
        }
    }

    pub fn load(&self) -> Result<NamedInstance> {
        match self {
            InstanceSource::File { path, m } => Ok(NamedInstance::new(instance_name(path), read_instance(path, *m)?)),
            InstanceSource::Loaded(named) => Ok(named.clone()),
        }
    }
}

impl From<NamedInstance> for InstanceSource {
    fn from(named: NamedInstance) -> Self {
        InstanceSource::Loaded(named)
    }
}

/// Replacements for the per-instance default parameters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamOverrides {
    pub t_max: Option<Duration>,
    pub nbr_max: Option<usize>,
    pub p_w: Option<usize>,
    pub alpha: Option<f64>,
    pub max_iterations: Option<u64>,
    pub target_objective: Option<f64>,
}

impl ParamOverrides {
    pub fn apply(&self, mut params: SearchParams) -> SearchParams {
        if let Some(t) = self.t_max {
            params.t_max = t;
        }
        if let Some(v) = self.nbr_max {
            params.nbr_max = v;
        }
        if let Some(v) = self.p_w {
            params.p_w = v;
        }
        if let Some(v) = self.alpha {
            params.alpha = v;
        }
        if self.max_iterations.is_some() {
            params.max_iterations = self.max_iterations;
        }
        if self.target_objective.is_some() {
            params.target_objective = self.target_objective;
        }
        params
    }

    /// Defaults for `instance` with these overrides applied.
    pub fn params_for(&self, instance: &Instance<f64>) -> SearchParams {
        self.apply(SearchParams::for_instance(instance))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Runs per instance; run `k` uses seed `seed_base + k`.
    pub runs: usize,
    pub seed_base: u64,
    /// Worker threads. Results do not depend on it.
    pub jobs: usize,
    pub overrides: ParamOverrides,
}

impl ExperimentConfig {
    pub fn new(runs: usize, seed_base: u64) -> Self {
        Self {
            runs,
            seed_base,
            jobs: 1,
            overrides: ParamOverrides::default(),
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_overrides(mut self, overrides: ParamOverrides) -> Self {
        self.overrides = overrides;
        self
    }
}

#[derive(Debug, Clone)]
pub enum ExperimentRow {
    Completed { stats: InstanceStats, runs: Vec<RunRecord> },
    Failed { instance: String, error: String },
}

impl ExperimentRow {
    pub fn instance(&self) -> &str {
        match self {
            ExperimentRow::Completed { stats, .. } => &stats.instance,
            ExperimentRow::Failed { instance, .. } => instance,
        }
    }

    pub fn stats(&self) -> Option<&InstanceStats> {
        match self {
            ExperimentRow::Completed { stats, .. } => Some(stats),
            ExperimentRow::Failed { .. } => None,
        }
    }
}

/// Runs `config.runs` seeded searches on every instance and aggregates them.
///
/// Instances that cannot be loaded become [`ExperimentRow::Failed`] rows;
/// rows come back in input order whatever the number of workers.
pub fn run_experiment(sources: &[InstanceSource], config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    if config.runs == 0 {
        return Err(Error::InvalidParams("an experiment needs at least one run per instance".into()));
    }
    let loaded: Vec<Result<NamedInstance>> = sources.iter().map(InstanceSource::load).collect();

    let mut tasks = Vec::new();
    for (idx, item) in loaded.iter().enumerate() {
        if let Ok(named) = item {
            let base = config.overrides.params_for(&named.instance);
            base.validate()?;
            for k in 0..config.runs {
                let seed = config.seed_base.wrapping_add(k as u64);
                tasks.push((idx, base.clone().with_seed(seed)));
            }
        }
    }

    let execute = |tasks: &[(usize, SearchParams)]| -> Result<Vec<RunRecord>> {
        tasks
            .par_iter()
            .map(|(idx, params)| {
                let named = loaded[*idx].as_ref().expect("only loaded instances are scheduled");
                ils_mindiff(&named.instance, params).map(|r| RunRecord::from_result(&r))
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let records = pool.install(|| execute(&tasks))?;

    let mut records = records.into_iter();
    let rows = loaded
        .into_iter()
        .zip(sources)
        .map(|(item, source)| match item {
            Ok(named) => {
                let runs: Vec<RunRecord> = records.by_ref().take(config.runs).collect();
                let stats = InstanceStats::from_runs(&named.name, named.instance.n(), named.instance.m(), &runs);
                ExperimentRow::Completed { stats, runs }
            }
            Err(e) => {
                log::error!("{}: {e}", source.name());
                ExperimentRow::Failed { instance: source.name(), error: e.to_string() }
            }
        })
        .collect();
    Ok(rows)
}
