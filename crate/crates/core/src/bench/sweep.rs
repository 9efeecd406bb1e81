use std::fmt;
use std::str::FromStr;

use super::experiment::{run_experiment, ExperimentConfig, ExperimentRow, InstanceSource, NamedInstance};
use crate::error::{Error, Result};

pub const SWEEP_HEADER: [&str; 4] = ["param", "value", "f_best", "f_avg"];

/// Search parameter varied by [`parameter_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    NbrMax,
    WeakStrength,
    Alpha,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::NbrMax => "nbr_max",
            SweepParam::WeakStrength => "p_w",
            SweepParam::Alpha => "alpha",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "nbr_max" => Ok(SweepParam::NbrMax),
            "p_w" | "pw" => Ok(SweepParam::WeakStrength),
            "alpha" => Ok(SweepParam::Alpha),
            _ => Err(Error::Config(format!("unknown sweep parameter {s:?} (expected nbr_max, p_w or alpha)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: SweepParam,
    pub value: f64,
    pub f_best: f64,
    pub f_avg: f64,
}

fn positive_integer(param: SweepParam, value: f64) -> Result<usize> {
    if value >= 1.0 && value.fract() == 0.0 {
        Ok(value as usize)
    } else {
        Err(Error::InvalidParams(format!("{param} must be a positive integer, got {value}")))
    }
}

/// Runs one experiment per value of `param`, all other parameters at their
/// defaults (plus whatever `config.overrides` sets).
pub fn parameter_sweep(
    instance: &NamedInstance,
    param: SweepParam,
    values: &[f64],
    config: &ExperimentConfig,
) -> Result<Vec<SweepRow>> {
    let source = [InstanceSource::Loaded(instance.clone())];
    values
        .iter()
        .map(|&value| {
            let mut cfg = config.clone();
            match param {
                SweepParam::NbrMax => cfg.overrides.nbr_max = Some(positive_integer(param, value)?),
                SweepParam::WeakStrength => cfg.overrides.p_w = Some(positive_integer(param, value)?),
                SweepParam::Alpha => cfg.overrides.alpha = Some(value),
            }
            let rows = run_experiment(&source, &cfg)?;
            match &rows[0] {
                ExperimentRow::Completed { stats, .. } => {
                    Ok(SweepRow { param, value, f_best: stats.f_best, f_avg: stats.f_avg })
                }
                ExperimentRow::Failed { error, .. } => Err(Error::Config(error.clone())),
            }
        })
        .collect()
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([r.param.name().to_owned(), r.value.to_string(), r.f_best.to_string(), r.f_avg.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
