use std::time::Duration;

use crate::search::RunResult;

/// Outcome of one seeded search run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub objective: f64,
    pub subset: Vec<usize>,
    pub elapsed_to_best: Duration,
    pub elapsed_total: Duration,
    pub iterations: u64,
}

impl RunRecord {
    pub fn from_result(result: &RunResult<f64>) -> Self {
        Self {
            seed: result.seed,
            objective: result.best_objective,
            subset: result.best_solution.selected().to_vec(),
            elapsed_to_best: result.elapsed_to_best,
            elapsed_total: result.elapsed_total,
            iterations: result.iterations,
        }
    }
}

/// Aggregates over the runs on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceStats {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub runs: usize,
    pub f_best: f64,
    pub f_avg: f64,
    pub f_worst: f64,
    /// Population standard deviation of the run objectives.
    pub sigma: f64,
    /// Mean time to reach each run's best solution, in seconds.
    pub t_avg: f64,
}

impl InstanceStats {
    /// Panics if `runs` is empty.
    pub fn from_runs(instance: impl Into<String>, n: usize, m: usize, runs: &[RunRecord]) -> Self {
        let objectives: Vec<f64> = runs.iter().map(|r| r.objective).collect();
        let times: Vec<f64> = runs.iter().map(|r| r.elapsed_to_best.as_secs_f64()).collect();
        let (f_best, f_avg, f_worst, sigma) = summarize(&objectives);
        Self {
            instance: instance.into(),
            n,
            m,
            runs: runs.len(),
            f_best,
            f_avg,
            f_worst,
            sigma,
            t_avg: times.iter().sum::<f64>() / times.len() as f64,
        }
    }
}

/// `(min, mean, max, population std dev)`.
///
/// Identical samples give a mean equal to the common value and a deviation of
/// exactly zero.
pub fn summarize(values: &[f64]) -> (f64, f64, f64, f64) {
    assert!(!values.is_empty(), "summary of an empty sample");
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max {
        return (min, min, max, 0.0);
    }
    let len = values.len() as f64;
    let mean = (values.iter().sum::<f64>() / len).clamp(min, max);
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / len;
    (min, mean, max, var.sqrt())
}
