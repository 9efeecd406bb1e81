use std::time::Duration;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::Scalar;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_170_101;

/// Knobs of the iterated local search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    /// Wall-clock budget.
    pub t_max: Duration,
    /// Consecutive non-improving exploring cycles before escaping.
    pub nbr_max: usize,
    /// Weak perturbation strength: best-of-sample swaps per perturbation.
    pub p_w: usize,
    /// Strong perturbation coefficient, in `[1.0, 2.0)`.
    pub alpha: f64,
    pub seed: u64,
    /// Random restarts (each followed by descent) used to pick the start solution.
    pub init_restarts: usize,
    /// From this many elements on, the start solution is a single random subset.
    pub random_init_threshold: usize,
    /// Optional cap on driver cycles. Makes a run's outcome independent of
    /// machine speed whenever the cap is reached before `t_max`.
    pub max_iterations: Option<u64>,
    /// Stop as soon as the best objective is at or below this value, up to
    /// the scalar tolerance.
    pub target_objective: Option<f64>,
}

impl SearchParams {
    /// Parameters used in the reference experiments, scaled to `instance`.
    ///
    /// `t_max = n` seconds, `nbr_max = 5`, `alpha = 1.0`, and `p_w = 3` when
    /// `n < 500` or `n = 500` with `n / m < 10`, otherwise `p_w = 2`.
    pub fn for_instance<T: Scalar>(instance: &Instance<T>) -> Self {
        Self::for_size(instance.n(), instance.m())
    }

    pub fn for_size(n: usize, m: usize) -> Self {
        // n / m < 10  <=>  n < 10 m
        let p_w = if n < 500 || (n == 500 && n < 10 * m) { 3 } else { 2 };
        Self {
            t_max: Duration::from_secs(n as u64),
            nbr_max: 5,
            p_w,
            alpha: 1.0,
            seed: DEFAULT_SEED,
            init_restarts: 10,
            random_init_threshold: 3000,
            max_iterations: None,
            target_objective: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_time_limit(mut self, t_max: Duration) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_max.is_zero() {
            return Err(Error::InvalidParams("time limit must be positive".into()));
        }
        if self.nbr_max == 0 {
            return Err(Error::InvalidParams("nbr_max must be at least 1".into()));
        }
        if self.p_w == 0 {
            return Err(Error::InvalidParams("p_w must be at least 1".into()));
        }
        if !(1.0..2.0).contains(&self.alpha) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in [1.0, 2.0), got {}",
                self.alpha
            )));
        }
        if self.init_restarts == 0 {
            return Err(Error::InvalidParams("init_restarts must be at least 1".into()));
        }
        if self.random_init_threshold == 0 {
            return Err(Error::InvalidParams("random_init_threshold must be at least 1".into()));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidParams("max_iterations must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of random swaps applied by the escape phase: `max(1, floor(alpha n / m))`.
    pub fn strong_strength(&self, n: usize, m: usize) -> usize {
        // nudge so that e.g. 1.1 * 30 / 3 does not floor to 10
        let raw = (self.alpha * n as f64 / m as f64 + 1e-9).floor();
        (raw as usize).max(1)
    }
}

/// Converts a time limit in (possibly fractional) seconds.
pub fn seconds(secs: f64) -> Result<Duration> {
    if !secs.is_finite() || secs <= 0.0 {
        return Err(Error::InvalidParams(format!("time limit must be positive, got {secs}")));
    }
    Ok(Duration::from_secs_f64(secs))
}
