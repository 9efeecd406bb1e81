use std::time::{Duration, Instant};

use rand::SeedableRng;

use super::{SearchParams, SearchRng, SearchStats, Searcher};
use crate::error::Result;
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

/// A new best solution found during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Improvement<T> {
    pub elapsed: Duration,
    pub objective: T,
}

#[derive(Debug, Clone)]
pub struct RunResult<T> {
    pub best_solution: Solution<T>,
    pub best_objective: T,
    pub elapsed_to_best: Duration,
    pub elapsed_total: Duration,
    /// Completed descent / explore / escape cycles.
    pub iterations: u64,
    pub seed: u64,
    /// Every update of the best solution, in time order.
    pub improvements: Vec<Improvement<T>>,
    pub stats: SearchStats,
}

/// Iterated local search for the minimum differential dispersion problem.
///
/// Starting from [`Searcher::initialize`], each cycle runs a descent, explores
/// nearby local optima, records the best solution, and escapes with a strong
/// perturbation. The run ends at `t_max`, after `max_iterations` cycles, when
/// the best objective reaches `target_objective` (up to the scalar
/// tolerance), or when it reaches zero
/// (no solution can do better).
pub fn ils_mindiff<T: Scalar>(instance: &Instance<T>, params: &SearchParams) -> Result<RunResult<T>> {
    params.validate()?;
    let start = Instant::now();
    let rng = SearchRng::seed_from_u64(params.seed);
    let mut searcher = Searcher::new(instance, params.clone(), rng).with_deadline(start + params.t_max);

    let mut current = searcher.initialize();
    let mut best = current.clone();
    let mut elapsed_to_best = start.elapsed();
    let mut improvements = vec![Improvement { elapsed: elapsed_to_best, objective: best.objective() }];
    let mut iterations = 0u64;

    let done = |best: &Solution<T>, iterations: u64, searcher: &Searcher<'_, T>| {
        best.objective() <= T::TOLERANCE
            || params.target_objective.is_some_and(|t| best.objective().as_f64() <= t + T::TOLERANCE.as_f64())
            || params.max_iterations.is_some_and(|cap| iterations >= cap)
            || searcher.expired()
    };

    while !done(&best, iterations, &searcher) {
        searcher.descent(&mut current);
        current = searcher.explore_local_optima(current);
        if current.objective().improves_on(best.objective()) {
            best.clone_from(&current);
            elapsed_to_best = start.elapsed();
            improvements.push(Improvement { elapsed: elapsed_to_best, objective: best.objective() });
        }
        searcher.escape(&mut current);
        iterations += 1;
    }

    // drop rounding drift accumulated by the incremental cache
    best.recompute(instance);
    let elapsed_total = start.elapsed();
    Ok(RunResult {
        best_objective: best.objective(),
        best_solution: best,
        elapsed_to_best,
        elapsed_total,
        iterations,
        seed: params.seed,
        improvements,
        stats: searcher.stats().clone(),
    })
}
