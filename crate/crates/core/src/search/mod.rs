//! The three search phases (descent, local-optima exploring, escaping), the
//! start-solution builder, and the iterated local search driver.
//!
//! All randomness of a run comes from one seeded generator, consumed in this
//! order: random start subsets, descent tie-breaks, weak-perturbation draws
//! (p then q for each sampled move, then the tie-break), and escape draws.

mod driver;
mod params;

use std::time::Instant;

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Instance, Move, Solution};
use crate::scalar::Scalar;

pub use driver::{ils_mindiff, Improvement, RunResult};
pub use params::{seconds, SearchParams, DEFAULT_SEED};

/// Generator used for every search run.
pub type SearchRng = ChaCha8Rng;

/// Operation counters accumulated by a [`Searcher`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub descent_calls: u64,
    /// Full neighborhood scans across all descents.
    pub descent_scans: u64,
    pub gain_evaluations: u64,
    pub improving_moves: u64,
    pub weak_perturbations: u64,
    pub explore_cycles: u64,
    pub escapes: u64,
    pub escape_swaps: u64,
}

/// What a single descent did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DescentOutcome {
    pub scans: u64,
    pub gain_evaluations: u64,
    pub moves_applied: u64,
    /// The deadline stopped the descent before it reached a local optimum.
    pub interrupted: bool,
}

/// Runs search phases on one instance with one random stream.
pub struct Searcher<'a, T, R = SearchRng> {
    instance: &'a Instance<T>,
    params: SearchParams,
    rng: R,
    deadline: Option<Instant>,
    stats: SearchStats,
}

impl<'a, T: Scalar, R: Rng> Searcher<'a, T, R> {
    pub fn new(instance: &'a Instance<T>, params: SearchParams, rng: R) -> Self {
        Self {
            instance,
            params,
            rng,
            deadline: None,
            stats: SearchStats::default(),
        }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn instance(&self) -> &'a Instance<T> {
        self.instance
    }

    pub fn params(&self) -> &SearchParams {
        &self.params
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn rng_mut(&mut self) -> &mut R {
        &mut self.rng
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// A uniformly random feasible solution.
    pub fn random_solution(&mut self) -> Solution<T> {
        let subset = index::sample(&mut self.rng, self.instance.n(), self.instance.m()).into_vec();
        Solution::evaluate(self.instance, &subset).expect("sampled subset is feasible")
    }

    /// Best-improvement descent over the swap neighborhood.
    ///
    /// Every iteration scans all `m (n - m)` swaps and applies the one with
    /// the smallest gain if it is negative, picking uniformly among equal
    /// gains. Stops at a local optimum or when the deadline passes (checked
    /// before each scan).
    pub fn descent(&mut self, sol: &mut Solution<T>) -> DescentOutcome {
        let inst = self.instance;
        let mut out = DescentOutcome::default();
        self.stats.descent_calls += 1;
        loop {
            if self.expired() {
                out.interrupted = true;
                break;
            }
            let mut best: Option<Move<T>> = None;
            let mut ties = 0u32;
            for &p in sol.selected() {
                for &q in sol.unselected() {
                    let gain = sol.swap_gain_unchecked(inst, p, q);
                    out.gain_evaluations += 1;
                    consider(&mut best, &mut ties, Move { p, q, gain }, &mut self.rng);
                }
            }
            out.scans += 1;
            match best {
                Some(mv) if mv.gain.improves_on(T::zero()) => {
                    sol.apply_swap_unchecked(inst, mv.p, mv.q);
                    out.moves_applied += 1;
                }
                _ => break,
            }
        }
        self.stats.descent_scans += out.scans;
        self.stats.gain_evaluations += out.gain_evaluations;
        self.stats.improving_moves += out.moves_applied;
        out
    }

    /// Applies `strength` perturbation steps. Each step samples `n + 1`
    /// random swaps (with replacement) and applies the best of them,
    /// whatever the sign of its gain.
    pub fn weak_perturb(&mut self, sol: &mut Solution<T>, strength: usize) {
        let inst = self.instance;
        let samples = inst.n() + 1;
        for _ in 0..strength {
            let mut best: Option<Move<T>> = None;
            let mut ties = 0u32;
            for _ in 0..samples {
                let p = sol.selected()[self.rng.gen_range(0..sol.selected().len())];
                let q = sol.unselected()[self.rng.gen_range(0..sol.unselected().len())];
                let gain = sol.swap_gain_unchecked(inst, p, q);
                self.stats.gain_evaluations += 1;
                consider(&mut best, &mut ties, Move { p, q, gain }, &mut self.rng);
            }
            let mv = best.expect("at least one sampled move");
            sol.apply_swap_unchecked(inst, mv.p, mv.q);
            self.stats.weak_perturbations += 1;
        }
    }

    /// Alternates weak perturbation and descent around a local optimum and
    /// returns the best local optimum met. The walk continues from each new
    /// local optimum, improving or not, and ends after `nbr_max` consecutive
    /// cycles without improving the best, or at the deadline.
    pub fn explore_local_optima(&mut self, mut sol: Solution<T>) -> Solution<T> {
        let mut best = sol.clone();
        let mut idle = 0;
        while idle < self.params.nbr_max && !self.expired() {
            self.weak_perturb(&mut sol, self.params.p_w);
            self.descent(&mut sol);
            self.stats.explore_cycles += 1;
            if sol.objective().improves_on(best.objective()) {
                best.clone_from(&sol);
                idle = 0;
            } else {
                idle += 1;
            }
        }
        best
    }

    /// Strong perturbation: `max(1, floor(alpha n / m))` uniformly random
    /// swaps, gains ignored.
    pub fn escape(&mut self, sol: &mut Solution<T>) {
        let inst = self.instance;
        let count = self.params.strong_strength(inst.n(), inst.m());
        for _ in 0..count {
            let p = sol.selected()[self.rng.gen_range(0..sol.selected().len())];
            let q = sol.unselected()[self.rng.gen_range(0..sol.unselected().len())];
            sol.apply_swap_unchecked(inst, p, q);
        }
        self.stats.escapes += 1;
        self.stats.escape_swaps += count as u64;
    }

    /// Start solution: the best of `init_restarts` descents from random
    /// subsets, or a single random subset for very large instances.
    pub fn initialize(&mut self) -> Solution<T> {
        if self.instance.n() >= self.params.random_init_threshold {
            return self.random_solution();
        }
        let mut best: Option<Solution<T>> = None;
        for _ in 0..self.params.init_restarts {
            let mut sol = self.random_solution();
            self.descent(&mut sol);
            match &best {
                Some(b) if b.objective() <= sol.objective() => {}
                _ => best = Some(sol),
            }
        }
        best.expect("at least one restart")
    }
}

/// Keeps the minimum-gain move, choosing uniformly among ties by reservoir
/// sampling.
#[inline]
fn consider<T: Scalar, R: Rng>(best: &mut Option<Move<T>>, ties: &mut u32, mv: Move<T>, rng: &mut R) {
    match best {
        None => {
            *best = Some(mv);
            *ties = 1;
        }
        Some(b) => {
            if mv.gain.improves_on(b.gain) {
                *best = Some(mv);
                *ties = 1;
            } else if mv.gain.ties_with(b.gain) {
                *ties += 1;
                if rng.gen_range(0..*ties) == 0 {
                    *best = Some(mv);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn pseudo_random(n: usize, m: usize, seed: u64) -> Instance<f64> {
        let mut rng = SearchRng::seed_from_u64(seed);
        Instance::from_fn(n, m, |_, _| rng.gen_range(1..1000) as f64 / 100.0).unwrap()
    }

    fn searcher(inst: &Instance<f64>, seed: u64) -> Searcher<'_, f64> {
        let params = SearchParams::for_instance(inst).with_seed(seed);
        Searcher::new(inst, params, SearchRng::seed_from_u64(seed))
    }

    fn min_gain(inst: &Instance<f64>, sol: &Solution<f64>) -> f64 {
        let mut g = f64::INFINITY;
        for &p in sol.selected() {
            for &q in sol.unselected() {
                g = g.min(sol.swap_gain(inst, p, q).unwrap());
            }
        }
        g
    }

    #[test]
    fn descent_reaches_local_optimum() {
        for seed in 0..10 {
            let inst = pseudo_random(30, 8, seed);
            let mut s = searcher(&inst, seed);
            let mut sol = s.random_solution();
            let start = sol.objective();
            let out = s.descent(&mut sol);
            assert!(!out.interrupted);
            assert!(sol.objective() <= start);
            assert!(min_gain(&inst, &sol) >= -1e-9);
            assert_eq!(out.gain_evaluations, out.scans * 8 * 22);
            assert_eq!(out.scans, out.moves_applied + 1);
        }
    }

    #[test]
    fn descent_from_local_optimum_is_a_no_op() {
        let inst = pseudo_random(20, 6, 3);
        let mut s = searcher(&inst, 3);
        let mut sol = s.random_solution();
        s.descent(&mut sol);
        let before = sol.clone();
        let out = s.descent(&mut sol);
        assert_eq!(out.moves_applied, 0);
        assert_eq!(sol, before);
    }

    #[test]
    fn pair_instances_never_move_in_descent() {
        let inst = pseudo_random(15, 2, 1);
        let mut s = searcher(&inst, 1);
        let mut sol = s.random_solution();
        let before = sol.clone();
        assert_eq!(s.descent(&mut sol).moves_applied, 0);
        assert_eq!(sol, before);
        assert_eq!(sol.objective(), 0.0);
    }

    #[test]
    fn weak_perturb_moves_at_most_strength_elements() {
        let inst = pseudo_random(25, 7, 9);
        for seed in 0..20 {
            let mut s = searcher(&inst, seed);
            let mut sol = s.random_solution();
            let before: Vec<usize> = sol.selected().to_vec();
            s.weak_perturb(&mut sol, 2);
            let changed = before.iter().filter(|e| !sol.contains(**e)).count();
            assert!(changed <= 2);
            assert_eq!(s.stats().weak_perturbations, 2);
            assert_eq!(s.stats().gain_evaluations, 2 * 26);
        }
    }

    #[test]
    fn perturbations_are_deterministic() {
        let inst = pseudo_random(25, 7, 4);
        let run = || {
            let mut s = searcher(&inst, 77);
            let mut sol = s.random_solution();
            s.weak_perturb(&mut sol, 3);
            s.escape(&mut sol);
            sol
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn escape_applies_exactly_strong_strength_swaps() {
        // each escape swap moves one element; count them through the cache
        let inst = pseudo_random(100, 10, 2);
        let mut s = searcher(&inst, 5);
        let mut sol = s.random_solution();
        let before = sol.clone();
        s.escape(&mut sol);
        assert_eq!(s.stats().escape_swaps, 10);
        let changed = before.selected().iter().filter(|e| !sol.contains(**e)).count();
        assert!((1..=10).contains(&changed));
        let inst = pseudo_random(25, 7, 2);
        let mut s = searcher(&inst, 5);
        let mut sol = s.random_solution();
        s.escape(&mut sol);
        assert_eq!(s.stats().escape_swaps, 3);
        let fresh = Solution::evaluate(&inst, sol.selected()).unwrap();
        assert!((fresh.objective() - sol.objective()).abs() < 1e-9);
    }

    #[test]
    fn explore_never_worsens() {
        for seed in 0..5 {
            let inst = pseudo_random(25, 7, 100 + seed);
            let mut s = searcher(&inst, seed);
            let mut sol = s.random_solution();
            s.descent(&mut sol);
            let start = sol.objective();
            let out = s.explore_local_optima(sol);
            assert!(out.objective() <= start);
            assert!(s.stats().explore_cycles >= 5);
        }
    }

    #[test]
    fn explore_single_cycle_when_depth_is_one() {
        let inst = pseudo_random(15, 2, 8);
        let params = SearchParams { nbr_max: 1, ..SearchParams::for_instance(&inst) };
        let mut s = Searcher::new(&inst, params, SearchRng::seed_from_u64(1));
        let sol = s.random_solution();
        // m = 2 never improves, so the first cycle ends the phase
        let out = s.explore_local_optima(sol);
        assert_eq!(s.stats().explore_cycles, 1);
        assert_eq!(out.objective(), 0.0);
    }

    #[test]
    fn initialize_descent_counts() {
        let inst = pseudo_random(100, 10, 6);
        let mut s = searcher(&inst, 6);
        s.initialize();
        assert_eq!(s.stats().descent_calls, 10);

        let params = SearchParams { random_init_threshold: 100, ..SearchParams::for_instance(&inst) };
        let mut s = Searcher::new(&inst, params, SearchRng::seed_from_u64(6));
        s.initialize();
        assert_eq!(s.stats().descent_calls, 0);
    }

    #[test]
    fn deadline_interrupts_descent() {
        let inst = pseudo_random(60, 20, 6);
        let mut s = searcher(&inst, 6).with_deadline(Instant::now());
        let mut sol = s.random_solution();
        let out = s.descent(&mut sol);
        assert!(out.interrupted);
        assert_eq!(out.scans, 0);
    }
}
