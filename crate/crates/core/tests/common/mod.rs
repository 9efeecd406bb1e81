#![allow(dead_code)]

use mindiff::instances::{generate, Family, InstanceSpec};
use mindiff::model::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Objective by direct summation over the subset, no caches involved.
pub fn brute_objective(inst: &Instance<f64>, subset: &[usize]) -> f64 {
    let sums: Vec<f64> = subset
        .iter()
        .map(|&u| subset.iter().filter(|&&v| v != u).map(|&v| inst.dist(u, v)).sum())
        .collect();
    let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Minimum over all m-subsets by recursive enumeration.
pub fn brute_optimum(inst: &Instance<f64>) -> f64 {
    fn rec(inst: &Instance<f64>, start: usize, cur: &mut Vec<usize>, best: &mut f64) {
        if cur.len() == inst.m() {
            *best = best.min(brute_objective(inst, cur));
            return;
        }
        for e in start..inst.n() {
            cur.push(e);
            rec(inst, e + 1, cur, best);
            cur.pop();
        }
    }
    let mut best = f64::INFINITY;
    rec(inst, 0, &mut Vec::new(), &mut best);
    best
}

pub fn random_instance(n: usize, m: usize, seed: u64) -> Instance<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Instance::from_fn(n, m, |_, _| rng.gen_range(1..=1000) as f64 / 100.0).unwrap()
}

pub fn gkd(n: usize, m: usize, seed: u64) -> Instance<f64> {
    generate(&InstanceSpec::new(Family::Gkd, n, m, seed)).unwrap()
}
