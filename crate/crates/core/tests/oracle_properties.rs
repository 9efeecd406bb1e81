mod common;

use common::{brute_optimum, random_instance};
use mindiff::instances::{generate, Family, InstanceSpec};
use mindiff::model::Instance;
use mindiff::search::{SearchParams, SearchRng, Searcher};
use mindiff::{solve_exact, DEFAULT_LIMIT};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

#[test]
fn matches_recursive_enumeration() {
    for seed in 0..20 {
        let n = 6 + (seed as usize % 5);
        let m = 2 + (seed as usize % (n - 3));
        let inst = random_instance(n, m, seed);
        let res = solve_exact(&inst, DEFAULT_LIMIT).unwrap();
        assert!((res.optimum - brute_optimum(&inst)).abs() < 1e-9);
        assert_eq!(res.subsets_enumerated, mindiff::binomial(n, m));
        assert_eq!(res.solution(&inst).objective(), res.optimum);
    }
}

#[test]
fn som_objectives_are_integral() {
    let inst = generate(&InstanceSpec::new(Family::Som, 10, 4, 5)).unwrap();
    let mut subset = vec![0, 1, 2, 3];
    loop {
        let f = mindiff::Solution::evaluate(&inst, &subset).unwrap().objective();
        assert_eq!(f.fract(), 0.0);
        // next 4-subset of 0..10
        let mut i = 4;
        while i > 0 && subset[i - 1] == 10 - 4 + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..4 {
            subset[j] = subset[j - 1] + 1;
        }
    }
    let exact = solve_exact(&inst.convert::<i64>().unwrap(), DEFAULT_LIMIT).unwrap();
    assert_eq!(exact.optimum as f64, solve_exact(&inst, DEFAULT_LIMIT).unwrap().optimum);
}

#[test]
fn descent_never_beats_the_oracle() {
    for seed in 0..10 {
        let inst = random_instance(10, 4, 50 + seed);
        let opt = solve_exact(&inst, DEFAULT_LIMIT).unwrap().optimum;
        let mut s = Searcher::new(&inst, SearchParams::for_instance(&inst), SearchRng::seed_from_u64(seed));
        for _ in 0..20 {
            let mut sol = s.random_solution();
            s.descent(&mut sol);
            assert!(sol.objective() >= opt - 1e-9);
        }
        // starting at the optimum nothing moves
        let best = solve_exact(&inst, DEFAULT_LIMIT).unwrap();
        let mut sol = best.solution(&inst);
        assert_eq!(s.descent(&mut sol).moves_applied, 0);
        assert_eq!(sol.selected(), best.optimal_subset.as_slice());
    }
}

#[test]
fn n25_m7_cross_check_with_long_searches() {
    let inst = common::gkd(25, 7, 6);
    let exact = solve_exact(&inst, DEFAULT_LIMIT).unwrap();
    assert_eq!(exact.subsets_enumerated, 480_700);
    let mut best_found = f64::INFINITY;
    for seed in 0..100 {
        let params = SearchParams {
            max_iterations: Some(50),
            target_objective: Some(exact.optimum + 1e-9),
            ..SearchParams::for_instance(&inst).with_seed(seed)
        };
        let res = mindiff::ils_mindiff(&inst, &params).unwrap();
        assert!(res.best_objective >= exact.optimum - 1e-9);
        best_found = best_found.min(res.best_objective);
    }
    assert!((best_found - exact.optimum).abs() < 1e-9);
}

fn permuted(inst: &Instance<f64>, perm: &[usize]) -> Instance<f64> {
    Instance::from_fn(inst.n(), inst.m(), |i, j| inst.dist(perm[i], perm[j])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabeling_preserves_the_optimum(seed in any::<u64>()) {
        let inst = random_instance(9, 4, seed);
        let mut perm: Vec<usize> = (0..9).collect();
        perm.shuffle(&mut SearchRng::seed_from_u64(seed));
        let a = solve_exact(&inst, DEFAULT_LIMIT).unwrap().optimum;
        let b = solve_exact(&permuted(&inst, &perm), DEFAULT_LIMIT).unwrap().optimum;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn scaling_scales_the_optimum(seed in any::<u64>(), c in 0.5f64..8.0) {
        // integral distances keep the argmin unambiguous under scaling
        let inst = random_instance(9, 4, seed);
        let ints = Instance::from_fn(9, 4, |i, j| (inst.dist(i, j) * 100.0).round()).unwrap();
        let scaled = Instance::from_fn(9, 4, |i, j| ints.dist(i, j) * c).unwrap();
        let a = solve_exact(&ints, DEFAULT_LIMIT).unwrap();
        let b = solve_exact(&scaled, DEFAULT_LIMIT).unwrap();
        prop_assert!((a.optimum * c - b.optimum).abs() < 1e-6);
        let f = mindiff::Solution::evaluate(&scaled, &a.optimal_subset).unwrap().objective();
        prop_assert!((f - b.optimum).abs() < 1e-6);
    }
}
