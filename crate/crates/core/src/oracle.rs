//! Exact solver by exhaustive enumeration, for small instances.
//!
//! Subsets are visited in lexicographic order. Distance sums are kept per
//! prefix length, so moving to the next subset only recomputes the levels
//! after the first changed position. Sums are accumulated in ascending index
//! order, the same order [`Solution::evaluate`] uses, so the optimum equals
//! the objective of a fresh evaluation of the optimal subset bit for bit.

use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

/// Default ceiling on the number of subsets the oracle agrees to enumerate.
pub const DEFAULT_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub optimum: T,
    /// Lexicographically smallest optimal subset.
    pub optimal_subset: Vec<usize>,
    pub subsets_enumerated: u128,
}

impl<T: Scalar> OracleResult<T> {
    pub fn solution(&self, instance: &Instance<T>) -> Solution<T> {
        Solution::evaluate(instance, &self.optimal_subset).expect("oracle subset is feasible")
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Minimizes the differential dispersion over every `m`-subset.
///
/// Refuses instances with more than `limit` subsets.
pub fn solve_exact<T: Scalar>(instance: &Instance<T>, limit: u128) -> Result<OracleResult<T>> {
    let (n, m) = (instance.n(), instance.m());
    let count = binomial(n, m);
    if count > limit {
        return Err(Error::TooManySubsets { count, limit });
    }

    let mut subset: Vec<usize> = (0..m).collect();
    // prefix[k][w] = sum of d(w, subset[i]) for i < k, for k in 0..m
    let mut prefix = vec![vec![T::zero(); n]; m];
    refresh_prefixes(instance, &subset, &mut prefix, 0);

    let mut best_value = spread(instance, &subset, &prefix[m - 1]);
    let mut best_subset = subset.clone();
    let mut visited: u128 = 1;

    while let Some(first_changed) = next_combination(&mut subset, n) {
        refresh_prefixes(instance, &subset, &mut prefix, first_changed);
        let value = spread(instance, &subset, &prefix[m - 1]);
        visited += 1;
        if value < best_value {
            best_value = value;
            best_subset.copy_from_slice(&subset);
        }
    }

    Ok(OracleResult {
        optimum: best_value,
        optimal_subset: best_subset,
        subsets_enumerated: visited,
    })
}

/// Advances to the next subset in lexicographic order and returns the first
/// position that changed, or `None` after the last subset.
fn next_combination(subset: &mut [usize], n: usize) -> Option<usize> {
    let m = subset.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if subset[i] < n - m + i {
            subset[i] += 1;
            for j in (i + 1)..m {
                subset[j] = subset[j - 1] + 1;
            }
            return Some(i);
        }
    }
    None
}

/// Recomputes every prefix level that depends on positions `>= from`.
fn refresh_prefixes<T: Scalar>(instance: &Instance<T>, subset: &[usize], prefix: &mut [Vec<T>], from: usize) {
    let m = subset.len();
    for k in (from + 1)..m {
        let (done, rest) = prefix.split_at_mut(k);
        let prev = &done[k - 1];
        let row = instance.row(subset[k - 1]);
        for ((slot, &p), &d) in rest[0].iter_mut().zip(prev).zip(row) {
            *slot = p + d;
        }
    }
}

fn spread<T: Scalar>(instance: &Instance<T>, subset: &[usize], last_prefix: &[T]) -> T {
    let last = subset[subset.len() - 1];
    let row = instance.row(last);
    let first = last_prefix[subset[0]] + row[subset[0]];
    let (mut hi, mut lo) = (first, first);
    for &u in &subset[1..] {
        let d = last_prefix[u] + row[u];
        hi = hi.max_of(d);
        lo = lo.min_of(d);
    }
    hi - lo
}
