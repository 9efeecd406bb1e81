use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::Scalar;

/// A swap candidate: `p` leaves the selected set, `q` enters it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Move<T> {
    pub p: usize,
    pub q: usize,
    /// Objective change `f(S') - f(S)`; negative means improving.
    pub gain: T,
}

/// A feasible `m`-subset together with its distance-sum cache.
///
/// `delta[w]` holds the sum of distances from `w` to every selected element,
/// for all `n` elements, selected or not. Keeping the unselected entries up
/// to date lets a swap evaluate the entering element with one subtraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    /// Selected elements in ascending order.
    selected: Vec<usize>,
    /// Unselected elements in ascending order.
    unselected: Vec<usize>,
    member: Vec<bool>,
    delta: Vec<T>,
    objective: T,
}

impl<T: Scalar> Solution<T> {
    /// Evaluates a subset from scratch in `O(n m)`.
    pub fn evaluate(instance: &Instance<T>, subset: &[usize]) -> Result<Self> {
        let n = instance.n();
        if subset.len() != instance.m() {
            return Err(Error::InvalidSubset(format!(
                "expected {} elements, got {}",
                instance.m(),
                subset.len()
            )));
        }
        let mut member = vec![false; n];
        for &e in subset {
            if e >= n {
                return Err(Error::InvalidSubset(format!("index {e} out of range 0..{n}")));
            }
            if member[e] {
                return Err(Error::InvalidSubset(format!("index {e} appears twice")));
            }
            member[e] = true;
        }
        let selected: Vec<usize> = (0..n).filter(|&e| member[e]).collect();
        let unselected: Vec<usize> = (0..n).filter(|&e| !member[e]).collect();
        let mut sol = Self {
            selected,
            unselected,
            member,
            delta: vec![T::zero(); n],
            objective: T::zero(),
        };
        sol.recompute(instance);
        Ok(sol)
    }

    /// Rebuilds the cache and the objective from scratch, discarding any
    /// accumulated rounding drift.
    pub fn recompute(&mut self, instance: &Instance<T>) {
        for (w, slot) in self.delta.iter_mut().enumerate() {
            let row = instance.row(w);
            let mut sum = T::zero();
            for &z in &self.selected {
                sum += row[z];
            }
            *slot = sum;
        }
        self.objective = self.spread();
    }

    fn spread(&self) -> T {
        let first = self.delta[self.selected[0]];
        let (mut hi, mut lo) = (first, first);
        for &u in &self.selected[1..] {
            let d = self.delta[u];
            hi = hi.max_of(d);
            lo = lo.min_of(d);
        }
        hi - lo
    }

    #[inline]
    pub fn objective(&self) -> T {
        self.objective
    }

    #[inline]
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    #[inline]
    pub fn unselected(&self) -> &[usize] {
        &self.unselected
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.member.get(e).copied().unwrap_or(false)
    }

    /// Cached distance sum of element `w` to the selected set.
    #[inline]
    pub fn delta(&self, w: usize) -> T {
        self.delta[w]
    }

    pub fn deltas(&self) -> &[T] {
        &self.delta
    }

    fn check_move(&self, p: usize, q: usize) -> Result<()> {
        if !self.contains(p) {
            return Err(Error::InvalidMove { p, q, reason: "p is not selected" });
        }
        if q >= self.member.len() {
            return Err(Error::InvalidMove { p, q, reason: "q is out of range" });
        }
        if self.member[q] {
            return Err(Error::InvalidMove { p, q, reason: "q is already selected" });
        }
        Ok(())
    }

    /// Objective change of `swap(p, q)` without applying it.
    pub fn swap_gain(&self, instance: &Instance<T>, p: usize, q: usize) -> Result<T> {
        self.check_move(p, q)?;
        Ok(self.swap_gain_unchecked(instance, p, q))
    }

    /// `O(m)` move evaluation. The caller guarantees `p` is selected and `q` is not.
    #[inline]
    pub fn swap_gain_unchecked(&self, instance: &Instance<T>, p: usize, q: usize) -> T {
        let row_p = instance.row(p);
        let row_q = instance.row(q);
        let entering = self.delta[q] - row_q[p];
        let (mut hi, mut lo) = (entering, entering);
        for &w in &self.selected {
            if w == p {
                continue;
            }
            let d = self.delta[w] - row_p[w] + row_q[w];
            hi = hi.max_of(d);
            lo = lo.min_of(d);
        }
        (hi - lo) - self.objective
    }

    pub fn evaluate_move(&self, instance: &Instance<T>, p: usize, q: usize) -> Result<Move<T>> {
        Ok(Move { p, q, gain: self.swap_gain(instance, p, q)? })
    }

    /// Applies `swap(p, q)` in `O(n)`.
    pub fn apply_swap(&mut self, instance: &Instance<T>, p: usize, q: usize) -> Result<()> {
        self.check_move(p, q)?;
        self.apply_swap_unchecked(instance, p, q);
        Ok(())
    }

    pub fn apply_swap_unchecked(&mut self, instance: &Instance<T>, p: usize, q: usize) {
        let row_p = instance.row(p);
        let row_q = instance.row(q);
        // zero diagonal makes this uniform: delta[p] gains d_pq, delta[q] loses d_qp
        for ((slot, &dp), &dq) in self.delta.iter_mut().zip(row_p).zip(row_q) {
            *slot += dq - dp;
        }
        self.member[p] = false;
        self.member[q] = true;
        replace_sorted(&mut self.selected, p, q);
        replace_sorted(&mut self.unselected, q, p);
        self.objective = self.spread();
    }
}

/// Replaces `old` by `new` in an ascending vector, keeping it sorted.
fn replace_sorted(v: &mut Vec<usize>, old: usize, new: usize) {
    let at = v.binary_search(&old).expect("element present in sorted list");
    v.remove(at);
    let at = v.binary_search(&new).unwrap_or_else(|i| i);
    v.insert(at, new);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four(m: usize) -> Instance<f64> {
        let d = [[0., 1., 2., 4.], [1., 0., 3., 5.], [2., 3., 0., 6.], [4., 5., 6., 0.]];
        Instance::from_fn(4, m, |i, j| d[i][j]).unwrap()
    }

    #[test]
    fn evaluates_three_element_example() {
        let inst = four(3);
        let sol = Solution::evaluate(&inst, &[2, 0, 1]).unwrap();
        assert_eq!(sol.selected(), &[0, 1, 2]);
        assert_eq!(sol.unselected(), &[3]);
        assert_eq!((sol.delta(0), sol.delta(1), sol.delta(2)), (3.0, 4.0, 5.0));
        assert_eq!(sol.delta(3), 15.0);
        assert_eq!(sol.objective(), 2.0);
    }

    #[test]
    fn pair_solutions_have_zero_spread() {
        let d = [[0., 1., 2.], [1., 0., 3.], [2., 3., 0.]];
        let inst = Instance::from_fn(3, 2, |i, j| d[i][j]).unwrap();
        let s = Solution::evaluate(&inst, &[0, 1]).unwrap();
        assert_eq!((s.delta(0), s.delta(1), s.objective()), (1.0, 1.0, 0.0));
        let s = Solution::evaluate(&inst, &[1, 2]).unwrap();
        assert_eq!((s.delta(1), s.delta(2), s.objective()), (3.0, 3.0, 0.0));
        assert_eq!(s.swap_gain(&inst, 1, 0).unwrap(), 0.0);
    }

    #[test]
    fn swap_gain_and_apply() {
        let inst = four(3);
        let mut sol = Solution::evaluate(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(sol.swap_gain(&inst, 2, 3).unwrap(), 2.0);
        let before = sol.clone();
        sol.apply_swap(&inst, 2, 3).unwrap();
        assert_eq!(sol.selected(), &[0, 1, 3]);
        assert_eq!(sol.objective(), 4.0);
        assert_eq!(sol, Solution::evaluate(&inst, &[0, 1, 3]).unwrap());
        sol.apply_swap(&inst, 3, 2).unwrap();
        assert_eq!(sol.selected(), before.selected());
        assert!((sol.objective() - before.objective()).abs() < 1e-9);
    }

    #[test]
    fn identical_rows_swap_is_neutral() {
        // elements 0 and 3 are indistinguishable
        let d = [
            [0., 2., 5., 1.],
            [2., 0., 7., 2.],
            [5., 7., 0., 5.],
            [1., 2., 5., 0.],
        ];
        let inst = Instance::from_fn(4, 3, |i, j| d[i][j]).unwrap();
        let sol = Solution::evaluate(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(sol.swap_gain(&inst, 0, 3).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_subsets_and_moves() {
        let inst = four(3);
        assert!(matches!(Solution::evaluate(&inst, &[0, 1]), Err(Error::InvalidSubset(_))));
        assert!(Solution::evaluate(&inst, &[0, 1, 1]).is_err());
        assert!(Solution::evaluate(&inst, &[0, 1, 4]).is_err());
        let mut sol = Solution::evaluate(&inst, &[0, 1, 2]).unwrap();
        assert!(matches!(sol.swap_gain(&inst, 3, 0), Err(Error::InvalidMove { .. })));
        assert!(sol.swap_gain(&inst, 0, 1).is_err());
        assert!(sol.apply_swap(&inst, 0, 9).is_err());
        assert_eq!(sol.selected(), &[0, 1, 2]);
    }

    #[test]
    fn integer_distances() {
        let inst: Instance<i64> = four(3).convert().unwrap();
        let sol = Solution::evaluate(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(sol.objective(), 2);
        assert_eq!(sol.swap_gain(&inst, 2, 3).unwrap(), 2);
    }
}
