use log::warn;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dispersion problem: `n` elements with a dense symmetric distance matrix,
/// and the cardinality `m` of the subset to select.
///
/// Instances are immutable once built and can be shared across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    n: usize,
    m: usize,
    dist: Vec<T>,
}

impl<T: Scalar> Instance<T> {
    /// Builds an instance from a row-major `n * n` matrix.
    ///
    /// The matrix must be symmetric with a zero diagonal and non-negative
    /// entries. Zero off-diagonal distances are accepted with a warning.
    pub fn new(n: usize, m: usize, dist: Vec<T>) -> Result<Self> {
        check_cardinality(n, m)?;
        if dist.len() != n * n {
            return Err(Error::InvalidInstance(format!(
                "expected {} matrix entries for n = {n}, got {}",
                n * n,
                dist.len()
            )));
        }
        let mut zero_pairs = 0usize;
        for i in 0..n {
            if dist[i * n + i] != T::zero() {
                return Err(Error::InvalidInstance(format!(
                    "diagonal entry d[{i}][{i}] = {} is not zero",
                    dist[i * n + i]
                )));
            }
            for j in (i + 1)..n {
                let (a, b) = (dist[i * n + j], dist[j * n + i]);
                if a != b {
                    return Err(Error::InvalidInstance(format!(
                        "matrix is not symmetric: d[{i}][{j}] = {a}, d[{j}][{i}] = {b}"
                    )));
                }
                // also rejects NaN
                if a.partial_cmp(&T::zero()).is_none_or(|o| o.is_lt()) {
                    return Err(Error::InvalidInstance(format!(
                        "negative or undefined distance d[{i}][{j}] = {a}"
                    )));
                }
                if a == T::zero() {
                    zero_pairs += 1;
                }
            }
        }
        if zero_pairs > 0 {
            warn!("{zero_pairs} pair(s) of distinct elements have zero distance");
        }
        Ok(Self { n, m, dist })
    }

    /// Builds an instance from a distance function evaluated on `i < j`.
    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut dist = vec![T::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Self::new(n, m, dist)
    }

    /// Same distances, different subset cardinality.
    pub fn with_m(&self, m: usize) -> Result<Self> {
        check_cardinality(self.n, m)?;
        Ok(Self {
            n: self.n,
            m,
            dist: self.dist.clone(),
        })
    }

    /// Converts the distance matrix to another scalar type.
    ///
    /// Fails if a distance cannot be represented, e.g. a fractional value
    /// converted to an integer type.
    pub fn convert<U: Scalar>(&self) -> Result<Instance<U>> {
        let dist = self
            .dist
            .iter()
            .map(|&d| {
                U::from_f64_checked(d.as_f64()).ok_or_else(|| {
                    Error::InvalidInstance(format!("distance {d} is not representable"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            n: self.n,
            m: self.m,
            dist,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> T {
        self.dist[i * self.n + j]
    }

    /// Distances from `i` to every element.
    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Row-major `n * n` matrix.
    pub fn matrix(&self) -> &[T] {
        &self.dist
    }

    /// Number of swap moves from any feasible solution: `m * (n - m)`.
    pub fn neighborhood_size(&self) -> usize {
        self.m * (self.n - self.m)
    }
}

pub(crate) fn check_cardinality(n: usize, m: usize) -> Result<()> {
    if n < 3 || m < 2 || m >= n {
        return Err(Error::InvalidInstance(format!(
            "subset cardinality must satisfy 1 < m < n, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}
