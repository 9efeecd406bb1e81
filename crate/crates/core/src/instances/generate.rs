//! Synthetic instances in the style of the SOM, GKD and MDG benchmark
//! families. They follow each family's distance distribution but are not
//! copies of the published instance files.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{check_cardinality, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Integer distances uniform in `[1, 9]`.
    Som,
    /// Euclidean distances between uniform points of `[0, 10]^2`, 2 decimals.
    Gkd,
    /// Uniform in `(0, 10]`, 2 decimals.
    MdgA,
    /// Uniform in `(0, 1000]`, 2 decimals.
    MdgB,
    /// Integer distances uniform in `[1, 1000]`.
    MdgC,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Som, Family::Gkd, Family::MdgA, Family::MdgB, Family::MdgC];

    pub fn name(self) -> &'static str {
        match self {
            Family::Som => "som",
            Family::Gkd => "gkd",
            Family::MdgA => "mdg-a",
            Family::MdgB => "mdg-b",
            Family::MdgC => "mdg-c",
        }
    }

    /// Whether every generated distance is an integer.
    pub fn is_integral(self) -> bool {
        matches!(self, Family::Som | Family::MdgC)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!("unknown instance family {s:?} (expected som, gkd, mdg-a, mdg-b or mdg-c)"))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, m: usize, seed: u64) -> Self {
        Self { family, n, m, seed }
    }

    /// Name in the benchmark style, e.g. `gkd_s7_n25_m7`.
    pub fn name(&self) -> String {
        format!("{}_s{}_n{}_m{}", self.family, self.seed, self.n, self.m)
    }
}

/// Deterministic in the spec: equal specs give bit-identical matrices.
pub fn generate(spec: &InstanceSpec) -> Result<Instance<f64>> {
    let InstanceSpec { family, n, m, seed } = *spec;
    check_cardinality(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::Gkd => {
            let points: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen_range(0.0..=10.0), rng.gen_range(0.0..=10.0)))
                .collect();
            Instance::from_fn(n, m, |i, j| {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                // coincident points would give 0; keep distances positive
                round2(dx.hypot(dy)).max(0.01)
            })
        }
        Family::MdgA => Instance::from_fn(n, m, |_, _| rng.gen_range(1..=1_000u32) as f64 / 100.0),
        Family::MdgB => Instance::from_fn(n, m, |_, _| rng.gen_range(1..=100_000u32) as f64 / 100.0),
        Family::MdgC => Instance::from_fn(n, m, |_, _| rng.gen_range(1..=1_000u32) as f64),
        Family::Som => Instance::from_fn(n, m, |_, _| rng.gen_range(1..=9u32) as f64),
    }
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}
