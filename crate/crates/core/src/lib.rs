//! Solver library for the minimum differential dispersion problem: pick `m`
//! of `n` elements so that the per-element sums of distances to the other
//! picked elements are as even as possible (minimize `max - min`).
//!
//! * [`model`]: instances, solutions with an incremental distance-sum cache.
//! * [`search`]: descent, local-optima exploring, escaping and the iterated
//!   local search driver [`ils_mindiff`].
//! * [`oracle`]: exhaustive enumeration for small instances.
//! * [`instances`]: instance files and synthetic generators.
//! * [`bench`]: multi-run experiments, statistics, sign test and reports.
//!
//! The algorithms are generic over the distance type ([`Scalar`]); the
//! aliases below fix it to `f64`, which is what the file readers produce.

pub mod bench;
pub mod error;
pub mod instances;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use model::Move;
pub use oracle::{binomial, solve_exact, DEFAULT_LIMIT};
pub use scalar::Scalar;
pub use search::{ils_mindiff, SearchParams, SearchRng, Searcher, DEFAULT_SEED};

pub type Instance = model::Instance<f64>;
pub type Solution = model::Solution<f64>;
pub type RunResult = search::RunResult<f64>;
pub type OracleResult = oracle::OracleResult<f64>;

/// Integer-valued distances (e.g. SOM or MDG-c style), exact arithmetic.
pub type IntInstance = model::Instance<i64>;
pub type IntSolution = model::Solution<i64>;
