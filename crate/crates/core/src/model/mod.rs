//! Problem instance, solution representation and incremental move evaluation.

mod instance;
mod solution;

pub use instance::Instance;
pub(crate) use instance::check_cardinality;
pub use solution::{Move, Solution};
