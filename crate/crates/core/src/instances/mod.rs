//! Reading, writing and generating problem instances.

mod generate;
mod io;

pub use generate::{generate, Family, InstanceSpec};
pub use io::{format_instance, instance_name, parse_instance, read_instance, write_instance};
