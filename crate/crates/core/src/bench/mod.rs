//! Multi-run experiments: seeded repetitions, per-instance statistics,
//! two-tailed sign tests against baselines, and parameter sweeps.

mod experiment;
mod report;
mod stats;
mod sweep;

pub use experiment::{run_experiment, ExperimentConfig, ExperimentRow, InstanceSource, NamedInstance, ParamOverrides};
pub use report::{
    compare_tables, emit_report, join_column, rows_to_csv, stats_to_csv, JoinedColumn, Report, ResultTable, TableRow,
    COMPARISON_EXTRA, INDICATORS, STATS_HEADER,
};
pub use sign_test::{binomial_upper_tail, critical_value, sign_test, SignTestReport, TIE_TOLERANCE};
pub use stats::{summarize, InstanceStats, RunRecord};
pub use sweep::{parameter_sweep, sweep_to_csv, SweepParam, SweepRow, SWEEP_HEADER};
