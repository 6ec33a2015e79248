//! Scenario ingestion, acceleration sweeps, oracle crosschecks, and
//! machine-readable emission for the `unruh-berry` command-line tool.

pub mod crosscheck;
pub mod emit;
pub mod plan;
pub mod scenario;
pub mod sweep;

pub use crosscheck::{run_crosscheck, CrosscheckReport, MIXED_ABS_TOL, PURE_REL_TOL};
pub use emit::{emit, parse_json_rows, write_csv, write_json, EmitFormat, EmitMeta};
pub use plan::{plan, PlanReport};
pub use scenario::{fig2_presets, load_scenarios, QConvention, Scenario, Spacing, SweepSpec};
pub use sweep::{run_sweep, sweep_accelerations, SweepRow};
