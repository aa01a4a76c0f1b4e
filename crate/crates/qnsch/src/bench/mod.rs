//! Benchmark harness: configuration, scenarios, time loop, output, the
//! convergence study and the operator self test.

pub mod config;
pub mod converge;
pub mod crosscheck;
pub mod output;
pub mod run;
pub mod scenario;
pub mod selftest;

pub use config::{GridConfig, GuardMode, Guards, OutputConfig, PhysicsConfig, RunConfig, Scenario, TimeConfig};
pub use converge::{converge, ConvergenceTable};
pub use crosscheck::{cross_check, scheme_gap, CrossCheck};
pub use output::{read_timeseries, write_snapshot, write_timeseries, TimeseriesWriter};
pub use run::{run, RunSummary, Simulation, StepOutcome};
pub use scenario::{init_scenario, initial_phase};
pub use selftest::{selftest, SelftestReport};
