//! Named verification scenarios over the `coxquot` toolkit, with structured reports.

pub mod report;
pub mod scenarios;

pub use report::{CheckLine, Report, Status, VERSION};
pub use scenarios::{run, run_all, Options, ScenarioError, SCENARIOS};
