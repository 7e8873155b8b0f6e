//! Configuration, scenario runs, verification suites and the scenario
//! catalog behind the command-line tool.

pub mod catalog;
pub mod config;
pub mod random;
pub mod scenario;
pub mod suites;

pub use config::{load_config, parse_config, ScenarioConfig};
pub use scenario::{run_scenario, ScenarioResult};
pub use suites::{verify_all, SuiteResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error{}: {message}", at_line(*.line))]
    Parse { line: Option<usize>, message: String },

    #[error("invalid field `{field}`: {message}")]
    Invalid { field: String, message: String },

    #[error("scenario {scenario}: {source}")]
    Run { scenario: String, source: crate::Error },
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}
