//! Shipped models, file formats, fixtures and the scenario runner.

pub mod builtin;
pub mod cxfile;
pub mod fixtures;
pub mod model;
pub mod report;
pub mod samples;
pub mod scenarios;

pub use cxfile::{load_complex, parse_obj_expr, ComplexFile};
pub use model::{load_spec, parse_spec, spec_to_json, ModelFile};
pub use report::{CheckLine, ScenarioReport, SuiteReport};
pub use scenarios::{run_all, run_named, run_scenario, RunConfig, SCENARIOS};

use crate::catcore::CatError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("parse error at {field}{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Parse { field: String, line: Option<usize>, message: String },
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}
