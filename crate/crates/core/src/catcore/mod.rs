//! A rigid symmetric monoidal category presented as a square-zero extension
//! of a semisimple category by a bimodule of numerical morphisms.

mod ideals;
mod kimura;
mod mor;
mod spec;
mod tensor;

pub use ideals::*;
pub use kimura::*;
pub use mor::*;
pub use spec::*;
pub use tensor::*;

use crate::qlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("incoherent spec: {axiom}: {detail}")]
    IncoherentSpec { axiom: String, detail: String },
    #[error("fusion table does not cover ({left}, {right})")]
    FusionIncomplete { left: String, right: String },
    #[error("no transport rule for numerical morphism {entry} against {other}")]
    TransportMissing { entry: String, other: String },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not an endomorphism")]
    NotEndomorphism,
    #[error("no dual data for {0}")]
    MissingDuals(String),
    #[error("morphism is not in the numerical ideal")]
    NotNumerical,
    #[error("not idempotent modulo the numerical ideal")]
    NotIdempotentModN,
    #[error("radical methods disagree: definitional dim {definitional}, trace-form dim {trace_form}")]
    RadicalMismatch { definitional: usize, trace_form: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
