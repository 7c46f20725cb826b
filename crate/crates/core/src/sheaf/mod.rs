//! Sheaves over finite topological spaces.

mod model;
mod space;

use thiserror::Error;

pub use model::{
    covers, double_negation_dense, has_dense_forcing_open, random_model, section_signature, validate_model, Env,
    PredTable, SheafModel, Sign, SignSection,
};
pub use space::{all_topologies, is_dense, is_subset, khalimsky_interval, mask_of, opens_from_basis, FiniteSpace, Open};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SheafError {
    #[error("the basis does not cover the points {0}")]
    CoverageError(String),
    #[error("unknown section `{0}`")]
    UnknownSection(String),
    #[error("unbound variable `{0}`")]
    EnvError(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("{0} is not open")]
    NotOpen(String),
    #[error("at most 64 points are supported, got {0}")]
    TooManyPoints(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid model file: {0}")]
    Json(String),
}
