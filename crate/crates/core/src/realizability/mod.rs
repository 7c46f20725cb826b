//! Number realizability over a concrete machine model.

mod library;
pub mod machine;
pub mod numbering;
mod realize;

use thiserror::Error;

pub use library::{constant_function, function_with_zeros, library_program, library_realizer, primality_decider, NAMES};
pub use machine::{apply, ApplyError, Budget, Code, Machine, PrimOp, Program};
pub use realize::{realizes, search_realizer, supported, Bounds, CheckedBounds, Checker, Counterexample, SearchReport, Verdict};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("unsupported formula: {0}")]
    UnsupportedFormula(String),
    #[error("no library realizer named `{0}`")]
    UnknownName(String),
}
