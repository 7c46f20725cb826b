//! Finite-dimensional ℚ-algebras as stages, forcing at stages, and dual numbers.

mod algebra;
mod dual;
mod forcing;
pub mod linalg;

use thiserror::Error;

pub use algebra::{
    adjoin_nilpotent, covering_partitions, dual_numbers, localize_at, localize_map, quotient_by, quotient_map,
    fitting_idempotent, split_quadratic, tensor, try_invert, two_infinitesimals, AlgElem, Covering, FinDimAlgebra, Hom,
};
pub use dual::{derivative, micro_affinity_check, DualPoly};
pub use forcing::{forces_zar, supported, PoolPolicy, Stage, Step, Verdict};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ZariskiError {
    #[error("unsupported formula: {0}")]
    UnsupportedFormula(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("not a commutative unital algebra: {0}")]
    NotAnAlgebra(String),
    #[error("invalid stage file: {0}")]
    Format(String),
    #[error("polynomial: {0}")]
    Poly(String),
}
