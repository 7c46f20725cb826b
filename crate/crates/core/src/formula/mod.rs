//! The internal language shared by every evaluator: syntax, parser, printer
//! and capture-avoiding substitution.

mod gen;
mod parse;
mod print;
mod signature;
mod subst;
mod syntax;

use thiserror::Error;

pub use gen::{random_formula, FormulaGen};
pub use parse::{parse, parse_term};
pub use print::{print, print_term};
pub use signature::Signature;
pub use subst::substitute;
pub use syntax::{Formula, Sort, SortKind, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("sort error at `{symbol}`: expected {expected}, found {found}")]
    Sort {
        symbol: String,
        expected: String,
        found: String,
    },
    #[error("`{symbol}` expects {expected} argument(s), found {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol `{name}` at byte {position}")]
    UnknownSymbol { name: String, position: usize },
}

/// Free variables of `f` together with their sorts.
pub fn free_vars(f: &Formula) -> std::collections::BTreeSet<Var> {
    f.free_vars()
}

#[cfg(test)]
mod tests;
