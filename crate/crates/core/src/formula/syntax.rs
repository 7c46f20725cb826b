//! Abstract syntax of the internal language.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// What a sort ranges over. The evaluators decide which kinds they accept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SortKind {
    /// Natural numbers.
    Nat,
    /// Functions from naturals to naturals.
    NatFun,
    /// Sections of a sheaf over a finite space.
    Section,
    /// Elements of the generic ring at a Zariski stage.
    RingElem,
    /// Individuals of an uninterpreted sort.
    Custom(String),
}

/// A named sort. Two sorts are equal when both name and kind agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sort {
    pub name: String,
    pub kind: SortKind,
}

impl Sort {
    pub fn new(name: impl Into<String>, kind: SortKind) -> Self {
        Sort {
            name: name.into(),
            kind,
        }
    }

    pub fn nat() -> Self {
        Sort::new("N", SortKind::Nat)
    }

    pub fn nat_fun() -> Self {
        Sort::new("N^N", SortKind::NatFun)
    }

    pub fn ring() -> Self {
        Sort::new("R", SortKind::RingElem)
    }

    pub fn section() -> Self {
        Sort::new("R", SortKind::Section)
    }

    pub fn custom(name: impl Into<String>) -> Self {
        let name = name.into();
        Sort::new(name.clone(), SortKind::Custom(name))
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A sorted variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        Var {
            name: name.into(),
            sort,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Variable(Var),
    /// A named constant; its meaning is supplied by the model.
    Constant { name: String, sort: Sort },
    /// A numeral of sort `N`.
    NumLiteral(u64),
    /// A declared function symbol applied to arguments.
    Apply {
        func: String,
        args: Vec<Term>,
        sort: Sort,
    },
    /// A variable of function sort `N^N` applied to a natural-number argument.
    Call { fun: Var, arg: Box<Term> },
}

impl Term {
    pub fn var(name: impl Into<String>, sort: Sort) -> Self {
        Term::Variable(Var::new(name, sort))
    }

    pub fn constant(name: impl Into<String>, sort: Sort) -> Self {
        Term::Constant {
            name: name.into(),
            sort,
        }
    }

    pub fn apply(func: impl Into<String>, args: Vec<Term>, sort: Sort) -> Self {
        Term::Apply {
            func: func.into(),
            args,
            sort,
        }
    }

    pub fn sort(&self) -> Sort {
        match self {
            Term::Variable(v) => v.sort.clone(),
            Term::Constant { sort, .. } | Term::Apply { sort, .. } => sort.clone(),
            Term::NumLiteral(_) => Sort::nat(),
            Term::Call { .. } => Sort::nat(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Variable(v) => {
                out.insert(v.clone());
            }
            Term::Constant { .. } | Term::NumLiteral(_) => {}
            Term::Apply { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Call { fun, arg } => {
                out.insert(fun.clone());
                arg.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Term::Variable(v) => v.name == name,
            Term::Constant { .. } | Term::NumLiteral(_) => false,
            Term::Apply { args, .. } => args.iter().any(|a| a.mentions(name)),
            Term::Call { fun, arg } => fun.name == name || arg.mentions(name),
        }
    }
}

/// Intuitionistic first-order formulas. Negation is `Implies(φ, Bottom)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Eq(Term, Term),
    Pred(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Pred(name.into(), Vec::new())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    /// `Some(φ)` when this is `φ -> false`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..)
        )
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<Var>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<Var>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(&v.name)));
        };
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) => {
                add_term(a, bound, out);
                add_term(b, bound, out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|a| add_term(a, bound, out)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.name.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_names(&mut out);
        out
    }

    fn visit_names(&self, out: &mut BTreeSet<String>) {
        let term = |t: &Term, out: &mut BTreeSet<String>| {
            out.extend(t.free_vars().into_iter().map(|v| v.name));
        };
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) => {
                term(a, out);
                term(b, out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|a| term(a, out)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_names(out);
                b.visit_names(out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                out.insert(v.name.clone());
                body.visit_names(out);
            }
        }
    }

    /// Sorts bound by quantifiers anywhere in the formula.
    pub fn quantified_sorts(&self) -> BTreeSet<Sort> {
        let mut out = BTreeSet::new();
        self.visit_sorts(&mut out);
        out
    }

    fn visit_sorts(&self, out: &mut BTreeSet<Sort>) {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_sorts(out);
                b.visit_sorts(out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                out.insert(v.sort.clone());
                body.visit_sorts(out);
            }
            _ => {}
        }
    }

    /// Number of connectives and atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + body.size(),
        }
    }
}
