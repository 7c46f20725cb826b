use std::collections::BTreeMap;

use super::syntax::{Sort, SortKind};

/// Declared vocabulary for parsing and sort checking.
///
/// Equality is built in for every sort. Free variables must be declared
/// with [`Signature::with_var`] before a formula may mention them unbound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: BTreeMap<String, Sort>,
    constants: BTreeMap<String, Sort>,
    predicates: BTreeMap<String, Vec<Sort>>,
    functions: BTreeMap<String, (Vec<Sort>, Sort)>,
    variables: BTreeMap<String, Sort>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_sort(mut self, sort: Sort) -> Self {
        self.sorts.insert(sort.name.clone(), sort);
        self
    }

    pub fn with_constant(mut self, name: impl Into<String>, sort: Sort) -> Self {
        self.constants.insert(name.into(), sort);
        self
    }

    pub fn with_predicate(mut self, name: impl Into<String>, args: Vec<Sort>) -> Self {
        self.predicates.insert(name.into(), args);
        self
    }

    pub fn with_function(mut self, name: impl Into<String>, args: Vec<Sort>, result: Sort) -> Self {
        self.functions.insert(name.into(), (args, result));
        self
    }

    pub fn with_var(mut self, name: impl Into<String>, sort: Sort) -> Self {
        self.variables.insert(name.into(), sort);
        self
    }

    pub fn add_constant(&mut self, name: impl Into<String>, sort: Sort) {
        self.constants.insert(name.into(), sort);
    }

    pub fn sort(&self, name: &str) -> Option<&Sort> {
        self.sorts.get(name)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.values()
    }

    pub fn constant(&self, name: &str) -> Option<&Sort> {
        self.constants.get(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&String, &Sort)> {
        self.constants.iter()
    }

    pub fn predicate(&self, name: &str) -> Option<&[Sort]> {
        self.predicates.get(name).map(Vec::as_slice)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, &Vec<Sort>)> {
        self.predicates.iter()
    }

    pub fn function(&self, name: &str) -> Option<&(Vec<Sort>, Sort)> {
        self.functions.get(name)
    }

    pub fn variable(&self, name: &str) -> Option<&Sort> {
        self.variables.get(name)
    }

    /// Arithmetic over `N` with primality, order and the computability
    /// predicate used by the realizability evaluator.
    pub fn arithmetic() -> Self {
        let n = Sort::nat();
        let nf = Sort::nat_fun();
        Signature::new()
            .with_sort(n.clone())
            .with_sort(nf.clone())
            .with_function("+", vec![n.clone(), n.clone()], n.clone())
            .with_function("*", vec![n.clone(), n.clone()], n.clone())
            .with_function("succ", vec![n.clone()], n.clone())
            .with_predicate("Prime", vec![n.clone()])
            .with_predicate("<", vec![n.clone(), n.clone()])
            .with_predicate("<=", vec![n.clone(), n.clone()])
            .with_predicate("Computes", vec![n, nf])
    }

    /// The ring language of the Zariski stages: `+`, `-`, `*`, numerals and
    /// any named constants the caller adds.
    pub fn ring() -> Self {
        let r = Sort::ring();
        Signature::new()
            .with_sort(r.clone())
            .with_function("+", vec![r.clone(), r.clone()], r.clone())
            .with_function("-", vec![r.clone(), r.clone()], r.clone())
            .with_function("*", vec![r.clone(), r.clone()], r.clone())
            .with_function("neg", vec![r.clone()], r)
    }

    /// Propositional letters `P..T`, unary `A`, `B`, `C` and binary `E` over a
    /// single individual sort `D` of the given kind.
    pub fn propositional_first_order(kind: SortKind) -> Self {
        let d = Sort::new("D", kind);
        let mut sig = Signature::new().with_sort(d.clone());
        for p in ["P", "Q", "R", "S", "T"] {
            sig = sig.with_predicate(p, vec![]);
        }
        for p in ["A", "B", "C"] {
            sig = sig.with_predicate(p, vec![d.clone()]);
        }
        sig.with_predicate("E", vec![d.clone(), d])
    }

    pub fn is_numeral_sort(sort: &Sort) -> bool {
        matches!(sort.kind, SortKind::Nat | SortKind::RingElem)
    }
}
