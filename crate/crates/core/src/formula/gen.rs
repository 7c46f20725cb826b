//! Seeded generator of well-sorted formulas, used by property tests and the
//! soundness harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::signature::Signature;
use super::syntax::{Formula, Sort, SortKind, Term, Var};

/// Draws random formulas over a signature. Binders never shadow one another.
pub struct FormulaGen<'a> {
    sig: &'a Signature,
    rng: ChaCha8Rng,
    next_var: usize,
    /// Whether quantifiers may be generated.
    pub quantifiers: bool,
}

impl<'a> FormulaGen<'a> {
    pub fn new(sig: &'a Signature, seed: u64) -> Self {
        FormulaGen {
            sig,
            rng: ChaCha8Rng::seed_from_u64(seed),
            next_var: 0,
            quantifiers: true,
        }
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        self.formula_in(depth, &mut Vec::new())
    }

    fn quantifiable(&self) -> Vec<Sort> {
        self.sig.sorts().filter(|s| s.kind != SortKind::NatFun).cloned().collect()
    }

    fn formula_in(&mut self, depth: usize, scope: &mut Vec<Var>) -> Formula {
        if depth == 0 || self.rng.gen_ratio(1, 4) {
            return self.atom(scope);
        }
        let sorts = self.quantifiable();
        let choices = if self.quantifiers && !sorts.is_empty() { 7 } else { 5 };
        match self.rng.gen_range(0..choices) {
            0 => Formula::and(self.formula_in(depth - 1, scope), self.formula_in(depth - 1, scope)),
            1 => Formula::or(self.formula_in(depth - 1, scope), self.formula_in(depth - 1, scope)),
            2 => Formula::implies(self.formula_in(depth - 1, scope), self.formula_in(depth - 1, scope)),
            3 => Formula::not(self.formula_in(depth - 1, scope)),
            4 => self.atom(scope),
            q => {
                let sort = sorts.choose(&mut self.rng).cloned().expect("nonempty");
                let var = Var::new(format!("v{}", self.next_var), sort);
                self.next_var += 1;
                scope.push(var.clone());
                let body = self.formula_in(depth - 1, scope);
                scope.pop();
                if q == 5 {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                }
            }
        }
    }

    fn atom(&mut self, scope: &[Var]) -> Formula {
        let preds: Vec<(String, Vec<Sort>)> = self
            .sig
            .predicates()
            .filter(|(_, args)| args.iter().all(|s| self.can_build(s, scope)))
            .map(|(n, a)| (n.clone(), a.clone()))
            .collect();
        let pick = self.rng.gen_range(0..10);
        if pick == 0 {
            return Formula::Top;
        }
        if pick == 1 {
            return Formula::Bottom;
        }
        let eq_sorts: Vec<Sort> = self
            .sig
            .sorts()
            .filter(|s| s.kind != SortKind::NatFun && self.can_build(s, scope))
            .cloned()
            .collect();
        if (pick <= 3 || preds.is_empty()) && !eq_sorts.is_empty() {
            let s = eq_sorts.choose(&mut self.rng).cloned().expect("nonempty");
            let a = self.term(&s, scope, 2);
            let b = self.term(&s, scope, 2);
            return Formula::Eq(a, b);
        }
        match preds.choose(&mut self.rng) {
            Some((name, sorts)) => {
                let args = sorts.iter().map(|s| self.term(s, scope, 2)).collect();
                Formula::Pred(name.clone(), args)
            }
            None => Formula::Top,
        }
    }

    fn can_build(&self, sort: &Sort, scope: &[Var]) -> bool {
        sort.kind == SortKind::Nat
            || sort.kind == SortKind::RingElem
            || scope.iter().any(|v| v.sort == *sort)
            || self.sig.constants().any(|(_, s)| s == sort)
    }

    fn term(&mut self, sort: &Sort, scope: &[Var], depth: usize) -> Term {
        let funcs: Vec<(String, Vec<Sort>)> = ["+", "-", "*", "succ", "neg"]
            .iter()
            .filter_map(|f| {
                self.sig
                    .function(f)
                    .filter(|(_, r)| r == sort)
                    .map(|(args, _)| (f.to_string(), args.clone()))
            })
            .collect();
        if depth > 0 && !funcs.is_empty() && self.rng.gen_ratio(1, 3) {
            let (f, args) = funcs.choose(&mut self.rng).cloned().expect("nonempty");
            let args = args.iter().map(|s| self.term(s, scope, depth - 1)).collect();
            return Term::apply(f, args, sort.clone());
        }
        let mut leaves: Vec<Term> = scope
            .iter()
            .filter(|v| v.sort == *sort)
            .map(|v| Term::Variable(v.clone()))
            .collect();
        leaves.extend(
            self.sig
                .constants()
                .filter(|(_, s)| *s == sort)
                .map(|(n, s)| Term::constant(n.clone(), s.clone())),
        );
        match sort.kind {
            SortKind::Nat => leaves.push(Term::NumLiteral(self.rng.gen_range(0..20))),
            SortKind::RingElem => {
                leaves.push(Term::constant(self.rng.gen_range(0..3).to_string(), sort.clone()))
            }
            _ => {}
        }
        leaves.choose(&mut self.rng).cloned().expect("buildable sort")
    }
}

/// One random formula of at most the given depth.
pub fn random_formula(sig: &Signature, seed: u64, depth: usize) -> Formula {
    FormulaGen::new(sig, seed).formula(depth)
}
