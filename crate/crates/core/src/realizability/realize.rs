//! Bounded checking of realizers clause by clause.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::machine::{ApplyError, Budget, Code, Machine};
use super::RealizeError;
use crate::formula::{print, print_term, Formula, SortKind, Term};

/// How far quantifiers are explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Numbers `0..=nat` instantiate `∀n:N`, and candidate realizers of
    /// implication premises range over the same interval.
    pub nat: u64,
    /// How many budget-confirmed total machines instantiate `∀f:N^N`.
    pub machines: usize,
}

impl Bounds {
    pub fn new(q: u64) -> Self {
        Bounds {
            nat: q,
            machines: q as usize,
        }
    }

    pub fn with_machines(mut self, machines: usize) -> Self {
        self.machines = machines;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedBounds {
    pub nat_bound: u64,
    pub machines_sampled: usize,
    pub budget: u64,
    pub instances: u64,
}

/// A failing instance: the chain of applications and instantiations leading
/// to a clause that does not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trail: Vec<String>,
    pub failure: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    RealizedBounded {
        realizer: Code,
        bounds: CheckedBounds,
    },
    RefutedWitness {
        realizer: Code,
        counterexample: Counterexample,
    },
    Unknown {
        realizer: Code,
        reason: String,
    },
}

impl Verdict {
    pub fn is_realized(&self) -> bool {
        matches!(self, Verdict::RealizedBounded { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedWitness { .. })
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Holds,
    Fails(Counterexample),
    Unknown(String),
}

type Env = Vec<(String, BigUint)>;

/// Carries the machine, the bounds and the sample of total machines across
/// many checks.
pub struct Checker {
    machine: Machine,
    pub budget: Budget,
    pub bounds: Bounds,
    sample: Option<Vec<BigUint>>,
    instances: u64,
    trail: Vec<String>,
}

/// How many indices are tried while collecting total machines.
const SAMPLE_SCAN_LIMIT: u64 = 200_000;

fn irrelevant(f: &Formula) -> bool {
    f.is_atomic() || f.as_negation().is_some()
}

impl Checker {
    pub fn new(budget: Budget, bounds: Bounds) -> Self {
        Checker {
            machine: Machine::new(),
            budget,
            bounds,
            sample: None,
            instances: 0,
            trail: Vec::new(),
        }
    }

    /// Machine indices, in increasing order, that halt with a number on
    /// every input up to the natural-number bound.
    pub fn total_machines(&mut self) -> Vec<BigUint> {
        if let Some(s) = &self.sample {
            return s.clone();
        }
        let mut found = Vec::new();
        let mut i = 0u64;
        while found.len() < self.bounds.machines && i < SAMPLE_SCAN_LIMIT {
            let code = Code::from(i);
            let total = (0..=self.bounds.nat)
                .all(|n| self.machine.apply(&code, &BigUint::from(n), self.budget).is_ok());
            if total {
                found.push(code.0);
            }
            i += 1;
        }
        self.sample = Some(found.clone());
        found
    }

    pub fn check(&mut self, e: &Code, f: &Formula) -> Result<Verdict, RealizeError> {
        supported(f)?;
        self.instances = 0;
        self.trail.clear();
        let outcome = self.realizes(&e.0, f, &mut Vec::new());
        Ok(match outcome {
            Outcome::Holds => Verdict::RealizedBounded {
                realizer: e.clone(),
                bounds: CheckedBounds {
                    nat_bound: self.bounds.nat,
                    machines_sampled: self.sample.as_ref().map_or(0, Vec::len),
                    budget: self.budget.0,
                    instances: self.instances,
                },
            },
            Outcome::Fails(counterexample) => Verdict::RefutedWitness {
                realizer: e.clone(),
                counterexample,
            },
            Outcome::Unknown(reason) => Verdict::Unknown {
                realizer: e.clone(),
                reason,
            },
        })
    }

    fn fail(&self, failure: impl Into<String>) -> Outcome {
        Outcome::Fails(Counterexample {
            trail: self.trail.clone(),
            failure: failure.into(),
        })
    }

    /// `e·n`, with non-halting turned into an outcome.
    fn app(&mut self, e: &BigUint, n: &BigUint) -> Result<BigUint, Outcome> {
        match self.machine.apply(&Code(e.clone()), n, self.budget) {
            Ok(v) => {
                self.trail.push(format!("{e}·{n} = {v}"));
                Ok(v)
            }
            Err(ApplyError::BudgetExhausted(b)) => Err(Outcome::Unknown(format!("{e}·{n} did not halt within {b} steps"))),
            Err(ApplyError::Stuck(why)) => Err(self.fail(format!("{e}·{n} does not halt: {why}"))),
        }
    }

    fn scoped<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        let depth = self.trail.len();
        let out = f(self);
        self.trail.truncate(depth);
        out
    }

    fn realizes(&mut self, e: &BigUint, f: &Formula, env: &mut Env) -> Outcome {
        match f {
            Formula::Top => Outcome::Holds,
            Formula::Bottom => self.fail("nothing realizes false"),
            Formula::Eq(..) | Formula::Pred(..) => match self.atom(f, env) {
                Ok(true) => Outcome::Holds,
                Ok(false) => self.fail(format!("{} is false", self.show(f, env))),
                Err(o) => o,
            },
            Formula::And(a, b) => self.scoped(|c| {
                let (x, y) = match c.app(e, &BigUint::zero()).and_then(|x| c.app(e, &1u32.into()).map(|y| (x, y))) {
                    Ok(p) => p,
                    Err(o) => return o,
                };
                match c.realizes(&x, a, env) {
                    Outcome::Holds => c.realizes(&y, b, env),
                    other => other,
                }
            }),
            Formula::Or(a, b) => self.scoped(|c| {
                let (x, y) = match c.app(e, &BigUint::zero()).and_then(|x| c.app(e, &1u32.into()).map(|y| (x, y))) {
                    Ok(p) => p,
                    Err(o) => return o,
                };
                if x.is_zero() {
                    c.realizes(&y, a, env)
                } else {
                    c.realizes(&y, b, env)
                }
            }),
            Formula::Implies(a, b) => self.implication(e, a, b, env),
            Formula::Forall(v, body) => {
                let instances: Vec<BigUint> = match v.sort.kind {
                    SortKind::NatFun => self.total_machines(),
                    _ => (0..=self.bounds.nat).map(BigUint::from).collect(),
                };
                let mut unknown = None;
                for n0 in instances {
                    self.instances += 1;
                    let out = self.scoped(|c| {
                        c.trail.push(format!("{} := {n0}", v.name));
                        let r = match c.app(e, &n0) {
                            Ok(r) => r,
                            Err(o) => return o,
                        };
                        env.push((v.name.clone(), n0.clone()));
                        let out = c.realizes(&r, body, env);
                        env.pop();
                        out
                    });
                    match out {
                        Outcome::Holds => {}
                        Outcome::Fails(cx) => return Outcome::Fails(cx),
                        Outcome::Unknown(why) => {
                            unknown.get_or_insert(why);
                        }
                    }
                }
                unknown.map_or(Outcome::Holds, Outcome::Unknown)
            }
            Formula::Exists(v, body) => self.scoped(|c| {
                let (w, r) = match c.app(e, &BigUint::zero()).and_then(|x| c.app(e, &1u32.into()).map(|y| (x, y))) {
                    Ok(p) => p,
                    Err(o) => return o,
                };
                if v.sort.kind == SortKind::NatFun {
                    if let Err(o) = c.computes_total(&w) {
                        return o;
                    }
                }
                env.push((v.name.clone(), w));
                let out = c.realizes(&r, body, env);
                env.pop();
                out
            }),
        }
    }

    /// Confirms that machine `w` halts with a number on inputs up to the bound.
    fn computes_total(&mut self, w: &BigUint) -> Result<(), Outcome> {
        for n in 0..=self.bounds.nat {
            self.scoped(|c| c.app(w, &BigUint::from(n)).map(|_| ()))?;
        }
        Ok(())
    }

    fn implication(&mut self, e: &BigUint, a: &Formula, b: &Formula, env: &mut Env) -> Outcome {
        if irrelevant(a) {
            // Such premises are realized by every number or by none, so
            // deciding them once and testing the realizer 0 is exhaustive.
            return match self.realizable(a, env) {
                Outcome::Fails(_) => Outcome::Holds,
                Outcome::Unknown(why) => Outcome::Unknown(why),
                Outcome::Holds => self.scoped(|c| {
                    c.instances += 1;
                    c.trail.push(format!("premise {} holds; take r = 0", c.show(a, env)));
                    match c.app(e, &BigUint::zero()) {
                        Ok(r) => c.realizes(&r, b, env),
                        Err(o) => o,
                    }
                }),
            };
        }
        let mut unknown = None;
        for r in 0..=self.bounds.nat {
            self.instances += 1;
            let r = BigUint::from(r);
            let out = self.scoped(|c| match c.realizes(&r, a, env) {
                Outcome::Fails(_) => Outcome::Holds,
                Outcome::Unknown(why) => Outcome::Unknown(why),
                Outcome::Holds => {
                    c.trail.push(format!("{r} realizes the premise {}", c.show(a, env)));
                    match c.app(e, &r) {
                        Ok(s) => c.realizes(&s, b, env),
                        Err(o) => o,
                    }
                }
            });
            match out {
                Outcome::Holds => {}
                Outcome::Fails(cx) => return Outcome::Fails(cx),
                Outcome::Unknown(why) => {
                    unknown.get_or_insert(why);
                }
            }
        }
        unknown.map_or(Outcome::Holds, Outcome::Unknown)
    }

    /// Whether some realizer exists, decided within the bounds.
    fn realizable(&mut self, f: &Formula, env: &mut Env) -> Outcome {
        match f {
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => {
                self.realizes(&BigUint::zero(), f, env)
            }
            Formula::And(a, b) => match self.realizable(a, env) {
                Outcome::Holds => self.realizable(b, env),
                other => other,
            },
            Formula::Or(a, b) => match (self.realizable(a, env), self.realizable(b, env)) {
                (Outcome::Holds, _) | (_, Outcome::Holds) => Outcome::Holds,
                (Outcome::Fails(cx), Outcome::Fails(_)) => Outcome::Fails(cx),
                (Outcome::Unknown(w), _) | (_, Outcome::Unknown(w)) => Outcome::Unknown(w),
            },
            Formula::Implies(a, b) if **b == Formula::Bottom => match self.realizable(a, env) {
                Outcome::Holds => self.fail(format!("{} is realizable", self.show(a, env))),
                Outcome::Fails(_) => Outcome::Holds,
                other => other,
            },
            Formula::Exists(v, body) if v.sort.kind == SortKind::Nat => {
                let mut unknown = None;
                for n0 in 0..=self.bounds.nat {
                    env.push((v.name.clone(), BigUint::from(n0)));
                    let out = self.realizable(body, env);
                    env.pop();
                    match out {
                        Outcome::Holds => return Outcome::Holds,
                        Outcome::Unknown(w) => {
                            unknown.get_or_insert(w);
                        }
                        Outcome::Fails(_) => {}
                    }
                }
                unknown.map_or_else(
                    || self.fail(format!("no witness up to {} for {}", self.bounds.nat, self.show(f, env))),
                    Outcome::Unknown,
                )
            }
            Formula::Forall(v, body) if v.sort.kind == SortKind::Nat => {
                let mut unknown = None;
                for n0 in 0..=self.bounds.nat {
                    env.push((v.name.clone(), BigUint::from(n0)));
                    let out = self.realizable(body, env);
                    env.pop();
                    match out {
                        Outcome::Holds => {}
                        Outcome::Fails(cx) => return Outcome::Fails(cx),
                        Outcome::Unknown(w) => {
                            unknown.get_or_insert(w);
                        }
                    }
                }
                unknown.map_or(Outcome::Holds, Outcome::Unknown)
            }
            _ => {
                for r in 0..=self.bounds.nat {
                    if let Outcome::Holds = self.scoped(|c| c.realizes(&BigUint::from(r), f, env)) {
                        return Outcome::Holds;
                    }
                }
                Outcome::Unknown(format!("no realizer up to {} found for {}", self.bounds.nat, self.show(f, env)))
            }
        }
    }

    fn show(&self, f: &Formula, env: &Env) -> String {
        let mut s = print(f);
        if !env.is_empty() {
            let binds: Vec<String> = env.iter().map(|(n, v)| format!("{n} = {v}")).collect();
            s.push_str(&format!(" [{}]", binds.join(", ")));
        }
        s
    }

    fn atom(&mut self, f: &Formula, env: &Env) -> Result<bool, Outcome> {
        match f {
            Formula::Eq(a, b) => Ok(self.term(a, env)? == self.term(b, env)?),
            Formula::Pred(p, args) => {
                let vals = args.iter().map(|t| self.term(t, env)).collect::<Result<Vec<_>, _>>()?;
                match (p.as_str(), vals.as_slice()) {
                    ("Prime", [n]) => Ok(is_prime(n)),
                    ("<", [a, b]) => Ok(a < b),
                    ("<=", [a, b]) => Ok(a <= b),
                    (">", [a, b]) => Ok(a > b),
                    (">=", [a, b]) => Ok(a >= b),
                    ("Computes", [e, g]) => self.computes(e, g),
                    _ => Err(Outcome::Unknown(format!("no interpretation for predicate {p}"))),
                }
            }
            _ => unreachable!("atoms only"),
        }
    }

    /// `Computes(e, g)`: the two machines agree on inputs up to the bound.
    fn computes(&mut self, e: &BigUint, g: &BigUint) -> Result<bool, Outcome> {
        for n in 0..=self.bounds.nat {
            let n = BigUint::from(n);
            let x = self.machine.apply(&Code(e.clone()), &n, self.budget);
            let y = self.machine.apply(&Code(g.clone()), &n, self.budget);
            match (x, y) {
                (Ok(x), Ok(y)) if x != y => return Ok(false),
                (Ok(_), Ok(_)) => {}
                (Err(ApplyError::Stuck(_)), Ok(_)) => return Ok(false),
                (Err(err), _) | (_, Err(err)) => {
                    return Err(Outcome::Unknown(format!("Computes({e}, {g}) at {n}: {err}")))
                }
            }
        }
        Ok(true)
    }

    fn term(&mut self, t: &Term, env: &Env) -> Result<BigUint, Outcome> {
        match t {
            Term::NumLiteral(n) => Ok(BigUint::from(*n)),
            Term::Variable(v) => lookup(env, &v.name),
            Term::Constant { name, .. } => Err(Outcome::Unknown(format!("no value for constant {name}"))),
            Term::Apply { func, args, .. } => {
                let vals = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>, _>>()?;
                match (func.as_str(), vals.as_slice()) {
                    ("+", [a, b]) => Ok(a + b),
                    ("*", [a, b]) => Ok(a * b),
                    ("succ", [a]) => Ok(a + 1u32),
                    _ => Err(Outcome::Unknown(format!("no interpretation for {}", print_term(t)))),
                }
            }
            Term::Call { fun, arg } => {
                let code = lookup(env, &fun.name)?;
                let x = self.term(arg, env)?;
                self.machine
                    .apply(&Code(code.clone()), &x, self.budget)
                    .map_err(|err| Outcome::Unknown(format!("{}({x}) with {} = {code}: {err}", fun.name, fun.name)))
            }
        }
    }
}

fn lookup(env: &Env, name: &str) -> Result<BigUint, Outcome> {
    env.iter()
        .rev()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Outcome::Unknown(format!("unbound variable {name}")))
}

fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(n) => n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0),
        None => {
            let two = BigUint::from(2u32);
            let mut d = two.clone();
            while &d * &d <= *n {
                if (n % &d).is_zero() {
                    return false;
                }
                d += 1u32;
            }
            true
        }
    }
}

/// Rejects formulas outside the number-and-function fragment.
pub fn supported(f: &Formula) -> Result<(), RealizeError> {
    if !f.is_closed() {
        let names: Vec<String> = f.free_vars().into_iter().map(|v| v.name).collect();
        return Err(RealizeError::UnsupportedFormula(format!("free variables {}", names.join(", "))));
    }
    for s in f.quantified_sorts() {
        if !matches!(s.kind, SortKind::Nat | SortKind::NatFun) {
            return Err(RealizeError::UnsupportedFormula(format!("quantifier over sort {}", s.name)));
        }
    }
    Ok(())
}

/// Checks one realizer against a closed formula.
pub fn realizes(e: &Code, f: &Formula, budget: Budget, bounds: Bounds) -> Result<Verdict, RealizeError> {
    Checker::new(budget, bounds).check(e, f)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub found: Option<Code>,
    pub examined: u64,
    pub max_index: u64,
    pub budget: u64,
    pub report: String,
}

/// Tries indices `0..=max_index` in order and returns the first one that
/// passes the bounded check.
pub fn search_realizer(f: &Formula, max_index: u64, budget: Budget, bounds: Bounds) -> SearchReport {
    let mut checker = Checker::new(budget, bounds);
    let mut examined = 0;
    for i in 0..=max_index {
        examined += 1;
        let e = Code::from(i);
        match checker.check(&e, f) {
            Ok(v) if v.is_realized() => {
                return SearchReport {
                    report: format!("index {i} passes the bounded check"),
                    found: Some(e),
                    examined,
                    max_index,
                    budget: budget.0,
                }
            }
            Ok(_) => {}
            Err(err) => {
                return SearchReport {
                    found: None,
                    examined,
                    max_index,
                    budget: budget.0,
                    report: err.to_string(),
                }
            }
        }
    }
    SearchReport {
        found: None,
        examined,
        max_index,
        budget: budget.0,
        report: format!(
            "no realizer among indices ≤ {max_index} at budget {}; a bounded search is evidence, not proof",
            budget.0
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Signature};
    use crate::realizability::library::library_realizer;
    use crate::realizability::machine::build::*;

    fn f(text: &str) -> Formula {
        parse(text, &Signature::arithmetic()).unwrap()
    }

    fn code(t: Named) -> Code {
        Code::of(&compile(&t))
    }

    #[test]
    fn conjunction_of_truths() {
        let id = code(lam("i", v("i")));
        let b = Budget(1000);
        assert!(realizes(&id, &f("true /\\ true"), b, Bounds::new(5)).unwrap().is_realized());
        let diverge = code(lam("x", fix("f", v("f"))));
        let v = realizes(&diverge, &f("true /\\ true"), b, Bounds::new(5)).unwrap();
        assert!(matches!(v, Verdict::Unknown { .. }), "{v:?}");
        let stuck = Code::from(0);
        assert!(realizes(&stuck, &f("true /\\ true"), b, Bounds::new(5)).unwrap().is_refuted());
    }

    #[test]
    fn prime_or_not_small_bound() {
        let e = library_realizer("prime_or_not").unwrap();
        let v = realizes(&e, &f("forall n:N. Prime(n) \\/ ~Prime(n)"), Budget(100_000), Bounds::new(200)).unwrap();
        assert!(v.is_realized(), "{v:?}");
    }

    #[test]
    fn wrong_disjunct_is_refuted_with_trail() {
        // always claims "prime"
        let e = code(lam("n", lam("i", n(0))));
        let v = realizes(&e, &f("forall n:N. Prime(n) \\/ ~Prime(n)"), Budget(1000), Bounds::new(10)).unwrap();
        match v {
            Verdict::RefutedWitness { counterexample, .. } => {
                assert_eq!(counterexample.trail[0], "n := 0");
                assert!(counterexample.failure.contains("Prime(n)"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infinitely_many_primes() {
        let e = library_realizer("next_prime").unwrap();
        let v = realizes(
            &e,
            &f("forall n:N. exists p:N. n < p /\\ Prime(p)"),
            Budget(100_000),
            Bounds::new(100),
        )
        .unwrap();
        assert!(v.is_realized(), "{v:?}");
    }

    #[test]
    fn search_finds_a_witness_for_five() {
        let r = search_realizer(&f("exists n:N. n = 5"), 5000, Budget(1000), Bounds::new(3));
        let e = r.found.expect("some realizer");
        assert_eq!(crate::realizability::apply(&e, 0, Budget(1000)), Ok(BigUint::from(5u32)));
    }

    #[test]
    fn nothing_realizes_false() {
        let r = search_realizer(&f("false"), 200, Budget(1000), Bounds::new(3));
        assert!(r.found.is_none());
        assert!(r.report.contains("evidence, not proof"));
    }

    #[test]
    fn unsupported_sorts_are_rejected() {
        let sig = Signature::ring();
        let g = parse("forall x:R. x = x", &sig).unwrap();
        assert!(matches!(
            realizes(&Code::from(0), &g, Budget(10), Bounds::new(1)),
            Err(RealizeError::UnsupportedFormula(_))
        ));
    }
}
