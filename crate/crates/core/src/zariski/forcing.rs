//! Forcing at finite-dimensional stages, with bounded exploration of later stages.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::algebra::{adjoin_nilpotent, covering_partitions, fitting_idempotent, localize_map, quotient_map, AlgElem, FinDimAlgebra, Hom};
use super::linalg::{self, is_zero, parse_rational, Q};
use super::ZariskiError;
use crate::formula::{print, print_term, Formula, SortKind, Term};

/// One refinement of a stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    QuotientBy { element: String },
    LocalizeAt { element: String },
    AdjoinNilpotent { name: String, order: usize },
    TensorWith { name: String, relation: String },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::QuotientBy { element } => write!(f, "/({element})"),
            Step::LocalizeAt { element } => write!(f, "[({element})^-1]"),
            Step::AdjoinNilpotent { name, order } => write!(f, "[{name}]/({name}^{order})"),
            Step::TensorWith { name, relation } => write!(f, "[{name}]/({relation})"),
        }
    }
}

/// An algebra reached from a starting stage, with named constants carried along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub algebra: FinDimAlgebra,
    pub history: Vec<Step>,
    pub constants: BTreeMap<String, AlgElem>,
}

impl Stage {
    pub fn new(algebra: FinDimAlgebra) -> Self {
        Stage {
            algebra,
            history: Vec::new(),
            constants: BTreeMap::new(),
        }
    }

    pub fn with_constant(mut self, name: impl Into<String>, value: AlgElem) -> Self {
        assert_eq!(value.len(), self.algebra.dim(), "constant lives in another algebra");
        self.constants.insert(name.into(), value);
        self
    }

    pub fn from_json(text: &str) -> Result<Self, ZariskiError> {
        let (algebra, constants) = FinDimAlgebra::from_json(text)?;
        Ok(Stage {
            algebra,
            history: Vec::new(),
            constants,
        })
    }

    fn along(&self, algebra: FinDimAlgebra, hom: &Hom, step: Step) -> Stage {
        let mut history = self.history.clone();
        history.push(step);
        Stage {
            algebra,
            history,
            constants: self.constants.iter().map(|(k, v)| (k.clone(), hom.apply(v))).collect(),
        }
    }

    pub fn quotient_by(&self, x: &[Q]) -> Stage {
        let (b, h) = quotient_map(&self.algebra, &[x.to_vec()]);
        self.along(b, &h, Step::QuotientBy { element: self.algebra.show(x) })
    }

    pub fn localize_at(&self, f: &[Q]) -> Stage {
        let (b, h) = localize_map(&self.algebra, f);
        self.along(b, &h, Step::LocalizeAt { element: self.algebra.show(f) })
    }

    pub fn adjoin_nilpotent(&self, name: &str, order: usize) -> Stage {
        let (b, h) = adjoin_nilpotent(&self.algebra, name, order);
        self.along(
            b,
            &h,
            Step::AdjoinNilpotent {
                name: name.to_string(),
                order,
            },
        )
    }

    /// Adjoins `name` subject to the monic relation
    /// `name^n + lower[n-1] name^(n-1) + ... + lower[0] = 0`.
    pub fn tensor_with_generator(&self, name: &str, lower: &[Q]) -> Stage {
        let factor = FinDimAlgebra::polynomial_quotient(name, lower);
        let (b, h) = super::algebra::tensor(&self.algebra, &factor);
        let mut relation = format!("{name}^{}", lower.len());
        for (i, c) in lower.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let sign = if c < &Q::zero() { "-" } else { "+" };
            let abs = linalg::show_rational(&if c < &Q::zero() { -c.clone() } else { c.clone() });
            let power = match i {
                0 => String::new(),
                1 => format!("*{name}"),
                _ => format!("*{name}^{i}"),
            };
            relation.push_str(&format!(" {sign} {abs}{power}"));
        }
        self.along(
            b,
            &h,
            Step::TensorWith {
                name: name.to_string(),
                relation,
            },
        )
    }

    pub fn describe(&self) -> String {
        let base = match &self.algebra.note {
            Some(n) if self.history.is_empty() => n.clone(),
            _ => format!("<{}>", self.algebra.basis.join(", ")),
        };
        if self.history.is_empty() {
            base
        } else {
            let path: Vec<String> = self.history.iter().map(|s| s.to_string()).collect();
            format!("A{} (dim {})", path.join(""), self.algebra.dim())
        }
    }
}

/// How later stages and candidate elements are generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolPolicy {
    /// Basis vectors and `1 + e_i` join the element pool.
    pub basis: bool,
    /// Values of the formula's subterms join the element pool.
    pub subterms: bool,
    /// Order of a nilpotent adjoined to the starting stage, if any.
    pub adjoin_nilpotent: Option<usize>,
    /// Largest partition of unity tried for `∨` and `∃`.
    pub partition_size: usize,
    /// Cap on the later stages visited per clause.
    pub max_stages: usize,
    /// Cap on transcript lines.
    pub transcript_lines: usize,
}

impl Default for PoolPolicy {
    fn default() -> Self {
        PoolPolicy {
            basis: true,
            subterms: true,
            adjoin_nilpotent: Some(2),
            partition_size: 2,
            max_stages: 32,
            transcript_lines: 400,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    /// No counterexample among the explored stages. `exact` means every
    /// clause was decided without bounding, so the stage really forces it.
    ForcedBounded {
        exact: bool,
        depth: usize,
        stages_explored: usize,
        transcript: Vec<String>,
    },
    /// A refinement chain along which a clause fails.
    RefutedWitness { chain: Vec<String>, transcript: Vec<String> },
    Unknown { reason: String, transcript: Vec<String> },
}

impl Verdict {
    pub fn is_forced(&self) -> bool {
        matches!(self, Verdict::ForcedBounded { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedWitness { .. })
    }

    pub fn transcript(&self) -> &[String] {
        match self {
            Verdict::ForcedBounded { transcript, .. }
            | Verdict::RefutedWitness { transcript, .. }
            | Verdict::Unknown { transcript, .. } => transcript,
        }
    }
}

/// Checks that `f` is closed and speaks only about ring elements.
pub fn supported(f: &Formula) -> Result<(), ZariskiError> {
    if !f.is_closed() {
        let names: Vec<String> = f.free_vars().iter().map(|v| v.name.clone()).collect();
        return Err(ZariskiError::UnsupportedFormula(format!("free variables {}", names.join(", "))));
    }
    if let Some(s) = f.quantified_sorts().iter().find(|s| s.kind != SortKind::RingElem) {
        return Err(ZariskiError::UnsupportedFormula(format!("quantifier over sort {}", s.name)));
    }
    check_shape(f)
}

fn check_shape(f: &Formula) -> Result<(), ZariskiError> {
    match f {
        Formula::Top | Formula::Bottom => Ok(()),
        Formula::Eq(s, t) => check_term(s).and(check_term(t)),
        Formula::Pred(p, _) => Err(ZariskiError::UnsupportedFormula(format!("predicate {p}"))),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => check_shape(a).and(check_shape(b)),
        Formula::Forall(_, b) | Formula::Exists(_, b) => check_shape(b),
    }
}

fn check_term(t: &Term) -> Result<(), ZariskiError> {
    match t {
        Term::Variable(_) | Term::Constant { .. } | Term::NumLiteral(_) => Ok(()),
        Term::Apply { func, args, .. } if matches!(func.as_str(), "+" | "-" | "*" | "neg") => {
            args.iter().try_for_each(check_term)
        }
        _ => Err(ZariskiError::UnsupportedFormula(print_term(t))),
    }
}

type Env = BTreeMap<String, AlgElem>;

#[derive(Clone, Debug)]
enum Out {
    Forced { exact: bool },
    Refuted(Vec<String>),
    Unknown(String),
}

#[derive(Clone)]
struct Node {
    stage: Stage,
    env: Env,
    /// Refinement steps taken by the explorer below the clause's own stage.
    level: usize,
}

impl Node {
    fn algebra(&self) -> &FinDimAlgebra {
        &self.stage.algebra
    }

    fn push(&self, algebra: FinDimAlgebra, hom: &Hom, step: Step) -> Node {
        Node {
            stage: self.stage.along(algebra, hom, step),
            env: self.env.iter().map(|(k, v)| (k.clone(), hom.apply(v))).collect(),
            level: self.level + 1,
        }
    }

    fn quotient(&self, x: &[Q]) -> Node {
        let (b, h) = quotient_map(self.algebra(), &[x.to_vec()]);
        self.push(b, &h, Step::QuotientBy { element: self.algebra().show(x) })
    }

    fn localize(&self, f: &[Q]) -> Node {
        let (b, h) = localize_map(self.algebra(), f);
        self.push(b, &h, Step::LocalizeAt { element: self.algebra().show(f) })
    }

    fn bind(&self, var: &str, value: AlgElem) -> Node {
        let mut n = self.clone();
        n.env.insert(var.to_string(), value);
        n
    }

    fn same_as(&self, other: &Node) -> bool {
        self.stage.algebra == other.stage.algebra && self.stage.constants == other.stage.constants && self.env == other.env
    }

    fn describe(&self) -> String {
        self.stage.describe()
    }
}

struct Explorer<'p> {
    policy: &'p PoolPolicy,
    subterms: Vec<Term>,
    transcript: Vec<String>,
    dropped: usize,
    stages: usize,
}

fn numeral(name: &str) -> Option<Q> {
    parse_rational(name)
}

impl Explorer<'_> {
    fn log(&mut self, indent: usize, line: String) {
        if self.transcript.len() < self.policy.transcript_lines {
            self.transcript.push(format!("{}{line}", "  ".repeat(indent)));
        } else {
            self.dropped += 1;
        }
    }

    fn eval(&self, n: &Node, t: &Term) -> Result<AlgElem, ZariskiError> {
        let a = n.algebra();
        match t {
            Term::Variable(v) => n
                .env
                .get(&v.name)
                .cloned()
                .ok_or_else(|| ZariskiError::UnsupportedFormula(format!("unbound variable {}", v.name))),
            Term::Constant { name, .. } => match n.stage.constants.get(name) {
                Some(c) => Ok(c.clone()),
                None => numeral(name)
                    .map(|c| a.scalar(c))
                    .ok_or_else(|| ZariskiError::UnknownConstant(name.clone())),
            },
            Term::NumLiteral(k) => Ok(a.scalar(linalg::q(*k as i64))),
            Term::Apply { func, args, .. } => {
                let vals = args.iter().map(|x| self.eval(n, x)).collect::<Result<Vec<_>, _>>()?;
                Ok(match (func.as_str(), vals.as_slice()) {
                    ("+", [x, y]) => linalg::add(x, y),
                    ("-", [x, y]) => linalg::sub(x, y),
                    ("*", [x, y]) => a.mul(x, y),
                    ("neg", [x]) => linalg::scale(&linalg::q(-1), x),
                    _ => return Err(ZariskiError::UnsupportedFormula(print_term(t))),
                })
            }
            Term::Call { .. } => Err(ZariskiError::UnsupportedFormula(print_term(t))),
        }
    }

    /// `t` as a polynomial in the variable `var`, coefficients lowest first.
    fn poly_in(&self, n: &Node, t: &Term, var: &str) -> Result<Vec<AlgElem>, ZariskiError> {
        let a = n.algebra();
        if !t.mentions(var) {
            return Ok(vec![self.eval(n, t)?]);
        }
        let combine = |x: &[AlgElem], y: &[AlgElem], sign: i64| -> Vec<AlgElem> {
            (0..x.len().max(y.len()))
                .map(|i| {
                    let yi = y.get(i).map_or_else(|| a.zero(), |v| linalg::scale(&linalg::q(sign), v));
                    x.get(i).map_or(yi.clone(), |xi| linalg::add(xi, &yi))
                })
                .collect()
        };
        match t {
            Term::Variable(_) => Ok(vec![a.zero(), a.one()]),
            Term::Apply { func, args, .. } => {
                let ps = args.iter().map(|x| self.poly_in(n, x, var)).collect::<Result<Vec<_>, _>>()?;
                match (func.as_str(), ps.as_slice()) {
                    ("+", [x, y]) => Ok(combine(x, y, 1)),
                    ("-", [x, y]) => Ok(combine(x, y, -1)),
                    ("neg", [x]) => Ok(combine(&[], x, -1)),
                    ("*", [x, y]) => {
                        let mut out = vec![a.zero(); x.len() + y.len() - 1];
                        for (i, xi) in x.iter().enumerate() {
                            for (j, yj) in y.iter().enumerate() {
                                out[i + j] = linalg::add(&out[i + j], &a.mul(xi, yj));
                            }
                        }
                        Ok(out)
                    }
                    _ => Err(ZariskiError::UnsupportedFormula(print_term(t))),
                }
            }
            _ => Err(ZariskiError::UnsupportedFormula(print_term(t))),
        }
    }

    /// When `body` is a conjunction of equations affine in `var`, the exact
    /// set of solutions: `Some(Some(y))` for one solution, `Some(None)` when
    /// there is none, `None` when the body is not of that shape.
    fn affine_solution(&self, n: &Node, var: &str, body: &Formula) -> Result<Option<Option<AlgElem>>, ZariskiError> {
        let mut atoms = Vec::new();
        if !collect_equations(body, &mut atoms) {
            return Ok(None);
        }
        let a = n.algebra();
        let d = a.dim();
        let mut rows: linalg::Matrix = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        for (s, t) in atoms {
            let diff = Term::apply("-", vec![s.clone(), t.clone()], s.sort());
            let p = self.poly_in(n, &diff, var)?;
            if p.iter().skip(2).any(|c| !is_zero(c)) {
                return Ok(None);
            }
            let lin = p.get(1).cloned().unwrap_or_else(|| a.zero());
            rows.extend(a.mult_matrix(&lin));
            rhs.extend(linalg::scale(&linalg::q(-1), &p[0]));
        }
        Ok(Some(linalg::solve(&rows, &rhs, d)))
    }

    fn pool(&self, n: &Node) -> Vec<AlgElem> {
        let a = n.algebra();
        let mut out = vec![a.zero(), a.one()];
        if self.policy.basis {
            for i in 0..a.dim() {
                let e = a.basis_vector(i);
                out.push(linalg::add(&a.one(), &e));
                out.push(e);
            }
        }
        out.extend(n.env.values().cloned());
        out.extend(n.stage.constants.values().cloned());
        if self.policy.subterms {
            for t in &self.subterms {
                if let Ok(v) = self.eval(n, t) {
                    out.push(v);
                }
            }
        }
        let mut uniq: Vec<AlgElem> = Vec::new();
        for v in out {
            if !uniq.contains(&v) {
                uniq.push(v);
            }
        }
        uniq
    }

    /// The node itself, then later stages up to `depth` refinements away.
    fn refinements(&mut self, root: &Node, depth: usize) -> Vec<Node> {
        let mut seen = vec![root.clone()];
        let mut frontier = vec![root.clone()];
        let cap = self.policy.max_stages.max(1);
        for round in 0..depth {
            let mut next = Vec::new();
            for n in &frontier {
                let a = n.algebra();
                if a.is_trivial() {
                    continue;
                }
                let mut children = Vec::new();
                if round == 0 && n.level == root.level && root.stage.history.is_empty() {
                    if let Some(k) = self.policy.adjoin_nilpotent {
                        let (b, h) = adjoin_nilpotent(a, "d", k);
                        children.push(n.push(b, &h, Step::AdjoinNilpotent { name: "d".into(), order: k }));
                    }
                }
                for x in self.pool(n) {
                    let unit = a.try_invert(&x).is_some();
                    if is_zero(&x) || unit {
                        continue;
                    }
                    children.push(n.quotient(&x));
                    if !a.is_nilpotent(&x) {
                        children.push(n.localize(&x));
                    }
                }
                for c in children {
                    if seen.len() >= cap {
                        break;
                    }
                    if !seen.iter().any(|s| s.same_as(&c)) {
                        seen.push(c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        self.stages += seen.len();
        seen
    }

    fn force(&mut self, n: &Node, f: &Formula, depth: usize, indent: usize) -> Result<Out, ZariskiError> {
        if n.algebra().is_trivial() {
            self.log(indent, format!("{}: 1 = 0 holds, so {} is forced", n.describe(), print(f)));
            return Ok(Out::Forced { exact: true });
        }
        match f {
            Formula::Top => Ok(Out::Forced { exact: true }),
            Formula::Bottom => Ok(Out::Refuted(vec![format!("1 ≠ 0 in {}", n.describe())])),
            Formula::Eq(s, t) => {
                let (x, y) = (self.eval(n, s)?, self.eval(n, t)?);
                let a = n.algebra();
                if x == y {
                    Ok(Out::Forced { exact: true })
                } else {
                    Ok(Out::Refuted(vec![format!(
                        "{} = {} fails in {}: {} ≠ {}",
                        print_term(s),
                        print_term(t),
                        n.describe(),
                        a.show(&x),
                        a.show(&y)
                    )]))
                }
            }
            Formula::Pred(p, _) => Err(ZariskiError::UnsupportedFormula(format!("predicate {p}"))),
            Formula::And(l, r) => {
                let a = self.force(n, l, depth, indent)?;
                if let Out::Refuted(_) = a {
                    return Ok(a);
                }
                let b = self.force(n, r, depth, indent)?;
                Ok(match (a, b) {
                    (_, Out::Refuted(c)) => Out::Refuted(c),
                    (Out::Unknown(u), _) | (_, Out::Unknown(u)) => Out::Unknown(u),
                    (Out::Forced { exact: x }, Out::Forced { exact: y }) => Out::Forced { exact: x && y },
                    (Out::Refuted(_), _) => unreachable!(),
                })
            }
            Formula::Or(l, r) => self.disjunction(n, l, r, depth, indent),
            Formula::Implies(p, c) => self.implication(n, p, c, depth, indent),
            Formula::Forall(v, body) => self.universal(n, &v.name, body, depth, indent),
            Formula::Exists(v, body) => self.existential(n, &v.name, body, depth, indent),
        }
    }

    /// Refines `n` to the universal stage where premise `p` holds, when `p`
    /// is built from equations and negated equations.
    fn premise_stage(&mut self, n: &Node, p: &Formula, indent: usize) -> Result<Option<Node>, ZariskiError> {
        match p {
            Formula::Top => Ok(Some(n.clone())),
            Formula::Eq(s, t) => {
                let x = linalg::sub(&self.eval(n, s)?, &self.eval(n, t)?);
                let c = n.quotient(&x);
                self.log(
                    indent,
                    format!(
                        "premise {}: every later stage where it holds factors through C := {}",
                        print(p),
                        c.describe()
                    ),
                );
                Ok(Some(c))
            }
            Formula::Implies(inner, bot) if **bot == Formula::Bottom => {
                let Formula::Eq(s, t) = &**inner else { return Ok(None) };
                let x = linalg::sub(&self.eval(n, s)?, &self.eval(n, t)?);
                let a = n.algebra();
                let shown = a.show(&x);
                self.log(indent, format!("let B be a later stage where {} holds", print(p)));
                self.log(indent + 1, format!("{} holds in C := B/({shown}), so 1 = 0 holds in C", print(inner)));
                let b = n.localize(&x);
                self.log(indent + 1, format!("so {shown} is invertible in B, and B is a later stage of {}", b.describe()));
                if let Some(y) = a.try_invert(&x) {
                    self.log(indent + 1, format!("{shown} is already invertible, with inverse {}", a.show(&y)));
                } else if b.algebra().is_trivial() {
                    self.log(indent + 1, format!("{shown} is nilpotent, so that localization is trivial"));
                } else {
                    self.log(indent + 1, format!("that localization has dimension {}", b.algebra().dim()));
                }
                Ok(Some(b))
            }
            Formula::And(l, r) => match self.premise_stage(n, l, indent)? {
                Some(m) => self.premise_stage(&m, r, indent),
                None => Ok(None),
            },
            _ => Ok(None),
        }
    }

    fn implication(&mut self, n: &Node, p: &Formula, c: &Formula, depth: usize, indent: usize) -> Result<Out, ZariskiError> {
        if let Some(m) = self.premise_stage(n, p, indent)? {
            let out = self.force(&m, c, depth, indent + 1)?;
            return Ok(match out {
                Out::Refuted(mut chain) => {
                    chain.insert(0, format!("{} holds at {} but the conclusion does not", print(p), m.describe()));
                    Out::Refuted(chain)
                }
                other => other,
            });
        }
        self.log(indent, format!("{} ⇒ ...: exploring later stages of {} to depth {depth}", print(p), n.describe()));
        let mut unknown = None;
        for b in self.refinements(n, depth) {
            let rest = depth.saturating_sub(b.level - n.level);
            match self.force(&b, p, rest, indent + 1)? {
                Out::Refuted(_) => continue,
                Out::Unknown(u) => {
                    unknown.get_or_insert(u);
                    continue;
                }
                Out::Forced { exact } => match self.force(&b, c, rest, indent + 1)? {
                    Out::Refuted(mut chain) if exact => {
                        chain.insert(0, format!("at {} the premise {} holds and the conclusion fails", b.describe(), print(p)));
                        return Ok(Out::Refuted(chain));
                    }
                    Out::Refuted(_) => {
                        unknown.get_or_insert(format!("premise only bounded-forced at {}", b.describe()));
                    }
                    Out::Unknown(u) => {
                        unknown.get_or_insert(u);
                    }
                    Out::Forced { .. } => {}
                },
            }
        }
        Ok(match unknown {
            Some(u) => Out::Unknown(u),
            None => Out::Forced { exact: false },
        })
    }

    fn universal(&mut self, n: &Node, var: &str, body: &Formula, depth: usize, indent: usize) -> Result<Out, ZariskiError> {
        self.log(indent, format!("for every later stage B of {} and every {var} in B:", n.describe()));
        let mut unknown = None;
        let mut instances = 0usize;
        for b in self.refinements(n, depth) {
            let rest = depth.saturating_sub(b.level - n.level);
            for x0 in self.pool(&b) {
                instances += 1;
                let shown = b.algebra().show(&x0);
                self.log(indent + 1, format!("B := {}, {var} := {shown}", b.describe()));
                match self.force(&b.bind(var, x0), body, rest, indent + 2)? {
                    Out::Forced { .. } => {}
                    Out::Refuted(mut chain) => {
                        chain.insert(0, format!("instance {var} := {shown} at {}", b.describe()));
                        return Ok(Out::Refuted(chain));
                    }
                    Out::Unknown(u) => {
                        unknown.get_or_insert(u);
                    }
                }
            }
        }
        self.log(indent, format!("{instances} instances checked"));
        Ok(match unknown {
            Some(u) => Out::Unknown(u),
            None => Out::Forced { exact: false },
        })
    }

    /// A witness at `n` itself, i.e. for the singleton covering.
    fn witness_here(&mut self, n: &Node, var: &str, body: &Formula, depth: usize, indent: usize) -> Result<(Option<bool>, Option<bool>), ZariskiError> {
        let solved = self.affine_solution(n, var, body)?;
        let mut candidates = Vec::new();
        if let Some(Some(y)) = &solved {
            candidates.push(y.clone());
        }
        candidates.extend(self.pool(n));
        for y in candidates {
            if let Out::Forced { exact } = self.force(&n.bind(var, y.clone()), body, depth, indent + 1)? {
                self.log(indent, format!("{var} := {} works in {}", n.algebra().show(&y), n.describe()));
                return Ok((Some(exact), None));
            }
        }
        let impossible = matches!(solved, Some(None));
        Ok((None, Some(impossible)))
    }

    fn partition_pool(&self, n: &Node) -> Vec<AlgElem> {
        let a = n.algebra();
        let mut pool = Vec::new();
        for x in self.pool(n) {
            if is_zero(&x) || x == a.one() {
                continue;
            }
            let e = fitting_idempotent(a, &x);
            for y in [linalg::sub(&a.one(), &x), x, linalg::sub(&a.one(), &e), e] {
                if is_zero(&y) || y == a.one() {
                    continue;
                }
                if !pool.contains(&y) {
                    pool.push(y);
                }
            }
        }
        pool
    }

    fn existential(&mut self, n: &Node, var: &str, body: &Formula, depth: usize, indent: usize) -> Result<Out, ZariskiError> {
        let (found, impossible) = self.witness_here(n, var, body, depth, indent)?;
        if let Some(exact) = found {
            self.log(indent, "the singleton covering suffices".to_string());
            return Ok(Out::Forced { exact });
        }
        let a = n.algebra().clone();
        if impossible == Some(true) && a.is_split_local() {
            return Ok(Out::Refuted(vec![format!(
                "no {var} in {} satisfies {}; the stage is local, so every covering contains a copy of it",
                n.describe(),
                print(body)
            )]));
        }
        let pool = self.partition_pool(n);
        for cover in covering_partitions(&a, &pool, self.policy.partition_size).into_iter().skip(1) {
            let shown: Vec<String> = cover.parts.iter().map(|f| a.show(f)).collect();
            self.log(indent, format!("trying the covering 1 = {}", shown.join(" + ")));
            let mut all = Some(true);
            for f in &cover.parts {
                let piece = n.localize(f);
                match self.witness_here(&piece, var, body, depth, indent + 1)?.0 {
                    Some(exact) => all = all.map(|e| e && exact),
                    None => {
                        all = None;
                        break;
                    }
                }
            }
            if let Some(exact) = all {
                return Ok(Out::Forced { exact });
            }
        }
        Ok(Out::Unknown(format!("no witness for ∃{var} found at {}", n.describe())))
    }

    fn disjunction(&mut self, n: &Node, l: &Formula, r: &Formula, depth: usize, indent: usize) -> Result<Out, ZariskiError> {
        let here = |ex: &mut Self, m: &Node| -> Result<(Out, Out), ZariskiError> {
            let a = ex.force(m, l, depth, indent + 1)?;
            if let Out::Forced { .. } = a {
                return Ok((a, Out::Unknown(String::new())));
            }
            Ok((a, ex.force(m, r, depth, indent + 1)?))
        };
        match here(self, n)? {
            (Out::Forced { exact }, _) | (_, Out::Forced { exact }) => return Ok(Out::Forced { exact }),
            (Out::Refuted(mut c1), Out::Refuted(c2)) if n.algebra().is_split_local() => {
                c1.extend(c2);
                c1.push(format!("{} is local, so every covering contains a copy of it", n.describe()));
                return Ok(Out::Refuted(c1));
            }
            _ => {}
        }
        let a = n.algebra().clone();
        let pool = self.partition_pool(n);
        for cover in covering_partitions(&a, &pool, self.policy.partition_size).into_iter().skip(1) {
            let mut all = Some(true);
            for f in &cover.parts {
                match here(self, &n.localize(f))? {
                    (Out::Forced { exact }, _) | (_, Out::Forced { exact }) => all = all.map(|e| e && exact),
                    _ => {
                        all = None;
                        break;
                    }
                }
            }
            if let Some(exact) = all {
                let shown: Vec<String> = cover.parts.iter().map(|f| a.show(f)).collect();
                self.log(indent, format!("covering 1 = {} decides each piece", shown.join(" + ")));
                return Ok(Out::Forced { exact });
            }
        }
        Ok(Out::Unknown(format!("no covering of {} decides {} ∨ {}", n.describe(), print(l), print(r))))
    }
}

fn collect_equations<'f>(f: &'f Formula, out: &mut Vec<(&'f Term, &'f Term)>) -> bool {
    match f {
        Formula::Eq(s, t) => {
            out.push((s, t));
            true
        }
        Formula::And(a, b) => collect_equations(a, out) && collect_equations(b, out),
        _ => false,
    }
}

fn subterms(f: &Formula, out: &mut Vec<Term>) {
    fn term(t: &Term, out: &mut Vec<Term>) {
        if let Term::Apply { args, .. } = t {
            args.iter().for_each(|a| term(a, out));
        }
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
    match f {
        Formula::Eq(s, t) => {
            term(s, out);
            term(t, out);
        }
        Formula::Pred(_, args) => args.iter().for_each(|a| term(a, out)),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            subterms(a, out);
            subterms(b, out);
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => subterms(b, out),
        Formula::Top | Formula::Bottom => {}
    }
}

/// Evaluates `f` at stage `s`, exploring later stages up to `depth` refinements.
pub fn forces_zar(s: &Stage, f: &Formula, depth: usize, policy: &PoolPolicy) -> Result<Verdict, ZariskiError> {
    supported(f)?;
    let mut terms = Vec::new();
    subterms(f, &mut terms);
    let mut ex = Explorer {
        policy,
        subterms: terms,
        transcript: Vec::new(),
        dropped: 0,
        stages: 0,
    };
    let root = Node {
        stage: s.clone(),
        env: Env::new(),
        level: 0,
    };
    ex.log(0, format!("stage {} (dimension {})", s.describe(), s.algebra.dim()));
    let out = ex.force(&root, f, depth, 0)?;
    if ex.dropped > 0 {
        let note = format!("... {} further lines omitted", ex.dropped);
        ex.transcript.push(note);
    }
    let transcript = ex.transcript;
    Ok(match out {
        Out::Forced { exact } => Verdict::ForcedBounded {
            exact,
            depth,
            stages_explored: ex.stages.max(1),
            transcript,
        },
        Out::Refuted(chain) => Verdict::RefutedWitness { chain, transcript },
        Out::Unknown(reason) => Verdict::Unknown { reason, transcript },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Signature, Sort};
    use crate::zariski::algebra::{dual_numbers, split_quadratic, two_infinitesimals};

    const FIELD: &str = "forall x:R. (~(x = 0) -> exists y:R. x*y = 1)";

    fn ring_with(consts: &[&str]) -> Signature {
        consts.iter().fold(Signature::ring(), |s, c| s.with_constant(*c, Sort::ring()))
    }

    fn check(stage: &Stage, text: &str, depth: usize) -> Verdict {
        let names: Vec<&str> = stage.constants.keys().map(String::as_str).collect();
        let f = parse(text, &ring_with(&names)).unwrap();
        forces_zar(stage, &f, depth, &PoolPolicy::default()).unwrap()
    }

    #[test]
    fn field_property_at_dual_numbers() {
        let v = check(&Stage::new(dual_numbers(2)), FIELD, 2);
        assert!(v.is_forced(), "{v:?}");
        let t = v.transcript().join("\n");
        assert!(t.contains("C := B/("), "{t}");
        assert!(t.contains("invertible"));
        assert!(t.contains("singleton covering"));
    }

    #[test]
    fn field_property_at_other_stages() {
        for a in [FinDimAlgebra::rationals(), two_infinitesimals(), split_quadratic()] {
            assert!(check(&Stage::new(a), FIELD, 1).is_forced());
        }
    }

    #[test]
    fn epsilon_has_no_inverse() {
        let a = dual_numbers(2);
        let s = Stage::new(a.clone()).with_constant("e", a.basis_vector(1));
        assert!(check(&s, "exists y:R. e*y = 1", 2).is_refuted());
        let s = Stage::new(a.clone()).with_constant("e", linalg::add(&a.one(), &a.basis_vector(1)));
        assert!(matches!(check(&s, "exists y:R. e*y = 1", 2), Verdict::ForcedBounded { exact: true, .. }));
    }

    #[test]
    fn absurdity_at_trivial_stage() {
        let v = check(&Stage::new(FinDimAlgebra::trivial()), "1 = 0", 0);
        assert!(matches!(v, Verdict::ForcedBounded { exact: true, .. }));
        assert!(check(&Stage::new(FinDimAlgebra::rationals()), "1 = 0", 0).is_refuted());
    }

    #[test]
    fn idempotents_split_the_stage() {
        let a = split_quadratic();
        let s = Stage::new(a.clone()).with_constant("x", a.basis_vector(1));
        // x = 1 or x = -1 needs the covering by the two idempotents
        let v = check(&s, "x = 1 \\/ x = -1", 1);
        assert!(matches!(v, Verdict::ForcedBounded { exact: true, .. }), "{v:?}");
        assert!(check(&s, "x = 1", 0).is_refuted());
    }

    #[test]
    fn nilpotents_are_not_zero_but_not_nonzero() {
        let a = dual_numbers(2);
        let s = Stage::new(a.clone()).with_constant("e", a.basis_vector(1));
        assert!(check(&s, "e = 0", 0).is_refuted());
        assert!(check(&s, "~(e = 0)", 0).is_refuted());
        assert!(matches!(check(&s, "~~(e = 0)", 0), Verdict::ForcedBounded { exact: true, .. }));
    }

    #[test]
    fn unsupported_formulas() {
        let sig = Signature::arithmetic();
        let f = parse("forall n:N. n = n", &sig).unwrap();
        let r = forces_zar(&Stage::new(dual_numbers(2)), &f, 1, &PoolPolicy::default());
        assert!(matches!(r, Err(ZariskiError::UnsupportedFormula(_))));
    }

    #[test]
    fn stage_steps_transport_constants() {
        let a = split_quadratic();
        let s = Stage::new(a.clone()).with_constant("x", a.basis_vector(1));
        let t = s.quotient_by(&linalg::sub(&a.basis_vector(1), &a.one()));
        assert_eq!(t.constants["x"], t.algebra.one());
        assert_eq!(t.history.len(), 1);
        let u = Stage::new(FinDimAlgebra::rationals()).tensor_with_generator("i", &[linalg::q(1), linalg::q(0)]);
        assert_eq!(u.algebra.dim(), 2);
        assert!(u.algebra.check_axioms().is_empty());
        assert_eq!(u.describe(), "A[i]/(i^2 + 1) (dim 2)");
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn deeper_search_never_contradicts_exact_verdicts(seed in 0u64..10_000, which in 0usize..3) {
            let algebras = [dual_numbers(2), split_quadratic(), two_infinitesimals()];
            let a = algebras[which].clone();
            let stage = Stage::new(a.clone()).with_constant("e", a.basis_vector(1));
            let f = crate::formula::random_formula(&ring_with(&["e"]), seed, 3);
            let policy = PoolPolicy { max_stages: 6, ..PoolPolicy::default() };
            let shallow = forces_zar(&stage, &f, 0, &policy).unwrap();
            let deep = forces_zar(&stage, &f, 1, &policy).unwrap();
            for (x, y) in [(&shallow, &deep), (&deep, &shallow)] {
                if let Verdict::ForcedBounded { exact: true, .. } = x {
                    proptest::prop_assert!(!y.is_refuted(), "{}: {x:?} vs {y:?}", print(&f));
                }
            }
            if shallow.is_forced() && deep.is_refuted() {
                let Verdict::RefutedWitness { chain, .. } = &deep else { unreachable!() };
                proptest::prop_assert!(!chain.is_empty());
            }
        }
    }
}
