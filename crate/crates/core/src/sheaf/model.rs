//! Sheaf models over finite spaces and their forcing relation.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::space::{all_topologies, is_dense, is_subset, khalimsky_interval, opens_from_basis, FiniteSpace, Open};
use super::SheafError;
use crate::formula::{print_term, Formula, Signature, Sort, SortKind, Term};

/// How a predicate is interpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredTable {
    /// Explicit `(open, argument symbols)` entries. Holding at `∅` is implicit.
    Entries(BTreeSet<(Open, Vec<String>)>),
    /// Holds on `U` iff every point of `U`, with the argument values there,
    /// is listed. Such tables are restriction-stable and local by construction.
    Pointwise(BTreeSet<(usize, Vec<i64>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafModel {
    pub space: FiniteSpace,
    /// Section symbols and their values at each point.
    pub sections: BTreeMap<String, Vec<i64>>,
    pub predicates: BTreeMap<String, PredTable>,
}

/// Variable name to section symbol.
pub type Env = BTreeMap<String, String>;

#[derive(Serialize, Deserialize)]
struct PredEntry {
    open: Vec<String>,
    #[serde(default)]
    args: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    points: Vec<String>,
    basis: Vec<Vec<String>>,
    #[serde(default)]
    sections: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    predicates: BTreeMap<String, Vec<PredEntry>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// A section with values in `{neg, zero, pos}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSection {
    pub values: Vec<Sign>,
}

impl SignSection {
    pub fn to_values(&self) -> Vec<i64> {
        self.values
            .iter()
            .map(|s| match s {
                Sign::Neg => -1,
                Sign::Zero => 0,
                Sign::Pos => 1,
            })
            .collect()
    }

    /// Negative left of the midpoint, zero there, positive to the right.
    pub fn crossing(points: usize) -> Self {
        let mid = points / 2;
        SignSection {
            values: (0..points)
                .map(|i| match i.cmp(&mid) {
                    std::cmp::Ordering::Less => Sign::Neg,
                    std::cmp::Ordering::Equal => Sign::Zero,
                    std::cmp::Ordering::Greater => Sign::Pos,
                })
                .collect(),
        }
    }
}

/// Sort `R` of sections, the given section constants, numerals `0` and `1`,
/// pointwise order predicates and pointwise arithmetic.
pub fn section_signature(constants: &[&str]) -> Signature {
    let r = Sort::section();
    let mut sig = Signature::new()
        .with_sort(r.clone())
        .with_function("+", vec![r.clone(), r.clone()], r.clone())
        .with_function("-", vec![r.clone(), r.clone()], r.clone())
        .with_function("*", vec![r.clone(), r.clone()], r.clone())
        .with_function("neg", vec![r.clone()], r.clone());
    for p in ["<", ">", "<=", ">="] {
        sig = sig.with_predicate(p, vec![r.clone(), r.clone()]);
    }
    for c in constants.iter().copied().chain(["0", "1"]) {
        sig = sig.with_constant(c, r.clone());
    }
    sig
}

impl SheafModel {
    pub fn new(space: FiniteSpace) -> Self {
        SheafModel {
            space,
            sections: BTreeMap::new(),
            predicates: BTreeMap::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SheafError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| SheafError::Json(e.to_string()))?;
        let space = opens_from_basis(&file.points, &file.basis)?;
        let mut predicates = BTreeMap::new();
        for (p, entries) in file.predicates {
            let mut set = BTreeSet::new();
            for e in entries {
                set.insert((space.set_of(&e.open)?, e.args));
            }
            predicates.insert(p, PredTable::Entries(set));
        }
        Ok(SheafModel {
            space,
            sections: file.sections,
            predicates,
        })
    }

    /// Serializes the model; pointwise tables are expanded into entries.
    pub fn to_json(&self) -> String {
        let minimal: Vec<Vec<String>> = (0..self.space.points.len())
            .map(|p| self.space.names_of(self.space.minimal_open(p)))
            .collect();
        let mut predicates = BTreeMap::new();
        for (p, table) in &self.predicates {
            let entries = match table {
                PredTable::Entries(set) => set.clone(),
                PredTable::Pointwise(_) => self.expand(p),
            };
            let list = entries
                .into_iter()
                .filter(|(u, _)| *u != 0)
                .map(|(u, args)| PredEntry {
                    open: self.space.names_of(u),
                    args,
                })
                .collect();
            predicates.insert(p.clone(), list);
        }
        let file = ModelFile {
            points: self.space.points.clone(),
            basis: minimal,
            sections: self.sections.clone(),
            predicates,
        };
        serde_json::to_string_pretty(&file).expect("model serializes")
    }

    fn arity(&self, p: &str) -> usize {
        match self.predicates.get(p) {
            Some(PredTable::Entries(set)) => set.iter().next().map_or(0, |(_, a)| a.len()),
            Some(PredTable::Pointwise(set)) => set.iter().next().map_or(0, |(_, a)| a.len()),
            None => 0,
        }
    }

    fn expand(&self, p: &str) -> BTreeSet<(Open, Vec<String>)> {
        let symbols: Vec<&String> = self.sections.keys().collect();
        let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..self.arity(p) {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    symbols.iter().map(move |s| {
                        let mut t = t.clone();
                        t.push((*s).clone());
                        t
                    })
                })
                .collect();
        }
        let mut out = BTreeSet::new();
        for args in tuples {
            for &u in &self.space.opens {
                if self.holds_symbols(p, u, &args).unwrap_or(false) {
                    out.insert((u, args.clone()));
                }
            }
        }
        out
    }

    fn section(&self, name: &str) -> Result<&Vec<i64>, SheafError> {
        self.sections
            .get(name)
            .ok_or_else(|| SheafError::UnknownSection(name.to_string()))
    }

    fn holds_symbols(&self, p: &str, u: Open, args: &[String]) -> Result<bool, SheafError> {
        let values = args.iter().map(|a| self.section(a).cloned()).collect::<Result<Vec<_>, _>>()?;
        self.holds(p, u, args, &values)
    }

    fn holds(&self, p: &str, u: Open, symbols: &[String], values: &[Vec<i64>]) -> Result<bool, SheafError> {
        if u == 0 {
            return Ok(true);
        }
        let pts = || (0..self.space.points.len()).filter(move |i| u >> i & 1 == 1);
        match self.predicates.get(p) {
            Some(PredTable::Entries(set)) => Ok(set.contains(&(u, symbols.to_vec()))),
            Some(PredTable::Pointwise(set)) => Ok(pts().all(|i| {
                let here: Vec<i64> = values.iter().map(|v| v[i]).collect();
                set.contains(&(i, here))
            })),
            None => {
                let cmp: fn(i64, i64) -> bool = match p {
                    "<" => |a, b| a < b,
                    ">" => |a, b| a > b,
                    "<=" => |a, b| a <= b,
                    ">=" => |a, b| a >= b,
                    _ => return Ok(false),
                };
                match values {
                    [a, b] => Ok(pts().all(|i| cmp(a[i], b[i]))),
                    _ => Err(SheafError::Unsupported(format!("{p} expects two arguments"))),
                }
            }
        }
    }

    fn term(&self, t: &Term, env: &Env) -> Result<(Option<String>, Vec<i64>), SheafError> {
        let n = self.space.points.len();
        match t {
            Term::Variable(v) => {
                let sym = env.get(&v.name).ok_or_else(|| SheafError::EnvError(v.name.clone()))?;
                Ok((Some(sym.clone()), self.section(sym)?.clone()))
            }
            Term::Constant { name, .. } => match self.sections.get(name) {
                Some(vals) => Ok((Some(name.clone()), vals.clone())),
                None => match name.parse::<i64>() {
                    Ok(k) => Ok((None, vec![k; n])),
                    Err(_) => Err(SheafError::UnknownSection(name.clone())),
                },
            },
            Term::NumLiteral(k) => Ok((None, vec![*k as i64; n])),
            Term::Apply { func, args, .. } => {
                let vals = args
                    .iter()
                    .map(|a| self.term(a, env).map(|(_, v)| v))
                    .collect::<Result<Vec<_>, _>>()?;
                let out: Vec<i64> = match (func.as_str(), vals.as_slice()) {
                    ("+", [a, b]) => a.iter().zip(b).map(|(x, y)| x + y).collect(),
                    ("-", [a, b]) => a.iter().zip(b).map(|(x, y)| x - y).collect(),
                    ("*", [a, b]) => a.iter().zip(b).map(|(x, y)| x * y).collect(),
                    ("neg", [a]) => a.iter().map(|x| -x).collect(),
                    _ => return Err(SheafError::Unsupported(print_term(t))),
                };
                Ok((None, out))
            }
            Term::Call { .. } => Err(SheafError::Unsupported(print_term(t))),
        }
    }

    fn check_sort(sort: &Sort) -> Result<(), SheafError> {
        match sort.kind {
            SortKind::Section | SortKind::Custom(_) => Ok(()),
            _ => Err(SheafError::Unsupported(format!("quantifier over sort {}", sort.name))),
        }
    }

    /// Whether the open `u` forces `f` under `env`.
    pub fn forces(&self, u: Open, f: &Formula, env: &Env) -> Result<bool, SheafError> {
        if !self.space.is_open(u) {
            return Err(SheafError::NotOpen(self.space.show(u)));
        }
        self.force(u, f, &mut env.clone())
    }

    fn force(&self, u: Open, f: &Formula, env: &mut Env) -> Result<bool, SheafError> {
        if u == 0 {
            return Ok(true);
        }
        Ok(match f {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Eq(a, b) => {
                let (_, x) = self.term(a, env)?;
                let (_, y) = self.term(b, env)?;
                (0..self.space.points.len()).all(|i| u >> i & 1 == 0 || x[i] == y[i])
            }
            Formula::Pred(p, args) => {
                let evaluated = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>, _>>()?;
                let values: Vec<Vec<i64>> = evaluated.iter().map(|(_, v)| v.clone()).collect();
                let symbols: Option<Vec<String>> = evaluated.into_iter().map(|(s, _)| s).collect();
                match (self.predicates.get(p), symbols) {
                    (Some(PredTable::Entries(_)), None) => {
                        return Err(SheafError::Unsupported(format!(
                            "arguments of {p} must be section symbols"
                        )))
                    }
                    (_, symbols) => self.holds(p, u, &symbols.unwrap_or_default(), &values)?,
                }
            }
            Formula::And(a, b) => self.force(u, a, env)? && self.force(u, b, env)?,
            Formula::Or(a, b) => {
                let mut covered = 0;
                for v in self.space.subopens(u) {
                    if self.force(v, a, env)? || self.force(v, b, env)? {
                        covered |= v;
                    }
                }
                covered == u
            }
            Formula::Implies(a, b) => {
                for v in self.space.subopens(u) {
                    if self.force(v, a, env)? && !self.force(v, b, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Forall(x, body) => {
                Self::check_sort(&x.sort)?;
                for v in self.space.subopens(u) {
                    for s in self.sections.keys() {
                        if !self.bind(env, &x.name, s, |env| self.force(v, body, env))? {
                            return Ok(false);
                        }
                    }
                }
                true
            }
            Formula::Exists(x, body) => {
                Self::check_sort(&x.sort)?;
                let mut covered = 0;
                for v in self.space.subopens(u) {
                    for s in self.sections.keys() {
                        if self.bind(env, &x.name, s, |env| self.force(v, body, env))? {
                            covered |= v;
                            break;
                        }
                    }
                }
                covered == u
            }
        })
    }

    fn bind<T>(&self, env: &mut Env, name: &str, sym: &str, k: impl FnOnce(&mut Env) -> T) -> T {
        let old = env.insert(name.to_string(), sym.to_string());
        let out = k(env);
        match old {
            Some(o) => env.insert(name.to_string(), o),
            None => env.remove(name),
        };
        out
    }

    /// The union of all opens forcing `f`; it forces `f` itself by locality.
    pub fn largest_open_forcing(&self, f: &Formula, env: &Env) -> Result<Open, SheafError> {
        let mut u = 0;
        for &v in &self.space.opens {
            if self.forces(v, f, env)? {
                u |= v;
            }
        }
        Ok(u)
    }

    /// The model over Sierpiński space with `P` forced exactly on `{x}`.
    pub fn sierpinski() -> Self {
        let space = FiniteSpace::sierpinski();
        let mut m = SheafModel::new(space);
        m.predicates.insert(
            "P".into(),
            PredTable::Entries(BTreeSet::from([(0b01, Vec::new())])),
        );
        m
    }

    /// A sign section `a` crossing zero at the midpoint of a Khalimsky interval.
    pub fn trichotomy(n: usize) -> Self {
        let space = khalimsky_interval(n);
        let a = SignSection::crossing(space.points.len());
        let mut m = SheafModel::new(space);
        m.sections.insert("a".into(), a.to_values());
        m
    }
}

/// Whether `X` forces `¬¬f`, and when it does, the largest open forcing `f`,
/// which is then dense.
pub fn double_negation_dense(m: &SheafModel, f: &Formula) -> Result<(bool, Option<Open>), SheafError> {
    let full = m.space.full();
    let forced = m.forces(full, &Formula::not(Formula::not(f.clone())), &Env::new())?;
    let u = m.largest_open_forcing(f, &Env::new())?;
    Ok((forced, if forced { Some(u) } else { None }))
}

/// The dense-open side alone: is the largest open forcing `f` dense?
pub fn has_dense_forcing_open(m: &SheafModel, f: &Formula) -> Result<bool, SheafError> {
    Ok(is_dense(&m.space, m.largest_open_forcing(f, &Env::new())?))
}

/// Lists every restriction-stability or locality violation.
pub fn validate_model(m: &SheafModel) -> Vec<String> {
    let mut report = Vec::new();
    let n = m.space.points.len();
    for (name, vals) in &m.sections {
        if vals.len() != n {
            report.push(format!("section {name} has {} values for {n} points", vals.len()));
        }
    }
    for (p, table) in &m.predicates {
        let PredTable::Entries(set) = table else { continue };
        let mut arg_lists: BTreeSet<&Vec<String>> = BTreeSet::new();
        for (u, args) in set {
            arg_lists.insert(args);
            if !m.space.is_open(*u) {
                report.push(format!("{p} is given on {}, which is not open", m.space.show(*u)));
                continue;
            }
            for a in args {
                if !m.sections.contains_key(a) {
                    report.push(format!("{p} mentions unknown section {a}"));
                }
            }
            for v in m.space.subopens(*u) {
                if v != 0 && !set.contains(&(v, args.clone())) {
                    report.push(format!(
                        "restriction: {p}({}) holds on {} but not on {}",
                        args.join(", "),
                        m.space.show(*u),
                        m.space.show(v)
                    ));
                }
            }
        }
        for args in arg_lists {
            for &u in &m.space.opens {
                if u == 0 || set.contains(&(u, args.clone())) {
                    continue;
                }
                let covered = m
                    .space
                    .subopens(u)
                    .filter(|v| *v != u && set.contains(&(*v, args.clone())))
                    .fold(0, |a, b| a | b);
                if covered == u {
                    report.push(format!(
                        "locality: {p}({}) holds on a cover of {} but not on it",
                        args.join(", "),
                        m.space.show(u)
                    ));
                }
            }
        }
    }
    report
}

/// A random model on at most four points over `P..T`, `A`, `B`, `C`, `E`,
/// with pointwise predicate tables and up to three sections valued in `{-1, 0, 1}`.
pub fn random_model(seed: u64) -> SheafModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let spaces = all_topologies(n);
    let space = spaces.choose(&mut rng).expect("at least one topology").clone();
    let mut m = SheafModel::new(space);
    let count = rng.gen_range(1..=3);
    for k in 0..count {
        let vals = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        m.sections.insert(format!("s{k}"), vals);
    }
    for (p, arity) in [("P", 0), ("Q", 0), ("R", 0), ("S", 0), ("T", 0), ("A", 1), ("B", 1), ("C", 1), ("E", 2)] {
        let mut set = BTreeSet::new();
        let mut tuples: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..arity {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (-1..=1).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        for i in 0..n {
            for t in &tuples {
                if rng.gen_bool(0.5) {
                    set.insert((i, t.clone()));
                }
            }
        }
        m.predicates.insert(p.to_string(), PredTable::Pointwise(set));
    }
    m
}

/// Whether every subset in `parts` lies in `u` and together they cover it.
pub fn covers(parts: &[Open], u: Open) -> bool {
    parts.iter().all(|p| is_subset(*p, u)) && parts.iter().fold(0, |a, b| a | b) == u
}
