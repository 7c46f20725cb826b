//! Finite Kripke models and intuitionistic forcing.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{print_term, Formula, Signature, Term};

pub type World = String;
pub type Individual = String;
/// Variable name to individual.
pub type Env = BTreeMap<String, Individual>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KripkeError {
    #[error("unbound variable `{0}`")]
    EnvError(String),
    #[error("`{individual}` is not in the domain of world {world}")]
    DomainError { individual: Individual, world: World },
    #[error("unknown world `{0}`")]
    UnknownWorld(World),
    #[error("function symbols and numerals have no meaning in a relational model: {0}")]
    UnsupportedTerm(String),
}

/// A finite Kripke model. The order is stored without its reflexive pairs,
/// which are always implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: Vec<World>,
    pub order: Vec<(World, World)>,
    pub domains: BTreeMap<World, BTreeSet<Individual>>,
    /// Symbol, then world, then the tuples in the extension.
    pub predicates: BTreeMap<String, BTreeMap<World, BTreeSet<Vec<Individual>>>>,
}

impl KripkeModel {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn leq(&self, w: &str, v: &str) -> bool {
        w == v || self.order.iter().any(|(a, b)| a == w && b == v)
    }

    /// Worlds above `w`, including `w`.
    pub fn successors<'a>(&'a self, w: &'a str) -> impl Iterator<Item = &'a World> + 'a {
        self.worlds.iter().filter(move |v| self.leq(w, v))
    }

    pub fn domain(&self, w: &str) -> BTreeSet<Individual> {
        self.domains.get(w).cloned().unwrap_or_default()
    }

    pub fn holds_atom(&self, pred: &str, w: &str, args: &[Individual]) -> bool {
        self.predicates
            .get(pred)
            .and_then(|by_world| by_world.get(w))
            .is_some_and(|ext| ext.contains(args))
    }

    /// The two-world chain `w0 ≤ w1` with `P` true only at `w1`.
    pub fn two_chain() -> Self {
        let mut predicates = BTreeMap::new();
        predicates.insert(
            "P".to_string(),
            BTreeMap::from([("w1".to_string(), BTreeSet::from([Vec::new()]))]),
        );
        let d: BTreeSet<Individual> = BTreeSet::from(["d0".to_string()]);
        KripkeModel {
            worlds: vec!["w0".into(), "w1".into()],
            order: vec![("w0".into(), "w1".into())],
            domains: BTreeMap::from([("w0".into(), d.clone()), ("w1".into(), d)]),
            predicates,
        }
    }
}

/// Lists every violated preorder or monotonicity condition.
pub fn validate(m: &KripkeModel) -> Vec<String> {
    let mut report = Vec::new();
    let known: BTreeSet<&World> = m.worlds.iter().collect();
    for (a, b) in &m.order {
        for w in [a, b] {
            if !known.contains(w) {
                report.push(format!("order mentions unknown world {w}"));
            }
        }
    }
    for (a, b) in &m.order {
        for (c, d) in &m.order {
            if b == c && !m.leq(a, d) {
                report.push(format!("order is not transitive: {a} <= {b} <= {d} but not {a} <= {d}"));
            }
        }
    }
    for w in m.domains.keys() {
        if !known.contains(w) {
            report.push(format!("domain given for unknown world {w}"));
        }
    }
    for w in &m.worlds {
        for v in m.successors(w) {
            let (dw, dv) = (m.domain(w), m.domain(v));
            for d in dw.difference(&dv) {
                report.push(format!("domain not monotone: {d} in {w} but not in {v}"));
            }
        }
    }
    for (p, by_world) in &m.predicates {
        for (w, ext) in by_world {
            if !known.contains(w) {
                report.push(format!("{p} given at unknown world {w}"));
                continue;
            }
            let dom = m.domain(w);
            for tuple in ext {
                if let Some(d) = tuple.iter().find(|d| !dom.contains(*d)) {
                    report.push(format!("{p}({}) at {w} uses {d}, outside the domain", tuple.join(", ")));
                }
                for v in m.successors(w) {
                    if !m.holds_atom(p, v, tuple) {
                        report.push(format!(
                            "{p} not monotone: {p}({}) holds at {w} but not at {v}",
                            tuple.join(", ")
                        ));
                    }
                }
            }
        }
    }
    report
}

fn term(m: &KripkeModel, w: &str, t: &Term, env: &Env) -> Result<Individual, KripkeError> {
    match t {
        Term::Variable(v) => {
            let d = env.get(&v.name).ok_or_else(|| KripkeError::EnvError(v.name.clone()))?;
            if !m.domain(w).contains(d) {
                return Err(KripkeError::DomainError {
                    individual: d.clone(),
                    world: w.to_string(),
                });
            }
            Ok(d.clone())
        }
        other => Err(KripkeError::UnsupportedTerm(print_term(other))),
    }
}

/// Whether `w` forces `f` under `env`.
pub fn eval(m: &KripkeModel, w: &str, f: &Formula, env: &Env) -> Result<bool, KripkeError> {
    if !m.worlds.iter().any(|x| x == w) {
        return Err(KripkeError::UnknownWorld(w.to_string()));
    }
    forces(m, w, f, &mut env.clone())
}

fn forces(m: &KripkeModel, w: &str, f: &Formula, env: &mut Env) -> Result<bool, KripkeError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Eq(a, b) => term(m, w, a, env)? == term(m, w, b, env)?,
        Formula::Pred(p, args) => {
            let vals = args.iter().map(|t| term(m, w, t, env)).collect::<Result<Vec<_>, _>>()?;
            m.holds_atom(p, w, &vals)
        }
        Formula::And(a, b) => forces(m, w, a, env)? && forces(m, w, b, env)?,
        Formula::Or(a, b) => forces(m, w, a, env)? || forces(m, w, b, env)?,
        Formula::Implies(a, b) => {
            for v in m.successors(w) {
                if forces(m, v, a, env)? && !forces(m, v, b, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Forall(x, body) => {
            for v in m.successors(w) {
                for d in m.domain(v) {
                    if !with_binding(env, &x.name, d, |env| forces(m, v, body, env))? {
                        return Ok(false);
                    }
                }
            }
            true
        }
        Formula::Exists(x, body) => {
            for d in m.domain(w) {
                if with_binding(env, &x.name, d, |env| forces(m, w, body, env))? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

fn with_binding<T>(env: &mut Env, name: &str, d: Individual, k: impl FnOnce(&mut Env) -> T) -> T {
    let old = env.insert(name.to_string(), d);
    let out = k(env);
    match old {
        Some(o) => env.insert(name.to_string(), o),
        None => env.remove(name),
    };
    out
}

/// A valid random model over the predicates of `sig`. Domains are never empty.
pub fn random_model_for(sig: &Signature, seed: u64, max_worlds: usize, max_domain: usize) -> KripkeModel {
    assert!(max_worlds >= 1 && max_domain >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_worlds);
    let worlds: Vec<World> = (0..n).map(|i| format!("w{i}")).collect();
    // a random relation on increasing indices, closed transitively
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(0.5);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let individuals: Vec<Individual> = (0..max_domain).map(|i| format!("d{i}")).collect();
    let mut domains: Vec<BTreeSet<Individual>> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_domain);
            individuals[..k].iter().cloned().collect()
        })
        .collect();
    let mut preds: BTreeMap<String, Vec<BTreeSet<Vec<Individual>>>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                let lower = domains[i].clone();
                domains[j].extend(lower);
            }
        }
    }
    for (p, arity) in sig.predicates().map(|(p, a)| (p.clone(), a.len())) {
        let mut ext = Vec::new();
        for dom in &domains {
            let dom: Vec<&Individual> = dom.iter().collect();
            let mut set = BTreeSet::new();
            for tuple in tuples(&dom, arity) {
                if rng.gen_bool(0.4) {
                    set.insert(tuple);
                }
            }
            ext.push(set);
        }
        preds.insert(p, ext);
    }
    for ext in preds.values_mut() {
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    let lower = ext[i].clone();
                    ext[j].extend(lower);
                }
            }
        }
    }
    let mut order = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                order.push((worlds[i].clone(), worlds[j].clone()));
            }
        }
    }
    KripkeModel {
        domains: worlds.iter().cloned().zip(domains).collect(),
        predicates: preds
            .into_iter()
            .map(|(p, ext)| (p, worlds.iter().cloned().zip(ext).collect()))
            .collect(),
        worlds,
        order,
    }
}

fn tuples(dom: &[&Individual], arity: usize) -> Vec<Vec<Individual>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                dom.iter().map(move |d| {
                    let mut t = t.clone();
                    t.push((*d).clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// A random model over the letters `P..T`, `A`, `B`, `C` and `E`.
pub fn random_model(seed: u64, max_worlds: usize, max_domain: usize) -> KripkeModel {
    let sig = Signature::propositional_first_order(crate::formula::SortKind::Custom("D".into()));
    random_model_for(&sig, seed, max_worlds, max_domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, random_formula, SortKind};
    use proptest::prelude::*;

    fn sig() -> Signature {
        Signature::propositional_first_order(SortKind::Custom("D".into()))
    }

    fn holds(m: &KripkeModel, w: &str, text: &str) -> bool {
        eval(m, w, &parse(text, &sig()).unwrap(), &Env::new()).unwrap()
    }

    #[test]
    fn two_chain_examples() {
        let m = KripkeModel::two_chain();
        assert!(validate(&m).is_empty());
        assert!(!holds(&m, "w0", "P \\/ ~P"));
        assert!(holds(&m, "w0", "~~P"));
        assert!(!holds(&m, "w0", "~~P -> P"));
        assert!(holds(&m, "w0", "P -> P"));
        assert!(holds(&m, "w1", "P \\/ ~P"));
    }

    #[test]
    fn validation_reports() {
        let mut m = KripkeModel::two_chain();
        m.predicates.get_mut("P").unwrap().insert("w0".into(), BTreeSet::from([Vec::new()]));
        m.predicates.get_mut("P").unwrap().remove("w1");
        assert_eq!(validate(&m).len(), 1);
        let mut m = KripkeModel::two_chain();
        m.worlds.push("w2".into());
        m.domains.insert("w2".into(), BTreeSet::from(["d0".into()]));
        m.order.push(("w1".into(), "w2".into()));
        m.predicates.get_mut("P").unwrap().insert("w2".into(), BTreeSet::from([Vec::new()]));
        let report = validate(&m);
        assert!(report.iter().any(|r| r.contains("transitive")), "{report:?}");
    }

    #[test]
    fn json_round_trip() {
        let m = random_model(3, 3, 3);
        assert_eq!(KripkeModel::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn hundred_random_models_validate() {
        for seed in 0..100 {
            let m = random_model(seed, 4, 3);
            assert!(validate(&m).is_empty(), "seed {seed}: {:?}", validate(&m));
        }
        assert_eq!(random_model(0, 3, 3), random_model(0, 3, 3));
    }

    #[test]
    fn errors_for_bad_envs() {
        let m = KripkeModel::two_chain();
        let f = parse("A(x)", &sig().with_var("x", crate::formula::Sort::custom("D"))).unwrap();
        assert_eq!(eval(&m, "w0", &f, &Env::new()), Err(KripkeError::EnvError("x".into())));
        let env = Env::from([("x".to_string(), "zz".to_string())]);
        assert!(matches!(eval(&m, "w0", &f, &env), Err(KripkeError::DomainError { .. })));
    }

    proptest! {
        #[test]
        fn forcing_persists_upward(seed in 0u64..3000) {
            let m = random_model(seed, 4, 2);
            let f = random_formula(&sig(), seed.wrapping_mul(7919), 4);
            for w in &m.worlds {
                if eval(&m, w, &f, &Env::new()).unwrap() {
                    for v in m.successors(w) {
                        prop_assert!(eval(&m, v, &f, &Env::new()).unwrap(), "{} at {w} but not {v}", crate::formula::print(&f));
                    }
                }
            }
        }
    }
}
