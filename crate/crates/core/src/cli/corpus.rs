//! A fixed list of formulas, classified, and the runner that checks them
//! against generated and bundled models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::formula::{parse, Formula, Signature, SortKind};
use crate::kripke::{self, KripkeModel};
use crate::sheaf::{self, section_signature, SheafModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    IntuitionisticTheorem,
    ClassicalOnly,
    NonTheorem,
}

/// The vocabulary an entry is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Language {
    /// `P..T`, unary `A`, `B`, `C`, binary `E` over one sort `D`.
    Letters,
    /// Sections of `R` with pointwise order, as in the trichotomy model.
    Order,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub class: Classification,
    pub language: Language,
}

const fn entry(name: &'static str, text: &'static str, class: Classification) -> CorpusEntry {
    CorpusEntry {
        name,
        text,
        class,
        language: Language::Letters,
    }
}

use Classification::*;

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry("identity", "P -> P", IntuitionisticTheorem),
        entry("weakening", "P -> Q -> P", IntuitionisticTheorem),
        entry("distribution of implication", "(P -> Q -> R) -> (P -> Q) -> P -> R", IntuitionisticTheorem),
        entry("and commutes", "P /\\ Q -> Q /\\ P", IntuitionisticTheorem),
        entry("or commutes", "P \\/ Q -> Q \\/ P", IntuitionisticTheorem),
        entry("double negation introduction", "P -> ~~P", IntuitionisticTheorem),
        entry("triple negation", "~~~P -> ~P", IntuitionisticTheorem),
        entry("negated disjunction", "~(P \\/ Q) -> ~P /\\ ~Q", IntuitionisticTheorem),
        entry("conjunction of negations", "~P /\\ ~Q -> ~(P \\/ Q)", IntuitionisticTheorem),
        entry("excluded middle is not refutable", "~~(P \\/ ~P)", IntuitionisticTheorem),
        entry("contraposition", "(P -> Q) -> ~Q -> ~P", IntuitionisticTheorem),
        entry("ex falso", "false -> P", IntuitionisticTheorem),
        entry("weak de morgan converse", "~P \\/ ~Q -> ~(P /\\ Q)", IntuitionisticTheorem),
        entry("disjunctive syllogism", "(P \\/ Q) /\\ ~P -> Q", IntuitionisticTheorem),
        entry("double negation of modus ponens", "~~(P -> Q) -> ~~P -> ~~Q", IntuitionisticTheorem),
        entry("currying", "(P /\\ Q -> R) -> P -> Q -> R", IntuitionisticTheorem),
        entry("uncurrying", "(P -> Q -> R) -> P /\\ Q -> R", IntuitionisticTheorem),
        entry("distributivity", "P /\\ (Q \\/ R) -> (P /\\ Q) \\/ (P /\\ R)", IntuitionisticTheorem),
        entry("decidable double negation", "(P \\/ ~P) -> ~~P -> P", IntuitionisticTheorem),
        entry(
            "forall over and",
            "(forall x:D. A(x) /\\ B(x)) -> (forall x:D. A(x)) /\\ (forall x:D. B(x))",
            IntuitionisticTheorem,
        ),
        entry(
            "exists over or",
            "(exists x:D. A(x) \\/ B(x)) -> (exists x:D. A(x)) \\/ (exists x:D. B(x))",
            IntuitionisticTheorem,
        ),
        entry("no witness", "~(exists x:D. A(x)) -> forall x:D. ~A(x)", IntuitionisticTheorem),
        entry("all fail", "(forall x:D. ~A(x)) -> ~(exists x:D. A(x))", IntuitionisticTheorem),
        entry("a failure refutes all", "(exists x:D. ~A(x)) -> ~(forall x:D. A(x))", IntuitionisticTheorem),
        entry(
            "monotone existence",
            "(forall x:D. A(x) -> B(x)) -> (exists x:D. A(x)) -> exists x:D. B(x)",
            IntuitionisticTheorem,
        ),
        entry("reflexive witness", "forall x:D. exists y:D. (E(x, y) -> E(x, y))", IntuitionisticTheorem),
        entry(
            "quantifier swap",
            "(exists x:D. forall y:D. E(x, y)) -> forall y:D. exists x:D. E(x, y)",
            IntuitionisticTheorem,
        ),
        entry(
            "double negation through forall",
            "~~(forall x:D. A(x)) -> forall x:D. ~~A(x)",
            IntuitionisticTheorem,
        ),
        entry(
            "constant antecedent",
            "(P -> forall x:D. A(x)) -> forall x:D. (P -> A(x))",
            IntuitionisticTheorem,
        ),
        entry(
            "constant conjunct",
            "(exists x:D. P /\\ A(x)) -> P /\\ (exists x:D. A(x))",
            IntuitionisticTheorem,
        ),
        entry("excluded middle", "P \\/ ~P", ClassicalOnly),
        entry("double negation elimination", "~~P -> P", ClassicalOnly),
        entry("peirce", "((P -> Q) -> P) -> P", ClassicalOnly),
        entry("markov instance", "~~(exists x:D. A(x)) -> exists x:D. A(x)", ClassicalOnly),
        entry("de morgan forall", "~(forall x:D. A(x)) -> exists x:D. ~A(x)", ClassicalOnly),
        entry("weak de morgan", "~(P /\\ Q) -> ~P \\/ ~Q", ClassicalOnly),
        entry("linearity", "(P -> Q) \\/ (Q -> P)", ClassicalOnly),
        CorpusEntry {
            name: "trichotomy",
            text: "forall b:R. b < 0 \\/ b = 0 \\/ b > 0",
            class: ClassicalOnly,
            language: Language::Order,
        },
        entry("implication", "P -> Q", NonTheorem),
        entry("some letter", "P \\/ Q", NonTheorem),
        entry("converse", "(P -> Q) -> Q -> P", NonTheorem),
        entry("someone is everything", "exists x:D. forall y:D. E(x, y)", NonTheorem),
    ]
}

pub fn kripke_signature() -> Signature {
    Signature::propositional_first_order(SortKind::Custom("D".into()))
}

pub fn sheaf_signature() -> Signature {
    Signature::propositional_first_order(SortKind::Section)
}

pub fn order_signature() -> Signature {
    section_signature(&["a"])
}

impl CorpusEntry {
    pub fn formula_for(&self, target: CorpusTarget) -> Option<Formula> {
        let sig = match (self.language, target) {
            (Language::Letters, CorpusTarget::Kripke) => kripke_signature(),
            (Language::Letters, CorpusTarget::Sheaf) => sheaf_signature(),
            (Language::Order, CorpusTarget::Sheaf) => order_signature(),
            (Language::Order, CorpusTarget::Kripke) => return None,
        };
        Some(parse(self.text, &sig).expect("corpus entries parse"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusTarget {
    Kripke,
    Sheaf,
}

impl FromStr for CorpusTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "kripke" => Ok(CorpusTarget::Kripke),
            "sheaf" => Ok(CorpusTarget::Sheaf),
            other => Err(format!("unknown corpus target `{other}` (expected kripke or sheaf)")),
        }
    }
}

impl fmt::Display for CorpusTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusTarget::Kripke => "kripke",
            CorpusTarget::Sheaf => "sheaf",
        })
    }
}

/// A model that comes with the corpus, used to refute the classical-only entries.
pub enum Bundled {
    Kripke(&'static str, KripkeModel),
    Sheaf(&'static str, SheafModel),
}

impl Bundled {
    pub fn name(&self) -> &'static str {
        match self {
            Bundled::Kripke(n, _) | Bundled::Sheaf(n, _) => n,
        }
    }

    /// Whether some world or the whole space fails to force `entry`.
    pub fn refutes(&self, entry: &CorpusEntry) -> bool {
        match self {
            Bundled::Kripke(_, m) => entry.formula_for(CorpusTarget::Kripke).is_some_and(|f| {
                m.worlds
                    .iter()
                    .any(|w| kripke::eval(m, w, &f, &kripke::Env::new()) == Ok(false))
            }),
            Bundled::Sheaf(_, m) => {
                let Some(f) = entry.formula_for(CorpusTarget::Sheaf) else { return false };
                if entry.language == Language::Letters && !m.predicates.contains_key("P") {
                    return false;
                }
                m.forces(m.space.full(), &f, &sheaf::Env::new()) == Ok(false)
            }
        }
    }
}

fn world_set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The two-world chain with `P` and `A(d0)` appearing only at the top.
pub fn kripke_chain() -> KripkeModel {
    let mut m = KripkeModel::two_chain();
    m.predicates.insert(
        "A".into(),
        BTreeMap::from([("w1".to_string(), BTreeSet::from([vec!["d0".to_string()]]))]),
    );
    m
}

/// A chain whose domain grows: `d1` appears at `w1` and never satisfies `A`.
pub fn kripke_growing_domain() -> KripkeModel {
    let a: BTreeSet<Vec<String>> = BTreeSet::from([vec!["d0".to_string()]]);
    KripkeModel {
        worlds: vec!["w0".into(), "w1".into()],
        order: vec![("w0".into(), "w1".into())],
        domains: BTreeMap::from([("w0".into(), world_set(&["d0"])), ("w1".into(), world_set(&["d0", "d1"]))]),
        predicates: BTreeMap::from([(
            "A".to_string(),
            BTreeMap::from([("w0".to_string(), a.clone()), ("w1".to_string(), a)]),
        )]),
    }
}

/// A root below two incomparable worlds, `P` at one and `Q` at the other.
pub fn kripke_vee() -> KripkeModel {
    let unit = || BTreeSet::from([Vec::new()]);
    KripkeModel {
        worlds: vec!["w0".into(), "w1".into(), "w2".into()],
        order: vec![("w0".into(), "w1".into()), ("w0".into(), "w2".into())],
        domains: ["w0", "w1", "w2"].iter().map(|w| (w.to_string(), world_set(&["d0"]))).collect(),
        predicates: BTreeMap::from([
            ("P".to_string(), BTreeMap::from([("w1".to_string(), unit())])),
            ("Q".to_string(), BTreeMap::from([("w2".to_string(), unit())])),
        ]),
    }
}

/// Sierpiński space with `P` on the open point and one section `s0`
/// satisfying `A` there.
pub fn sheaf_sierpinski() -> SheafModel {
    let mut m = SheafModel::sierpinski();
    m.sections.insert("s0".into(), vec![0, 0]);
    m.predicates.insert(
        "A".into(),
        sheaf::PredTable::Entries(BTreeSet::from([(0b01, vec!["s0".to_string()])])),
    );
    m
}

pub fn bundled_models() -> Vec<Bundled> {
    vec![
        Bundled::Kripke("kripke two-chain", kripke_chain()),
        Bundled::Kripke("kripke growing domain", kripke_growing_domain()),
        Bundled::Kripke("kripke vee", kripke_vee()),
        Bundled::Sheaf("sheaf sierpinski", sheaf_sierpinski()),
        Bundled::Sheaf("sheaf khalimsky sign", SheafModel::trichotomy(2)),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremFailure {
    pub entry: String,
    pub model_seed: u64,
    /// The world or open where the entry is not forced.
    pub location: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalResult {
    pub entry: String,
    pub refuted_by: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub target: CorpusTarget,
    pub models: usize,
    pub seed: u64,
    pub theorem_checks: usize,
    pub failures: Vec<TheoremFailure>,
    pub classical: Vec<ClassicalResult>,
    /// For each non-theorem, how many generated models refute it somewhere.
    pub non_theorems: BTreeMap<String, usize>,
    pub errors: Vec<String>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty() && self.classical.iter().all(|c| !c.refuted_by.is_empty())
    }
}

/// Where a generated model fails to force `f`, if anywhere.
fn first_failure(target: CorpusTarget, seed: u64, f: &Formula) -> Result<Option<String>, String> {
    match target {
        CorpusTarget::Kripke => {
            let m = kripke::random_model(seed, 4, 3);
            for w in &m.worlds {
                if !kripke::eval(&m, w, f, &kripke::Env::new()).map_err(|e| e.to_string())? {
                    return Ok(Some(format!("world {w}")));
                }
            }
            Ok(None)
        }
        CorpusTarget::Sheaf => {
            let m = sheaf::random_model(seed);
            for &u in &m.space.opens {
                if !m.forces(u, f, &sheaf::Env::new()).map_err(|e| e.to_string())? {
                    return Ok(Some(format!("open {}", m.space.show(u))));
                }
            }
            Ok(None)
        }
    }
}

/// Checks every theorem at every world or open of `n_models` generated
/// models (seeds `seed`, `seed + 1`, ...) and every classical-only entry
/// against the bundled counter-models.
pub fn run_corpus(target: CorpusTarget, n_models: usize, seed: u64) -> CorpusReport {
    let entries = corpus();
    let mut report = CorpusReport {
        target,
        models: n_models,
        seed,
        theorem_checks: 0,
        failures: Vec::new(),
        classical: Vec::new(),
        non_theorems: BTreeMap::new(),
        errors: Vec::new(),
    };
    let formulas: Vec<(&CorpusEntry, Formula)> = entries
        .iter()
        .filter_map(|e| e.formula_for(target).map(|f| (e, f)))
        .collect();
    for k in 0..n_models as u64 {
        let model_seed = seed.wrapping_add(k);
        for (e, f) in &formulas {
            let outcome = first_failure(target, model_seed, f);
            match (e.class, outcome) {
                (_, Err(err)) => report.errors.push(format!("{} on model {model_seed}: {err}", e.name)),
                (IntuitionisticTheorem, Ok(found)) => {
                    report.theorem_checks += 1;
                    if let Some(location) = found {
                        report.failures.push(TheoremFailure {
                            entry: e.name.to_string(),
                            model_seed,
                            location,
                        });
                    }
                }
                (NonTheorem, Ok(found)) => {
                    *report.non_theorems.entry(e.name.to_string()).or_default() += usize::from(found.is_some());
                }
                (ClassicalOnly, Ok(_)) => {}
            }
        }
    }
    let bundled = bundled_models();
    for e in entries.iter().filter(|e| e.class == ClassicalOnly) {
        report.classical.push(ClassicalResult {
            entry: e.name.to_string(),
            refuted_by: bundled.iter().filter(|m| m.refutes(e)).map(|m| m.name().to_string()).collect(),
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c.iter().filter(|e| e.class == IntuitionisticTheorem).count() >= 25);
        assert!(c.iter().filter(|e| e.class == ClassicalOnly).count() >= 5);
        for e in &c {
            assert!(e.formula_for(CorpusTarget::Sheaf).is_some());
        }
    }

    #[test]
    fn bundled_models_are_valid() {
        for b in bundled_models() {
            match b {
                Bundled::Kripke(n, m) => assert!(kripke::validate(&m).is_empty(), "{n}"),
                Bundled::Sheaf(n, m) => assert!(sheaf::validate_model(&m).is_empty(), "{n}"),
            }
        }
    }

    #[test]
    fn every_classical_entry_has_a_counter_model() {
        let r = run_corpus(CorpusTarget::Kripke, 3, 0);
        for c in &r.classical {
            assert!(!c.refuted_by.is_empty(), "{}", c.entry);
        }
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn bundled_models_force_the_theorems() {
        for b in bundled_models() {
            for e in corpus().iter().filter(|e| e.class == IntuitionisticTheorem) {
                assert!(!b.refutes(e), "{} refutes {}", b.name(), e.name);
            }
        }
    }
}
