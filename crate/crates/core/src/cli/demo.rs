//! Short runnable demonstrations, each printing the translated clause it is
//! about and what the evaluator concluded.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::formula::{parse, Formula, Signature};
use crate::kripke::{self, KripkeModel};
use crate::realizability::{self as eff, Budget, Bounds};
use crate::sheaf::{self, all_topologies, is_dense, PredTable, SheafModel};
use crate::translate::{translate, Target, TranslationStyle};
use crate::zariski::{self as zar, linalg, DualPoly, PoolPolicy, Stage};

use super::load;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DemoOutcome {
    pub pass: bool,
    pub transcript: Vec<String>,
}

impl DemoOutcome {
    fn line(&mut self, s: impl Into<String>) {
        self.transcript.push(s.into());
    }

    fn block(&mut self, text: &str) {
        self.transcript.extend(text.lines().map(|l| format!("  {l}")));
    }

    fn translation(&mut self, f: &Formula, target: Target) {
        match translate(f, &TranslationStyle::new(target)) {
            Ok(t) => {
                self.line(format!("{target} reading:"));
                self.block(&t);
            }
            Err(e) => self.line(format!("no {target} reading: {e}")),
        }
    }
}

pub struct DemoEntry {
    pub name: &'static str,
    pub topic: &'static str,
    pub description: &'static str,
    pub run: fn() -> DemoOutcome,
}

pub fn demos() -> Vec<DemoEntry> {
    vec![
        DemoEntry {
            name: "lem-kripke",
            topic: "kripke",
            description: "excluded middle and double negation elimination fail at the root of a two-world chain",
            run: lem_kripke,
        },
        DemoEntry {
            name: "lem-sierpinski",
            topic: "sheaf",
            description: "excluded middle holds only on the open point of Sierpiński space",
            run: lem_sierpinski,
        },
        DemoEntry {
            name: "dense-open",
            topic: "sheaf",
            description: "¬¬P is forced exactly when P is forced on a dense open, over every topology on three points",
            run: dense_open,
        },
        DemoEntry {
            name: "trichotomy",
            topic: "sheaf",
            description: "a section crossing zero is not globally negative, zero or positive",
            run: trichotomy,
        },
        DemoEntry {
            name: "prime-or-not",
            topic: "realizability",
            description: "a primality decider realizes decidability of Prime up to a bound",
            run: prime_or_not,
        },
        DemoEntry {
            name: "next-prime",
            topic: "realizability",
            description: "a realizer producing a larger prime for every n",
            run: next_prime,
        },
        DemoEntry {
            name: "church-turing",
            topic: "realizability",
            description: "every function on naturals has a code, realized by passing the code through",
            run: church_turing,
        },
        DemoEntry {
            name: "markov",
            topic: "realizability",
            description: "unbounded search realizes Markov's principle",
            run: markov,
        },
        DemoEntry {
            name: "zero-test-search",
            topic: "realizability",
            description: "a bounded search finds no realizer deciding whether a function is identically zero",
            run: zero_test_search,
        },
        DemoEntry {
            name: "field-property",
            topic: "zariski",
            description: "nonzero elements are invertible at every stage tried, nilpotents included",
            run: field_property,
        },
        DemoEntry {
            name: "invertible-duals",
            topic: "zariski",
            description: "a + bε is invertible in the dual numbers exactly when a ≠ 0",
            run: invertible_duals,
        },
        DemoEntry {
            name: "derivative",
            topic: "zariski",
            description: "derivatives read off (x + ε)-evaluation",
            run: derivative,
        },
        DemoEntry {
            name: "micro-affinity",
            topic: "zariski",
            description: "every polynomial is affine on first-order infinitesimals",
            run: micro_affinity,
        },
    ]
}

pub fn find(name: &str) -> Option<DemoEntry> {
    demos().into_iter().find(|d| d.name == name)
}

pub fn summarize_eff(v: &eff::Verdict) -> String {
    match v {
        eff::Verdict::RealizedBounded { realizer, bounds } => format!(
            "realized up to the bounds: n ≤ {}, {} machines, budget {}, {} instances (realizer {})",
            bounds.nat_bound,
            bounds.machines_sampled,
            bounds.budget,
            bounds.instances,
            short_code(realizer)
        ),
        eff::Verdict::RefutedWitness { counterexample, .. } => {
            format!("refuted: {} [{}]", counterexample.failure, counterexample.trail.join(", "))
        }
        eff::Verdict::Unknown { reason, .. } => format!("unknown: {reason}"),
    }
}

/// Codes get long; show the ends.
pub fn short_code(c: &eff::Code) -> String {
    let s = c.to_string();
    if s.len() <= 24 {
        s
    } else {
        format!("{}…{} ({} digits)", &s[..10], &s[s.len() - 10..], s.len())
    }
}

pub fn summarize_zar(v: &zar::Verdict) -> String {
    match v {
        zar::Verdict::ForcedBounded {
            exact,
            depth,
            stages_explored,
            ..
        } => {
            if *exact {
                format!("forced ({stages_explored} stages explored)")
            } else {
                format!("forced up to depth {depth} ({stages_explored} stages explored)")
            }
        }
        zar::Verdict::RefutedWitness { chain, .. } => format!("refuted along {}", chain.join(" → ")),
        zar::Verdict::Unknown { reason, .. } => format!("unknown: {reason}"),
    }
}

fn arith(text: &str) -> Formula {
    parse(text, &Signature::arithmetic()).expect("demo formulas parse")
}

fn lem_kripke() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let m = KripkeModel::two_chain();
    let sig = load::kripke_signature(&m);
    out.translation(&Formula::or(Formula::prop("P"), Formula::not(Formula::prop("P"))), Target::Sheaf);
    out.line("worlds w0 ≤ w1, P holds at w1 only");
    let mut pass = true;
    for (text, expect_root) in [("P \\/ ~P", false), ("~~P -> P", false), ("~~(P \\/ ~P)", true)] {
        let f = parse(text, &sig).expect("demo formulas parse");
        for w in &m.worlds {
            let v = kripke::eval(&m, w, &f, &kripke::Env::new()).unwrap_or(false);
            out.line(format!("{w} ⊩ {text}: {v}"));
            if w == "w0" {
                pass &= v == expect_root;
            }
        }
    }
    out.pass = pass;
    out
}

fn lem_sierpinski() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let m = SheafModel::sierpinski();
    let sig = load::sheaf_signature(&m);
    let f = parse("P \\/ ~P", &sig).expect("demo formulas parse");
    out.translation(&f, Target::Sheaf);
    let env = sheaf::Env::new();
    for &u in &m.space.opens {
        out.line(format!("{} ⊩ P \\/ ~P: {}", m.space.show(u), m.forces(u, &f, &env).unwrap_or(false)));
    }
    let largest = m.largest_open_forcing(&f, &env).unwrap_or(0);
    out.line(format!("largest open forcing it: {}, dense: {}", m.space.show(largest), is_dense(&m.space, largest)));
    out.pass = m.forces(m.space.full(), &f, &env) == Ok(false) && largest == 0b01;
    out
}

/// `P` interpreted as the open `u`, with entries on every nonempty subopen.
pub fn with_p_on(space: &sheaf::FiniteSpace, u: sheaf::Open) -> SheafModel {
    let mut m = SheafModel::new(space.clone());
    let entries: BTreeSet<_> = space.subopens(u).filter(|v| *v != 0).map(|v| (v, Vec::new())).collect();
    m.predicates.insert("P".into(), PredTable::Entries(entries));
    m
}

fn dense_open() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let p = Formula::prop("P");
    out.translation(&Formula::not(Formula::not(p.clone())), Target::Sheaf);
    let (mut cases, mut agree) = (0, 0);
    for n in 1..=3 {
        for space in all_topologies(n) {
            for &u in &space.opens {
                let m = with_p_on(&space, u);
                let lhs = sheaf::double_negation_dense(&m, &p).map(|(b, _)| b);
                let rhs = sheaf::has_dense_forcing_open(&m, &p);
                cases += 1;
                if lhs.is_ok() && lhs == rhs {
                    agree += 1;
                }
            }
        }
        out.line(format!("up to {n} points: {agree}/{cases} cases agree"));
    }
    out.pass = agree == cases;
    out
}

fn trichotomy() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let m = SheafModel::trichotomy(2);
    let sig = load::sheaf_signature(&m);
    let f = parse("a < 0 \\/ a = 0 \\/ a > 0", &sig).expect("demo formulas parse");
    let all = parse("forall b:R. b < 0 \\/ b = 0 \\/ b > 0", &sig).expect("demo formulas parse");
    out.translation(&all, Target::Sheaf);
    out.line(format!("points {}, section a = {:?}", m.space.points.join(" "), m.sections["a"]));
    let env = sheaf::Env::new();
    let largest = m.largest_open_forcing(&f, &env).unwrap_or(0);
    out.line(format!("largest open forcing the instance at a: {}", m.space.show(largest)));
    let whole = m.forces(m.space.full(), &all, &env);
    out.line(format!("X ⊩ forall b. trichotomy: {}", whole.clone().unwrap_or(true)));
    let at_a = m.forces(m.space.full(), &f, &env);
    let not_not = m.forces(m.space.full(), &Formula::not(Formula::not(f.clone())), &env);
    out.line(format!("X ⊩ trichotomy at a: {}", at_a.clone().unwrap_or(true)));
    out.line(format!("X ⊩ ¬¬(trichotomy at a): {}", not_not.clone().unwrap_or(false)));
    out.pass = whole == Ok(false) && at_a == Ok(false) && not_not == Ok(true) && largest != m.space.full();
    out
}

fn prime_or_not() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let f = arith("forall n:N. Prime(n) \\/ ~Prime(n)");
    out.translation(&f, Target::Effective);
    let e = eff::library_realizer("prime_or_not").expect("library realizer");
    let v = eff::realizes(&e, &f, Budget(1_000_000), Bounds::new(1_000));
    out.pass = v.as_ref().is_ok_and(eff::Verdict::is_realized);
    out.line(v.map_or_else(|e| e.to_string(), |v| summarize_eff(&v)));
    out
}

fn next_prime() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let f = arith("forall n:N. exists p:N. n < p /\\ Prime(p)");
    out.translation(&f, Target::Effective);
    let e = eff::library_realizer("next_prime").expect("library realizer");
    let v = eff::realizes(&e, &f, Budget(1_000_000), Bounds::new(200));
    out.pass = v.as_ref().is_ok_and(eff::Verdict::is_realized);
    out.line(v.map_or_else(|e| e.to_string(), |v| summarize_eff(&v)));
    out
}

fn church_turing() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let f = arith("forall f:N^N. exists e:N. Computes(e, f)");
    out.translation(&f, Target::Effective);
    let e = eff::library_realizer("echo_ct").expect("library realizer");
    let v = eff::realizes(&e, &f, Budget(10_000), Bounds::new(20));
    out.pass = v.as_ref().is_ok_and(eff::Verdict::is_realized);
    out.line(v.map_or_else(|e| e.to_string(), |v| summarize_eff(&v)));
    out
}

fn markov() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let f = arith("forall f:N^N. ~~(exists n:N. f(n) = 0) -> exists n:N. f(n) = 0");
    out.translation(&f, Target::Effective);
    let e = eff::library_realizer("markov_search").expect("library realizer");
    let v = eff::realizes(&e, &f, Budget(100_000), Bounds::new(20));
    out.pass = v.as_ref().is_ok_and(eff::Verdict::is_realized);
    out.line(v.map_or_else(|e| e.to_string(), |v| summarize_eff(&v)));
    out
}

fn zero_test_search() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let f = arith("forall f:N^N. (forall n:N. f(n) = 0) \\/ ~(forall n:N. f(n) = 0)");
    out.translation(&f, Target::Effective);
    let r = eff::search_realizer(&f, 300, Budget(10_000), Bounds::new(10));
    out.line(format!("examined {} indices: {}", r.examined, r.report));
    out.pass = r.found.is_none();
    out
}

fn field_property() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let f = parse("forall x:R. (~(x = 0) -> exists y:R. x*y = 1)", &Signature::ring()).expect("demo formulas parse");
    out.translation(&f, Target::Zariski);
    let stages = [
        zar::FinDimAlgebra::rationals(),
        zar::dual_numbers(2),
        zar::dual_numbers(3),
        zar::two_infinitesimals(),
        zar::split_quadratic(),
    ];
    let mut pass = true;
    for a in stages {
        let s = Stage::new(a);
        let v = zar::forces_zar(&s, &f, 2, &PoolPolicy::default());
        pass &= v.as_ref().is_ok_and(zar::Verdict::is_forced);
        out.line(format!(
            "{}: {}",
            s.describe(),
            v.map_or_else(|e| e.to_string(), |v| summarize_zar(&v))
        ));
    }
    out.pass = pass;
    out
}

fn invertible_duals() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let sig = Signature::ring().with_constant("x", crate::formula::Sort::ring());
    out.translation(&parse("exists y:R. x*y = 1", &sig).expect("demo formulas parse"), Target::Zariski);
    let a = zar::dual_numbers(2);
    let mut pass = true;
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            let e = vec![linalg::q(x), linalg::q(y)];
            let inv = a.try_invert(&e);
            pass &= inv.is_some() == (x != 0);
            if let Some(i) = &inv {
                pass &= a.mul(&e, i) == a.one();
                out.line(format!("({})⁻¹ = {}", a.show(&e), a.show(i)));
            } else {
                out.line(format!("{} has no inverse", a.show(&e)));
            }
        }
    }
    out.pass = pass;
    out
}

/// `p(x0 + d) = p(x0) + slope·d` for every `d` with `d² = 0`, as a ring formula.
fn affine_identity(p: &DualPoly, x0: i64, slope: &str) -> Formula {
    let point = format!("({x0} + d)").replace("(-", "(0 - ");
    let lhs = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mut factors: Vec<String> = std::iter::repeat_n(point.clone(), k).collect();
            if !c.is_one() || k == 0 {
                factors.insert(0, format!("({})", linalg::show_rational(c).replace('-', "0 - ")));
            }
            factors.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ");
    let value = linalg::show_rational(&p.eval(&linalg::q(x0))).replace('-', "0 - ");
    let slope = slope.replace('-', "0 - ");
    let text = format!("forall d:R. d*d = 0 -> {} = ({value}) + ({slope})*d", if lhs.is_empty() { "0".into() } else { lhs });
    parse(&text, &Signature::ring()).expect("affine identities parse")
}

fn derivative() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let cube = DualPoly::parse("x^3").expect("demo polynomials parse");
    let identity = affine_identity(&cube, 2, "12");
    out.translation(&identity, Target::Zariski);
    let v = zar::forces_zar(&Stage::new(zar::dual_numbers(2)), &identity, 1, &PoolPolicy::default());
    out.line(format!("at ℚ[ε]/(ε²): {}", v.as_ref().map_or_else(|e| e.to_string(), summarize_zar)));
    let mut pass = v.is_ok_and(|v| v.is_forced());
    for (text, x0) in [("x^3", 2), ("3x^2 - 2x + 1/2", -1), ("x^5 - x", 1)] {
        let p = DualPoly::parse(text).expect("demo polynomials parse");
        let x = linalg::q(x0);
        let d1 = zar::derivative(&p, &x, 1).expect("order 1");
        let d2 = zar::derivative(&p, &x, 2).expect("order 2");
        pass &= d1 == p.derivative().eval(&x) && d2 == p.derivative().derivative().eval(&x);
        out.line(format!(
            "p = {p}: p({x0} + ε) = {}, so p'({x0}) = {}, p''({x0}) = {}",
            zar::dual_numbers(2).show(&p.eval_dual(&x, 2)),
            linalg::show_rational(&d1),
            linalg::show_rational(&d2)
        ));
    }
    out.pass = pass;
    out
}

fn micro_affinity() -> DemoOutcome {
    let mut out = DemoOutcome::default();
    let square = DualPoly::parse("x^2").expect("demo polynomials parse");
    out.translation(&affine_identity(&square, 3, "6"), Target::Zariski);
    let stage = Stage::new(zar::FinDimAlgebra::rationals());
    let wrong = zar::forces_zar(&stage, &affine_identity(&square, 3, "5"), 1, &PoolPolicy::default());
    out.line(format!("with slope 5 instead: {}", wrong.as_ref().map_or_else(|e| e.to_string(), summarize_zar)));
    let mut pass = wrong.is_ok_and(|v| v.is_refuted());
    for text in ["x^2", "x^3 - 4x", "7"] {
        let p = DualPoly::parse(text).expect("demo polynomials parse");
        for x0 in [-1, 0, 2] {
            let (a, ok) = zar::micro_affinity_check(&p, &linalg::q(x0));
            pass &= ok;
            let dual = zar::dual_numbers(2);
            out.line(format!(
                "{p} at {x0} + ε: {}, slope {}, checks: {ok}",
                dual.show(&p.eval_dual(&linalg::q(x0), 2)),
                linalg::show_rational(&a)
            ));
        }
    }
    out.pass = pass;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let names: BTreeSet<_> = demos().iter().map(|d| d.name).collect();
        assert_eq!(names.len(), demos().len());
    }

    #[test]
    fn cheap_demos_pass() {
        for name in ["lem-kripke", "lem-sierpinski", "dense-open", "trichotomy", "invertible-duals", "derivative", "micro-affinity"] {
            let out = (find(name).unwrap().run)();
            assert!(out.pass, "{name}: {:#?}", out.transcript);
        }
    }
}
