//! Invariants that cut across modules.

use proptest::prelude::*;

use topos_lens::formula::{parse, print, random_formula, Formula, Signature, SortKind};
use topos_lens::kripke::{self, random_model};
use topos_lens::sheaf::{self, is_subset};
use topos_lens::translate::{translate, Target, TranslationStyle};

fn letters() -> Signature {
    Signature::propositional_first_order(SortKind::Custom("D".into()))
}

fn sections() -> Signature {
    Signature::propositional_first_order(SortKind::Section)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kripke_truth_persists_upward(model_seed in 0u64..10_000, formula_seed in 0u64..10_000) {
        let m = random_model(model_seed, 4, 3);
        let f = random_formula(&letters(), formula_seed, 4);
        for w in &m.worlds {
            if kripke::eval(&m, w, &f, &kripke::Env::new()).unwrap() {
                for v in m.worlds.iter().filter(|v| m.leq(w, v)) {
                    prop_assert!(kripke::eval(&m, v, &f, &kripke::Env::new()).unwrap());
                }
            }
        }
    }

    #[test]
    fn sheaf_forcing_restricts_and_glues(model_seed in 0u64..10_000, formula_seed in 0u64..10_000) {
        let m = sheaf::random_model(model_seed);
        let f = random_formula(&sections(), formula_seed, 4);
        let env = sheaf::Env::new();
        let forced: Vec<_> = m.space.opens.iter().copied().filter(|&u| m.forces(u, &f, &env).unwrap()).collect();
        for &u in &forced {
            for v in m.space.subopens(u) {
                prop_assert!(forced.contains(&v));
            }
        }
        // the union of forcing opens forces too
        let union = forced.iter().fold(0, |a, b| a | b);
        prop_assert!(m.forces(union, &f, &env).unwrap());
        prop_assert!(forced.iter().all(|&u| is_subset(u, union)));
    }

    #[test]
    fn double_negation_of_a_kripke_truth_holds(model_seed in 0u64..10_000, formula_seed in 0u64..10_000) {
        let m = random_model(model_seed, 4, 3);
        let f = random_formula(&letters(), formula_seed, 3);
        let nn = Formula::not(Formula::not(f.clone()));
        for w in &m.worlds {
            if kripke::eval(&m, w, &f, &kripke::Env::new()).unwrap() {
                prop_assert!(kripke::eval(&m, w, &nn, &kripke::Env::new()).unwrap());
            }
        }
    }

    #[test]
    fn printing_is_stable_and_translation_deterministic(seed in 0u64..100_000) {
        let sig = Signature::ring();
        let f = random_formula(&sig, seed, 5);
        let text = print(&f);
        let g = parse(&text, &sig).unwrap();
        prop_assert_eq!(print(&g), text);
        let style = TranslationStyle::new(Target::Zariski);
        prop_assert_eq!(translate(&f, &style).unwrap(), translate(&g, &style).unwrap());
    }
}
