//! Excluded middle and double negation elimination on small Kripke models.

use topos_lens::cli::corpus::{kripke_growing_domain, kripke_vee};
use topos_lens::formula::{parse, Signature, SortKind};
use topos_lens::kripke::{eval, random_model, validate, Env, KripkeModel};

fn main() {
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    let models = [
        ("two-chain", KripkeModel::two_chain()),
        ("vee", kripke_vee()),
        ("growing domain", kripke_growing_domain()),
        ("random seed 7", random_model(7, 4, 3)),
    ];
    let formulas = [
        "P \\/ ~P",
        "~~P -> P",
        "~~(P \\/ ~P)",
        "~(P /\\ Q) -> ~P \\/ ~Q",
        "~(forall x:D. A(x)) -> exists x:D. ~A(x)",
    ];
    for (name, m) in &models {
        assert!(validate(m).is_empty());
        println!("{name}: worlds {:?}", m.worlds);
        for text in formulas {
            let f = parse(text, &sig).unwrap();
            let row: Vec<String> = m
                .worlds
                .iter()
                .map(|w| format!("{w}={}", eval(m, w, &f, &Env::new()).unwrap()))
                .collect();
            println!("  {text:<45} {}", row.join(" "));
        }
    }
}
