//! Parsing, printing and random generation of formulas.

use topos_lens::formula::{free_vars, parse, print, random_formula, Signature, SortKind};

fn main() {
    let ring = Signature::ring();
    let f = parse("forall x:R. (~(x = 0) -> exists y:R. x*y = 1)", &ring).unwrap();
    println!("{}", print(&f));
    println!("{f:?}\n");

    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    for seed in 0..8 {
        let g = random_formula(&sig, seed, 4);
        let text = print(&g);
        assert_eq!(parse(&text, &sig).unwrap(), g);
        println!("{seed}: {text}   free: {:?}", free_vars(&g).iter().map(|v| &v.name).collect::<Vec<_>>());
    }
}
