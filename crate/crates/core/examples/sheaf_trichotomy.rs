//! A sign section on a Khalimsky interval: trichotomy fails, its double negation holds.

use topos_lens::formula::parse;
use topos_lens::sheaf::{section_signature, Env, SheafModel};

fn main() {
    let m = SheafModel::trichotomy(2);
    let sig = section_signature(&["a"]);
    println!("points {:?}, a = {:?}", m.space.points, m.sections["a"]);
    for &u in &m.space.opens {
        println!("  open {}", m.space.show(u));
    }
    for text in [
        "a < 0 \\/ a = 0 \\/ a > 0",
        "~~(a < 0 \\/ a = 0 \\/ a > 0)",
        "a <= 0 \\/ a >= 0",
        "forall b:R. ~~(b < 0 \\/ b = 0 \\/ b > 0)",
    ] {
        let f = parse(text, &sig).unwrap();
        let u = m.largest_open_forcing(&f, &Env::new()).unwrap();
        println!("{text:<42} forced on X: {:<5}  largest open: {}", m.forces(m.space.full(), &f, &Env::new()).unwrap(), m.space.show(u));
    }
}
