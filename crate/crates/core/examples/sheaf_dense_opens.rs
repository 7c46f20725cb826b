//! Double negation over finite spaces: `X ⊩ ¬¬P` against a dense open forcing `P`.

use topos_lens::cli::demo::with_p_on;
use topos_lens::formula::Formula;
use topos_lens::sheaf::{all_topologies, double_negation_dense, has_dense_forcing_open, is_dense, SheafModel};

fn main() {
    let p = Formula::prop("P");
    let m = SheafModel::sierpinski();
    let (forced, u) = double_negation_dense(&m, &p).unwrap();
    println!("Sierpiński: X ⊩ ¬¬P is {forced}, P forced on {}", m.space.show(u.unwrap()));
    let lem = Formula::or(p.clone(), Formula::not(p.clone()));
    println!("Sierpiński: X ⊩ P ∨ ¬P is {}", m.forces(m.space.full(), &lem, &Default::default()).unwrap());

    for n in 1..=4 {
        let spaces = all_topologies(n);
        let (mut cases, mut dense) = (0, 0);
        for space in &spaces {
            for &u in &space.opens {
                let m = with_p_on(space, u);
                let (lhs, _) = double_negation_dense(&m, &p).unwrap();
                assert_eq!(lhs, has_dense_forcing_open(&m, &p).unwrap());
                cases += 1;
                dense += usize::from(is_dense(space, u));
            }
        }
        println!("{n} points: {} topologies, {cases} choices of P, {dense} with ¬¬P forced", spaces.len());
    }
}
