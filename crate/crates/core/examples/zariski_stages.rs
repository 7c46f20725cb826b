//! Quotients, localizations, idempotents and partitions of unity at small stages.

use topos_lens::zariski::linalg::{q, ratio};
use topos_lens::zariski::{
    covering_partitions, dual_numbers, fitting_idempotent, localize_at, quotient_by, split_quadratic, try_invert, Stage,
};

fn main() {
    let d = dual_numbers(2);
    let x = vec![q(2), q(3)];
    let inv = try_invert(&d, &x).unwrap();
    println!("({})⁻¹ = {} in {}", d.show(&x), d.show(&inv), Stage::new(d.clone()).describe());
    println!("eps invertible: {}", try_invert(&d, &d.basis_vector(1)).is_some());
    println!("quotient by eps: dim {}", quotient_by(&d, &d.basis_vector(1)).dim());
    println!("localized at eps: dim {}", localize_at(&d, &d.basis_vector(1)).dim());
    println!("localized at 1 + eps: dim {}", localize_at(&d, &[q(1), q(1)]).dim());

    let a = split_quadratic();
    let xm1 = vec![q(-1), q(1)];
    let e = fitting_idempotent(&a, &xm1);
    println!("\n{}: idempotent for x - 1 is {}", Stage::new(a.clone()).describe(), a.show(&e));
    println!("localized at (1 + x)/2: dim {}", localize_at(&a, &[ratio(1, 2), ratio(1, 2)]).dim());
    let pool = vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 2), ratio(-1, 2)]];
    for c in covering_partitions(&a, &pool, 2) {
        let parts: Vec<String> = c.parts.iter().map(|p| format!("({})", a.show(p))).collect();
        let dims: Vec<usize> = c.localizations.iter().map(|l| l.dim()).collect();
        println!("partition 1 = {}, local pieces of dimension {dims:?}", parts.join(" + "));
    }
}
