//! Exact derivatives from evaluation at x0 + ε.

use topos_lens::zariski::linalg::{ratio, show_rational};
use topos_lens::zariski::{derivative, dual_numbers, micro_affinity_check, DualPoly};

fn main() {
    let polys = ["x^3", "3x^2 - 2x + 1/2", "x^6 - 1/3x^4 + x", "7"];
    let points = [ratio(2, 1), ratio(-1, 2), ratio(5, 3)];
    for text in polys {
        let p = DualPoly::parse(text).unwrap();
        println!("p = {p}, p' = {}, p'' = {}", p.derivative(), p.derivative().derivative());
        for x0 in &points {
            let d1 = derivative(&p, x0, 1).unwrap();
            let d2 = derivative(&p, x0, 2).unwrap();
            let (_, affine) = micro_affinity_check(&p, x0);
            println!(
                "  at {:>4}: p(x0 + ε) = {:<24} p' = {:<8} p'' = {:<8} affine: {affine}",
                show_rational(x0),
                dual_numbers(2).show(&p.eval_dual(x0, 2)),
                show_rational(&d1),
                show_rational(&d2)
            );
        }
    }
}
