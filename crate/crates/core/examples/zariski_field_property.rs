//! The field property at several finite-dimensional stages, with a transcript.

use topos_lens::formula::{parse, Signature, Sort};
use topos_lens::zariski::{dual_numbers, forces_zar, split_quadratic, two_infinitesimals, FinDimAlgebra, PoolPolicy, Stage};

fn main() {
    let field = parse("forall x:R. (~(x = 0) -> exists y:R. x*y = 1)", &Signature::ring()).unwrap();
    let stages = [
        FinDimAlgebra::rationals(),
        dual_numbers(2),
        dual_numbers(3),
        two_infinitesimals(),
        split_quadratic(),
    ];
    for a in stages {
        let s = Stage::new(a);
        let v = forces_zar(&s, &field, 2, &PoolPolicy::default()).unwrap();
        println!("{:<28} forced: {}", s.describe(), v.is_forced());
    }

    let verbose = forces_zar(&Stage::new(dual_numbers(2)), &field, 1, &PoolPolicy::default()).unwrap();
    println!("\ntranscript at Q[eps]/(eps^2), depth 1:");
    for line in verbose.transcript().iter().take(25) {
        println!("  {line}");
    }

    // ε itself is nonzero in no useful sense: it is not invertible, yet not provably zero
    let eps = dual_numbers(2).basis_vector(1);
    let s = Stage::new(dual_numbers(2)).with_constant("e", eps);
    let sig = Signature::ring().with_constant("e", Sort::ring());
    for text in ["exists y:R. e*y = 1", "e = 0", "~(e = 0)", "~~(e = 0)"] {
        let v = forces_zar(&s, &parse(text, &sig).unwrap(), 2, &PoolPolicy::default()).unwrap();
        println!("{text:<22} forced {:<5} refuted {}", v.is_forced(), v.is_refuted());
    }
}
