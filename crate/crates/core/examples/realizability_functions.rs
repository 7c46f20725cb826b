//! Realizers quantifying over functions: the echo realizer, unbounded search,
//! and a bounded search that finds nothing.

use topos_lens::formula::{parse, Signature};
use num_bigint::BigUint;
use topos_lens::realizability::{
    function_with_zeros, library_realizer, realizes, search_realizer, Bounds, Budget, Code, Machine,
};

fn main() {
    let sig = Signature::arithmetic();
    let f = |t: &str| parse(t, &sig).unwrap();

    let echo = library_realizer("echo_ct").unwrap();
    let v = realizes(&echo, &f("forall f:N^N. exists e:N. Computes(e, f)"), Budget(10_000), Bounds::new(20)).unwrap();
    println!("echo_ct: {}", serde_json::to_string(&v).unwrap());

    let markov = library_realizer("markov_search").unwrap();
    for zeros in [vec![5u64], vec![40, 12], vec![0]] {
        let g = function_with_zeros(&zeros);
        // markov_search·g takes any realizer of the premise, then ·0 projects the witness
        let mut m = Machine::new();
        let b = Budget(100_000);
        let zero = BigUint::from(0u8);
        let out = m
            .apply(&markov, &g.0, b)
            .and_then(|r| m.apply(&Code(r), &zero, b))
            .and_then(|p| m.apply(&Code(p), &zero, b));
        println!("markov_search on zeros {zeros:?}: {out:?}");
    }
    let v = realizes(
        &markov,
        &f("forall f:N^N. ~~(exists n:N. f(n) = 0) -> exists n:N. f(n) = 0"),
        Budget(100_000),
        Bounds::new(20),
    )
    .unwrap();
    println!("markov_search realized: {}", v.is_realized());

    let r = search_realizer(
        &f("forall f:N^N. (forall n:N. f(n) = 0) \\/ ~(forall n:N. f(n) = 0)"),
        300,
        Budget(10_000),
        Bounds::new(10),
    );
    println!("zero test: {} ({} indices)", r.report, r.examined);
}
