//! Library realizers for decidability of primality and unboundedness of primes.

use topos_lens::formula::{parse, Signature};
use num_bigint::BigUint;
use topos_lens::realizability::{library_realizer, primality_decider, realizes, Bounds, Budget, Code, Machine};

/// `(e·n)·0`: the tag or witness component of what `e` returns on `n`.
fn first(m: &mut Machine, e: &Code, n: u64) -> BigUint {
    let pair = m.apply(e, &BigUint::from(n), Budget(1_000_000)).unwrap();
    m.apply(&Code(pair), &BigUint::from(0u8), Budget(1_000_000)).unwrap()
}

fn main() {
    let sig = Signature::arithmetic();
    let mut m = Machine::new();
    let decider = Code::of(&primality_decider());
    let or_not = library_realizer("prime_or_not").unwrap();
    let next = library_realizer("next_prime").unwrap();
    for n in [0u64, 1, 2, 9, 97, 1001] {
        let d = m.apply(&decider, &BigUint::from(n), Budget(1_000_000)).unwrap();
        println!("decider·{n} = {d}, disjunct tag (prime_or_not·{n})·0 = {}", first(&mut m, &or_not, n));
    }
    for n in [0u64, 10, 100, 1000] {
        println!("(next_prime·{n})·0 = {}", first(&mut m, &next, n));
    }
    let cases = [
        ("prime_or_not", "forall n:N. Prime(n) \\/ ~Prime(n)", 2_000),
        ("next_prime", "forall n:N. exists p:N. n < p /\\ Prime(p)", 300),
        ("next_prime", "forall n:N. Prime(n) \\/ ~Prime(n)", 20),
    ];
    for (name, text, bound) in cases {
        let f = parse(text, &sig).unwrap();
        let e = library_realizer(name).unwrap();
        let v = realizes(&e, &f, Budget(1_000_000), Bounds::new(bound)).unwrap();
        println!("{name} ⊩ {text}: realized {} refuted {}", v.is_realized(), v.is_refuted());
    }
}
