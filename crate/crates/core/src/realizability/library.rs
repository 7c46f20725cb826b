//! Hand-written realizers.
//!
//! Realizers for `∀n. ∃m. φ` and `∀n. φ ∨ ψ` return, on input `n`, a pair
//! `λi. ifz i then witness else proof`, so the witness of `e·n` is `(e·n)·0`.


use super::machine::build::*;
use super::machine::{Code, PrimOp, Program};
use super::RealizeError;

pub const NAMES: [&str; 4] = ["prime_or_not", "next_prime", "echo_ct", "markov_search"];

/// `λk. 1` if `k` is prime, else `0`, by trial division up to the square root.
fn is_prime() -> Named {
    let trial = fix(
        "try",
        lam(
            "d",
            ifz(
                prim(PrimOp::Sub, prim(PrimOp::Mul, v("d"), v("d")), v("k")),
                ifz(prim(PrimOp::Mod, v("k"), v("d")), n(0), app(v("try"), succ(v("d")))),
                n(1),
            ),
        ),
    );
    lam("k", ifz(pred(v("k")), n(0), app(trial, n(2))))
}

fn pair(a: Named, b: Named) -> Named {
    lam("i", ifz(v("i"), a, b))
}

/// Realizes `∧` of two decidable atoms: both projections halt.
fn trivial_pair() -> Named {
    lam("j", n(0))
}

pub fn primality_decider() -> Program {
    compile(&is_prime())
}

fn prime_or_not() -> Named {
    // the left disjunct is chosen, with tag 0, exactly when n is prime
    lam("n", pair(prim(PrimOp::Sub, n(1), app(is_prime(), v("n"))), n(0)))
}

fn next_prime() -> Named {
    let search = fix(
        "search",
        lam("k", ifz(app(is_prime(), v("k")), app(v("search"), succ(v("k"))), v("k"))),
    );
    lam("n", pair(app(search, succ(v("n"))), trivial_pair()))
}

fn echo_ct() -> Named {
    lam("r", pair(v("r"), n(0)))
}

fn markov_search() -> Named {
    let search = fix(
        "search",
        lam("k", ifz(prim(PrimOp::Run, v("r"), v("k")), v("k"), app(v("search"), succ(v("k"))))),
    );
    lam("r", lam("w", pair(app(search, n(0)), n(0))))
}

pub fn library_program(name: &str) -> Result<Program, RealizeError> {
    let t = match name {
        "prime_or_not" => prime_or_not(),
        "next_prime" => next_prime(),
        "echo_ct" => echo_ct(),
        "markov_search" => markov_search(),
        _ => return Err(RealizeError::UnknownName(name.to_string())),
    };
    Ok(compile(&t))
}

pub fn library_realizer(name: &str) -> Result<Code, RealizeError> {
    library_program(name).map(|p| Code::of(&p))
}

/// Code of `λx. c`.
pub fn constant_function(c: u64) -> Code {
    Code::of(&compile(&lam("x", n(c))))
}

/// Code of a total function with zeros exactly at the given points (and `1`
/// or more elsewhere): `Π |x - z|`.
pub fn function_with_zeros(zeros: &[u64]) -> Code {
    let dist = |z: u64| prim(PrimOp::Add, prim(PrimOp::Sub, v("x"), n(z)), prim(PrimOp::Sub, n(z), v("x")));
    let body = zeros
        .iter()
        .map(|&z| dist(z))
        .reduce(|a, b| prim(PrimOp::Mul, a, b))
        .unwrap_or(n(1));
    Code::of(&compile(&lam("x", body)))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizability::machine::{Budget, Machine};
    use crate::realizability::numbering;
    use num_bigint::BigUint;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn library_programs_round_trip_through_codes() {
        for name in NAMES {
            let p = library_program(name).unwrap();
            assert_eq!(numbering::decode(&numbering::encode(&p)), p, "{name}");
        }
        assert!(matches!(library_realizer("nope"), Err(RealizeError::UnknownName(_))));
    }

    #[test]
    fn primality_decider_agrees_with_trial_division() {
        let e = Code::of(&primality_decider());
        let mut m = Machine::new();
        for k in 0..300u64 {
            let out = m.apply(&e, &big(k), Budget(100_000)).unwrap();
            assert_eq!(out == big(1), trial_division(k), "{k}");
        }
        assert_eq!(m.apply(&e, &big(7), Budget(1000)), Ok(big(1)));
    }

    #[test]
    fn next_prime_witnesses() {
        let e = library_realizer("next_prime").unwrap();
        let mut m = Machine::new();
        let witness = |m: &mut Machine, k: u64| {
            let pair = m.apply(&e, &big(k), Budget(100_000)).unwrap();
            m.apply(&Code(pair), &big(0), Budget(100_000)).unwrap()
        };
        assert_eq!(witness(&mut m, 10), big(11));
        assert_eq!(witness(&mut m, 0), big(2));
    }

    #[test]
    fn markov_search_finds_least_zero() {
        let e = library_realizer("markov_search").unwrap();
        let f = function_with_zeros(&[5]);
        let mut m = Machine::new();
        let b = Budget(100_000);
        let step1 = m.apply(&e, &f.0, b).unwrap();
        let step2 = m.apply(&Code(step1), &big(0), b).unwrap();
        assert_eq!(m.apply(&Code(step2), &big(0), b), Ok(big(5)));
    }
}
