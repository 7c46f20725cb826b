//! Derivatives read off from infinitesimal coefficients.

use std::fmt;

use num_traits::{One, Zero};

use super::algebra::{dual_numbers, AlgElem};
use super::linalg::{self, parse_rational, Q};
use super::ZariskiError;

/// A univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoly {
    pub coeffs: Vec<Q>,
}

impl DualPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DualPoly { coeffs }
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        DualPoly::new(coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// The formal derivative.
    pub fn derivative(&self) -> DualPoly {
        DualPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * linalg::q(k as i64))
                .collect(),
        )
    }

    /// `p(x0 + ε)` in `ℚ[ε]/(ε^k)`, by Horner's rule inside the algebra.
    pub fn eval_dual(&self, x0: &Q, k: usize) -> AlgElem {
        let a = dual_numbers(k);
        let mut point = a.scalar(x0.clone());
        point[1] += Q::one();
        self.coeffs
            .iter()
            .rev()
            .fold(a.zero(), |acc, c| linalg::add(&a.mul(&acc, &point), &a.scalar(c.clone())))
    }

    /// Parses expressions such as `3x^2 - 2x + 1/2` or `x^3`.
    pub fn parse(text: &str) -> Result<Self, ZariskiError> {
        let bad = |m: &str| ZariskiError::Poly(format!("{m} in `{text}`"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<Q> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-Q::one(), &term[1..]),
                Some(b'+') => (Q::one(), &term[1..]),
                _ => (Q::one(), term),
            };
            let (coef, power) = match body.find('x') {
                None => (body, 0),
                Some(at) => {
                    let rest = &body[at + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|p| p.parse::<usize>().ok())
                            .ok_or_else(|| bad("bad exponent"))?
                    };
                    (body[..at].trim_end_matches('*'), power)
                }
            };
            let c = if coef.is_empty() {
                if power == 0 {
                    return Err(bad("empty term"));
                }
                Q::one()
            } else {
                parse_rational(coef).ok_or_else(|| bad("bad coefficient"))?
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Q::zero());
            }
            coeffs[power] += sign * c;
        }
        Ok(DualPoly::new(coeffs))
    }
}

impl fmt::Display for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let coef = if abs.is_one() && k > 0 { String::new() } else { linalg::show_rational(&abs) };
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            write!(f, "{coef}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// First or second derivative of `p` at `x0`, from `p(x0 + ε)` in `ℚ[ε]/(ε^(order+1))`.
pub fn derivative(p: &DualPoly, x0: &Q, order: usize) -> Result<Q, ZariskiError> {
    match order {
        1 => Ok(p.eval_dual(x0, 2)[1].clone()),
        2 => Ok(p.eval_dual(x0, 3)[2].clone() * linalg::q(2)),
        _ => Err(ZariskiError::Poly(format!("order {order} is not 1 or 2"))),
    }
}

/// The `a` with `p(x0 + ε) = p(x0) + aε` in `ℚ[ε]/(ε²)`, and whether the
/// identity checks out when both sides are multiplied out.
pub fn micro_affinity_check(p: &DualPoly, x0: &Q) -> (Q, bool) {
    let lhs = p.eval_dual(x0, 2);
    let a = lhs[1].clone();
    let rhs = vec![p.eval(x0), a.clone()];
    (a, lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zariski::linalg::{q, ratio};
    use proptest::prelude::*;

    fn p(s: &str) -> DualPoly {
        DualPoly::parse(s).unwrap()
    }

    #[test]
    fn parsing_and_printing() {
        assert_eq!(p("3x^2 - 2x + 1/2").coeffs, vec![ratio(1, 2), q(-2), q(3)]);
        assert_eq!(p("x^3").to_string(), "x^3");
        assert_eq!(p("-x + 5").to_string(), "-x + 5");
        assert_eq!(p("2*x^2+x^2").to_string(), "3x^2");
        assert_eq!(p("x - x").to_string(), "0");
        assert!(DualPoly::parse("x^").is_err());
        assert!(DualPoly::parse("").is_err());
        assert!(DualPoly::parse("3y").is_err());
    }

    #[test]
    fn square_gives_twice_x() {
        // (x + ε)² − x² = 2xε
        for x in -3..=3 {
            let v = p("x^2").eval_dual(&q(x), 2);
            assert_eq!(v, vec![q(x * x), q(2 * x)]);
        }
    }

    #[test]
    fn cube_at_two() {
        let cube = p("x^3");
        assert_eq!(derivative(&cube, &q(2), 1).unwrap(), q(12));
        assert_eq!(derivative(&cube, &q(2), 2).unwrap(), q(12));
        assert_eq!(derivative(&p("5"), &ratio(7, 3), 1).unwrap(), q(0));
        assert!(derivative(&cube, &q(2), 3).is_err());
    }

    #[test]
    fn micro_affinity() {
        assert_eq!(micro_affinity_check(&p("x^2"), &q(3)), (q(6), true));
        assert_eq!(micro_affinity_check(&p("x"), &ratio(-5, 2)), (q(1), true));
        assert_eq!(micro_affinity_check(&p("4"), &q(9)), (q(0), true));
    }

    fn poly() -> impl Strategy<Value = DualPoly> {
        proptest::collection::vec((-9i64..=9, 1i64..=4), 0..=7)
            .prop_map(|cs| DualPoly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn derivatives_match_formal_differentiation(p in poly(), n in -20i64..20, d in 1i64..6) {
            let x0 = ratio(n, d);
            prop_assert_eq!(derivative(&p, &x0, 1).unwrap(), p.derivative().eval(&x0));
            prop_assert_eq!(derivative(&p, &x0, 2).unwrap(), p.derivative().derivative().eval(&x0));
            prop_assert!(micro_affinity_check(&p, &x0).1);
        }

        #[test]
        fn display_round_trips(p in poly()) {
            prop_assert_eq!(DualPoly::parse(&p.to_string()).unwrap(), p);
        }
    }
}
