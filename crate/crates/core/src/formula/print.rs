//! Pretty printer producing text the parser reads back to the same tree.

use std::fmt;

use super::syntax::{Formula, Term};

const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_INFIX_ATOM: u8 = 4;
const PREC_ATOM: u8 = 5;

fn is_symbolic(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_alphanumeric() || c == '_')
}

fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::Implies(_, b) if **b == Formula::Bottom => PREC_ATOM,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Eq(..) => PREC_INFIX_ATOM,
        Formula::Pred(name, args) if is_symbolic(name) && args.len() == 2 => PREC_INFIX_ATOM,
        Formula::Forall(..) | Formula::Exists(..) => 0,
        _ => PREC_ATOM,
    }
}

struct Printer<'a> {
    out: &'a mut String,
}

impl Printer<'_> {
    /// `min` is the weakest precedence allowed without parentheses; `tail`
    /// says nothing follows in the enclosing group, so a quantifier may
    /// extend to the right unbracketed.
    fn formula(&mut self, f: &Formula, min: u8, tail: bool) {
        let quantifier = matches!(f, Formula::Forall(..) | Formula::Exists(..));
        let paren = if quantifier {
            !tail || min >= PREC_ATOM
        } else {
            formula_prec(f) < min
        };
        if paren {
            self.out.push('(');
            self.bare(f, true);
            self.out.push(')');
        } else {
            self.bare(f, tail);
        }
    }

    fn bare(&mut self, f: &Formula, tail: bool) {
        match f {
            Formula::Top => self.out.push_str("true"),
            Formula::Bottom => self.out.push_str("false"),
            Formula::Eq(a, b) => {
                self.term(a, 0);
                self.out.push_str(" = ");
                self.term(b, 0);
            }
            Formula::Pred(name, args) => self.predicate(name, args),
            Formula::Implies(a, b) if **b == Formula::Bottom => {
                self.out.push('~');
                self.formula(a, PREC_ATOM, tail);
            }
            Formula::Implies(a, b) => {
                self.formula(a, PREC_OR, false);
                self.out.push_str(" -> ");
                self.formula(b, PREC_IMPLIES, tail);
            }
            Formula::Or(a, b) => {
                self.formula(a, PREC_OR, false);
                self.out.push_str(" \\/ ");
                self.formula(b, PREC_AND, tail);
            }
            Formula::And(a, b) => {
                self.formula(a, PREC_AND, false);
                self.out.push_str(" /\\ ");
                self.formula(b, PREC_INFIX_ATOM, tail);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                self.out.push_str(if matches!(f, Formula::Forall(..)) {
                    "forall "
                } else {
                    "exists "
                });
                self.out.push_str(&v.name);
                self.out.push(':');
                self.out.push_str(&v.sort.name);
                self.out.push_str(". ");
                let bracket_body = matches!(&**body, Formula::Implies(_, c) if **c != Formula::Bottom);
                if bracket_body {
                    self.out.push('(');
                    self.bare(body, true);
                    self.out.push(')');
                } else {
                    self.formula(body, 0, true);
                }
            }
        }
    }

    fn predicate(&mut self, name: &str, args: &[Term]) {
        if is_symbolic(name) && args.len() == 2 {
            self.term(&args[0], 0);
            self.out.push(' ');
            self.out.push_str(name);
            self.out.push(' ');
            self.term(&args[1], 0);
            return;
        }
        self.out.push_str(name);
        if !args.is_empty() {
            self.out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    self.out.push_str(", ");
                }
                self.term(a, 0);
            }
            self.out.push(')');
        }
    }

    fn term(&mut self, t: &Term, min: u8) {
        let s = term_to_string_prec(t, min);
        self.out.push_str(&s);
    }
}

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Apply { func, args, .. } if args.len() == 2 && (func == "+" || func == "-") => 1,
        Term::Apply { func, args, .. } if args.len() == 2 && func == "*" => 2,
        Term::Apply { func, args, .. } if args.len() == 1 && func == "neg" => 3,
        _ => 4,
    }
}

fn term_to_string_prec(t: &Term, min: u8) -> String {
    let body = match t {
        Term::Variable(v) => v.name.clone(),
        Term::Constant { name, .. } => name.clone(),
        Term::NumLiteral(n) => n.to_string(),
        Term::Call { fun, arg } => format!("{}({})", fun.name, term_to_string_prec(arg, 0)),
        Term::Apply { func, args, .. } => match (func.as_str(), args.as_slice()) {
            ("+" | "-", [a, b]) => format!(
                "{} {func} {}",
                term_to_string_prec(a, 1),
                term_to_string_prec(b, 2)
            ),
            ("*", [a, b]) => format!("{}*{}", term_to_string_prec(a, 2), term_to_string_prec(b, 3)),
            ("neg", [a]) => format!("-{}", term_to_string_prec(a, 3)),
            _ => {
                let inner: Vec<String> = args.iter().map(|a| term_to_string_prec(a, 0)).collect();
                format!("{func}({})", inner.join(", "))
            }
        },
    };
    if term_prec(t) < min {
        format!("({body})")
    } else {
        body
    }
}

pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    Printer { out: &mut out }.formula(f, 0, true);
    out
}

pub fn print_term(t: &Term) -> String {
    term_to_string_prec(t, 0)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}
