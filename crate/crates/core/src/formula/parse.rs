//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula     := quantified | implication
//! quantified  := ("forall" | "exists" | "exists!") ident ":" sort "." formula
//! implication := disjunction ["->" implication]
//! disjunction := conjunction ("\/" conjunction)*
//! conjunction := unary ("/\" unary)*
//! unary       := "~" unary | quantified | "true" | "false" | "(" formula ")" | atom
//! atom        := term [("=" | "<" | "<=" | ">" | ">=") term]
//! term        := product (("+" | "-") product)*
//! product     := factor ("*" factor)*
//! factor      := "-" factor | ident ["(" term ("," term)* ")"] | numeral | "(" term ")"
//! sort        := ident ["^" ident]
//! ```
//!
//! The Unicode connectives `∀ ∃ ∧ ∨ → ¬ ⊤ ⊥` are accepted as synonyms.

use std::collections::BTreeSet;

use super::signature::Signature;
use super::syntax::{Formula, Sort, SortKind, Term, Var};
use super::FormulaError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Forall,
    Exists,
    ExistsUnique,
    True,
    False,
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    And,
    Or,
    Arrow,
    Not,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
            other => format!("{other:?}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let peek = |k: usize| bytes.get(k).map(|&(_, c)| c);
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = bytes[i..(i + 2).min(bytes.len())].iter().map(|&(_, c)| c).collect();
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            ':' => (Tok::Colon, 1),
            '.' => (Tok::Dot, 1),
            '~' | '¬' => (Tok::Not, 1),
            '=' => (Tok::Eq, 1),
            '+' => (Tok::Plus, 1),
            '*' | '·' => (Tok::Star, 1),
            '^' => (Tok::Caret, 1),
            '∧' => (Tok::And, 1),
            '∨' => (Tok::Or, 1),
            '→' | '⇒' => (Tok::Arrow, 1),
            '∀' => (Tok::Forall, 1),
            '∃' => {
                if peek(i + 1) == Some('!') {
                    (Tok::ExistsUnique, 2)
                } else {
                    (Tok::Exists, 1)
                }
            }
            '⊤' => (Tok::True, 1),
            '⊥' => (Tok::False, 1),
            '/' if two == "/\\" => (Tok::And, 2),
            '\\' if two == "\\/" => (Tok::Or, 2),
            '-' if two == "->" => (Tok::Arrow, 2),
            '-' => (Tok::Minus, 1),
            '<' if two == "<=" => (Tok::Le, 2),
            '<' => (Tok::Lt, 1),
            '>' if two == ">=" => (Tok::Ge, 2),
            '>' => (Tok::Gt, 1),
            c if c.is_ascii_digit() => {
                let mut j = i;
                let mut s = String::new();
                while let Some(d) = peek(j).filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    j += 1;
                }
                (Tok::Num(s), j - i)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                let mut s = String::new();
                while let Some(d) = peek(j).filter(|d| d.is_alphanumeric() || *d == '_' || *d == '\'') {
                    s.push(d);
                    j += 1;
                }
                let tok = match s.as_str() {
                    "forall" => Tok::Forall,
                    "exists" if peek(j) == Some('!') => {
                        j += 1;
                        Tok::ExistsUnique
                    }
                    "exists" => Tok::Exists,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(s),
                };
                (tok, j - i)
            }
            other => {
                return Err(FormulaError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, pos));
        i += width;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Terms before sort elaboration.
#[derive(Clone, Debug)]
enum RawTerm {
    Ident(String, usize),
    Num(String, usize),
    App(String, Vec<RawTerm>, usize),
    Neg(Box<RawTerm>, usize),
}

impl RawTerm {
    fn pos(&self) -> usize {
        match self {
            RawTerm::Ident(_, p) | RawTerm::Num(_, p) | RawTerm::App(_, _, p) | RawTerm::Neg(_, p) => *p,
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    sig: &'a Signature,
    /// Binders in scope, keyed by their source name.
    scope: Vec<(String, Var)>,
}

type PResult<T> = Result<T, FormulaError>;

impl<'a> Parser<'a> {
    fn cur(&self) -> &(Tok, usize) {
        &self.toks[self.at.min(self.toks.len() - 1)]
    }

    fn peek(&self) -> &Tok {
        &self.cur().0
    }

    fn pos(&self) -> usize {
        self.cur().1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("{want:?}")))
        }
    }

    fn unexpected(&self, wanted: &str) -> FormulaError {
        FormulaError::Syntax {
            position: self.pos(),
            message: format!("expected {wanted}, found {}", self.peek().describe()),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Forall | Tok::Exists | Tok::ExistsUnique => self.quantified(),
            _ => self.implication(),
        }
    }

    fn quantified(&mut self) -> PResult<Formula> {
        let q = self.bump();
        let name = match self.bump() {
            Tok::Ident(s) => s,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("a variable name"));
            }
        };
        self.expect(Tok::Colon)?;
        let sort = self.sort()?;
        self.expect(Tok::Dot)?;
        let var = Var::new(self.fresh_binder(&name), sort);
        self.scope.push((name, var.clone()));
        let body = self.formula();
        self.scope.pop();
        let body = body?;
        Ok(match q {
            Tok::Forall => Formula::forall(var, body),
            Tok::Exists => Formula::exists(var, body),
            _ => {
                let outer: Vec<Var> = self.scope.iter().map(|(_, v)| v.clone()).collect();
                unique_exists(var, body, &outer)
            }
        })
    }

    /// Renames a binder that would shadow an enclosing binder or a declared
    /// free variable.
    fn fresh_binder(&self, name: &str) -> String {
        let taken = |n: &str| {
            self.scope.iter().any(|(src, v)| v.name == n || src == n)
                || self.sig.variable(n).is_some()
                || self.sig.constant(n).is_some()
        };
        let mut candidate = name.to_string();
        while taken(&candidate) {
            candidate.push('\'');
        }
        candidate
    }

    fn sort(&mut self) -> PResult<Sort> {
        let pos = self.pos();
        let mut name = match self.bump() {
            Tok::Ident(s) => s,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("a sort name"));
            }
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Ident(s) => {
                    name.push('^');
                    name.push_str(&s);
                }
                _ => {
                    self.at -= 1;
                    return Err(self.unexpected("a sort name"));
                }
            }
        }
        if let Some(s) = self.sig.sort(&name) {
            return Ok(s.clone());
        }
        match name.as_str() {
            "N" => Ok(Sort::nat()),
            "N^N" => Ok(Sort::nat_fun()),
            _ => Err(FormulaError::UnknownSymbol { name, position: pos }),
        }
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula_or_implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn formula_or_implication(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Forall | Tok::Exists | Tok::ExistsUnique => self.quantified(),
            _ => self.implication(),
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists | Tok::ExistsUnique => self.quantified(),
            Tok::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::LParen => {
                let save = self.at;
                self.bump();
                let attempt = self.formula().and_then(|f| {
                    self.expect(Tok::RParen)?;
                    Ok(f)
                });
                match attempt {
                    Ok(f) if !self.continues_term() => Ok(f),
                    Ok(_) => {
                        self.at = save;
                        self.atom()
                    }
                    Err(e) => {
                        self.at = save;
                        self.atom().map_err(|_| e)
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn continues_term(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Eq | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge | Tok::Plus | Tok::Minus | Tok::Star
        )
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let rel = match self.peek() {
            Tok::Eq => Some("="),
            Tok::Lt => Some("<"),
            Tok::Le => Some("<="),
            Tok::Gt => Some(">"),
            Tok::Ge => Some(">="),
            _ => None,
        };
        match rel {
            Some(op) => {
                self.bump();
                let rhs = self.term()?;
                if op == "=" {
                    let (l, r) = self.elaborate_pair(&lhs, &rhs)?;
                    Ok(Formula::Eq(l, r))
                } else {
                    self.predicate(op, &[lhs, rhs], self.toks[self.at - 1].1)
                }
            }
            None => match lhs {
                RawTerm::Ident(name, pos) => self.predicate(&name, &[], pos),
                RawTerm::App(name, args, pos) => self.predicate(&name, &args, pos),
                other => Err(FormulaError::Syntax {
                    position: other.pos(),
                    message: "expected a formula".into(),
                }),
            },
        }
    }

    fn predicate(&self, name: &str, args: &[RawTerm], pos: usize) -> PResult<Formula> {
        let sorts = self
            .sig
            .predicate(name)
            .ok_or_else(|| FormulaError::UnknownSymbol {
                name: name.to_string(),
                position: pos,
            })?;
        if sorts.len() != args.len() {
            return Err(FormulaError::Arity {
                symbol: name.to_string(),
                expected: sorts.len(),
                found: args.len(),
            });
        }
        let args = args
            .iter()
            .zip(sorts)
            .map(|(a, s)| self.elaborate(a, Some(s)))
            .collect::<PResult<Vec<_>>>()?;
        Ok(Formula::Pred(name.to_string(), args))
    }

    fn term(&mut self) -> PResult<RawTerm> {
        let mut acc = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => "+",
                Tok::Minus => "-",
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.product()?;
            acc = RawTerm::App(op.into(), vec![acc, rhs], pos);
        }
    }

    fn product(&mut self) -> PResult<RawTerm> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.factor()?;
            acc = RawTerm::App("*".into(), vec![acc, rhs], pos);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<RawTerm> {
        let pos = self.pos();
        match self.bump() {
            Tok::Minus => Ok(RawTerm::Neg(Box::new(self.factor()?), pos)),
            Tok::Num(n) => Ok(RawTerm::Num(n, pos)),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let mut args = vec![self.term()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen)?;
                    Ok(RawTerm::App(name, args, pos))
                } else {
                    Ok(RawTerm::Ident(name, pos))
                }
            }
            _ => {
                self.at -= 1;
                Err(self.unexpected("a term"))
            }
        }
    }

    fn lookup_var(&self, name: &str) -> Option<Var> {
        self.scope
            .iter()
            .rev()
            .find(|(src, _)| src == name)
            .map(|(_, v)| v.clone())
            .or_else(|| self.sig.variable(name).map(|s| Var::new(name, s.clone())))
    }

    fn elaborate_pair(&self, lhs: &RawTerm, rhs: &RawTerm) -> PResult<(Term, Term)> {
        if matches!(lhs, RawTerm::Num(..)) && !matches!(rhs, RawTerm::Num(..)) {
            let r = self.elaborate(rhs, None)?;
            let l = self.elaborate(lhs, Some(&r.sort()))?;
            Ok((l, r))
        } else {
            let l = self.elaborate(lhs, None)?;
            let r = self.elaborate(rhs, Some(&l.sort()))?;
            Ok((l, r))
        }
    }

    fn check(&self, symbol: &str, expected: Option<&Sort>, found: Sort) -> PResult<()> {
        match expected {
            Some(e) if *e != found => Err(FormulaError::Sort {
                symbol: symbol.to_string(),
                expected: e.name.clone(),
                found: found.name,
            }),
            _ => Ok(()),
        }
    }

    fn elaborate(&self, raw: &RawTerm, expected: Option<&Sort>) -> PResult<Term> {
        match raw {
            RawTerm::Ident(name, pos) => {
                let term = if let Some(v) = self.lookup_var(name) {
                    Term::Variable(v)
                } else if let Some(s) = self.sig.constant(name) {
                    Term::constant(name.clone(), s.clone())
                } else {
                    return Err(FormulaError::UnknownSymbol {
                        name: name.clone(),
                        position: *pos,
                    });
                };
                self.check(name, expected, term.sort())?;
                Ok(term)
            }
            RawTerm::Num(digits, pos) => match expected {
                None => match self.default_numeral_sort() {
                    Some(ring) => Ok(Term::constant(digits.clone(), ring)),
                    None => self.nat_literal(digits, *pos),
                },
                Some(s) if s.kind == SortKind::Nat => self.nat_literal(digits, *pos),
                Some(s) if matches!(s.kind, SortKind::RingElem | SortKind::Section) => {
                    Ok(Term::constant(digits.clone(), s.clone()))
                }
                Some(s) => match self.sig.constant(digits) {
                    Some(cs) if cs == s => Ok(Term::constant(digits.clone(), s.clone())),
                    _ => Err(FormulaError::Sort {
                        symbol: digits.clone(),
                        expected: s.name.clone(),
                        found: Sort::nat().name,
                    }),
                },
            },
            RawTerm::Neg(inner, pos) => self.elaborate(&RawTerm::App("neg".into(), vec![(**inner).clone()], *pos), expected),
            RawTerm::App(name, args, pos) => {
                if let Some(fun) = self.lookup_var(name) {
                    if fun.sort.kind != SortKind::NatFun {
                        return Err(FormulaError::Sort {
                            symbol: name.clone(),
                            expected: Sort::nat_fun().name,
                            found: fun.sort.name,
                        });
                    }
                    if args.len() != 1 {
                        return Err(FormulaError::Arity {
                            symbol: name.clone(),
                            expected: 1,
                            found: args.len(),
                        });
                    }
                    let arg = self.elaborate(&args[0], Some(&Sort::nat()))?;
                    self.check(name, expected, Sort::nat())?;
                    return Ok(Term::Call {
                        fun,
                        arg: Box::new(arg),
                    });
                }
                let (sorts, result) = self.sig.function(name).ok_or_else(|| FormulaError::UnknownSymbol {
                    name: name.clone(),
                    position: *pos,
                })?;
                if sorts.len() != args.len() {
                    return Err(FormulaError::Arity {
                        symbol: name.clone(),
                        expected: sorts.len(),
                        found: args.len(),
                    });
                }
                let args = args
                    .iter()
                    .zip(sorts)
                    .map(|(a, s)| self.elaborate(a, Some(s)))
                    .collect::<PResult<Vec<_>>>()?;
                self.check(name, expected, result.clone())?;
                Ok(Term::apply(name.clone(), args, result.clone()))
            }
        }
    }

    /// Numerals default to `N`, unless the signature has a ring or section
    /// sort and no `N`, in which case they name constants of that sort.
    fn default_numeral_sort(&self) -> Option<Sort> {
        let mut sorts = self.sig.sorts();
        if sorts.any(|s| s.kind == SortKind::Nat) {
            return None;
        }
        self.sig
            .sorts()
            .find(|s| matches!(s.kind, SortKind::RingElem | SortKind::Section))
            .cloned()
    }

    fn nat_literal(&self, digits: &str, pos: usize) -> PResult<Term> {
        digits
            .parse::<u64>()
            .map(Term::NumLiteral)
            .map_err(|_| FormulaError::Syntax {
                position: pos,
                message: format!("numeral `{digits}` out of range"),
            })
    }
}

/// `∃!x. φ(x)` as `∃x. (φ(x) ∧ ∀y. (φ(y) → y = x))`.
fn unique_exists(var: Var, body: Formula, scope: &[Var]) -> Formula {
    let mut taken: BTreeSet<String> = body.all_var_names();
    taken.extend(scope.iter().map(|v| v.name.clone()));
    taken.insert(var.name.clone());
    let mut other = format!("{}'", var.name);
    while taken.contains(&other) {
        other.push('\'');
    }
    let other = Var::new(other, var.sort.clone());
    let renamed = super::subst::substitute_unchecked(&body, &var, &Term::Variable(other.clone()));
    let uniq = Formula::forall(
        other.clone(),
        Formula::implies(
            renamed,
            Formula::Eq(Term::Variable(other), Term::Variable(var.clone())),
        ),
    );
    Formula::exists(var, Formula::and(body, uniq))
}

pub fn parse(text: &str, sig: &Signature) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        sig,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses a single term, e.g. a ring element expression for a stage constant.
pub fn parse_term(text: &str, sig: &Signature, expected: Option<&Sort>) -> Result<Term, FormulaError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        sig,
        scope: Vec::new(),
    };
    let raw = p.term()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    p.elaborate(&raw, expected)
}
