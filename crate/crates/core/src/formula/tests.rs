use super::*;
use proptest::prelude::*;

fn kripke_sig() -> Signature {
    Signature::propositional_first_order(SortKind::Custom("D".into()))
        .with_predicate("P1", vec![Sort::nat()])
        .with_predicate("P2", vec![Sort::nat(), Sort::nat()])
        .with_sort(Sort::nat())
        .with_var("m", Sort::nat())
}

fn nat_sig() -> Signature {
    Signature::arithmetic()
        .with_predicate("P", vec![Sort::nat()])
        .with_predicate("Pm", vec![Sort::nat(), Sort::nat()])
        .with_var("m", Sort::nat())
        .with_var("x", Sort::nat())
}

fn ring_sig() -> Signature {
    Signature::ring().with_var("x", Sort::ring()).with_constant("c", Sort::ring())
}

fn n(name: &str) -> Term {
    Term::var(name, Sort::nat())
}

#[test]
fn parses_excluded_middle_instance() {
    let f = parse("forall n:N. P(n) \\/ ~P(n)", &nat_sig()).unwrap();
    let p = Formula::pred("P", vec![n("n")]);
    let expected = Formula::forall(
        Var::new("n", Sort::nat()),
        Formula::or(p.clone(), Formula::implies(p, Formula::Bottom)),
    );
    assert_eq!(f, expected);
}

fn field_property() -> Formula {
    let x = Term::var("x", Sort::ring());
    let y = Term::var("y", Sort::ring());
    let r = Sort::ring();
    Formula::forall(
        Var::new("x", r.clone()),
        Formula::implies(
            Formula::not(Formula::Eq(x.clone(), Term::constant("0", r.clone()))),
            Formula::exists(
                Var::new("y", r.clone()),
                Formula::Eq(Term::apply("*", vec![x, y], r.clone()), Term::constant("1", r)),
            ),
        ),
    )
}

#[test]
fn parses_field_property() {
    let f = parse("forall x:R. (~(x = 0) -> exists y:R. x*y = 1)", &Signature::ring()).unwrap();
    assert_eq!(f, field_property());
}

#[test]
fn implication_is_right_associative() {
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    let f = parse("P -> Q -> P", &sig).unwrap();
    let (p, q) = (Formula::prop("P"), Formula::prop("Q"));
    assert_eq!(f, Formula::implies(p.clone(), Formula::implies(q, p)));
}

#[test]
fn precedence_not_and_or_implies() {
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    let f = parse("~P /\\ Q \\/ R -> S", &sig).unwrap();
    let (p, q, r, s) = (
        Formula::prop("P"),
        Formula::prop("Q"),
        Formula::prop("R"),
        Formula::prop("S"),
    );
    let expected = Formula::implies(Formula::or(Formula::and(Formula::not(p), q), r), s);
    assert_eq!(f, expected);
}

#[test]
fn unicode_connectives_are_synonyms() {
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    let a = parse("∀x:D. (A(x) ∧ ¬B(x) → ∃y:D. E(x, y) ∨ ⊥)", &sig).unwrap();
    let b = parse("forall x:D. (A(x) /\\ ~B(x) -> exists y:D. E(x, y) \\/ false)", &sig).unwrap();
    assert_eq!(a, b);
}

#[test]
fn print_examples() {
    assert_eq!(print(&Formula::Top), "true");
    assert_eq!(print(&Formula::not(Formula::prop("P"))), "~P");
    assert_eq!(
        print(&field_property()),
        "forall x:R. (~(x = 0) -> exists y:R. x*y = 1)"
    );
    let sig = nat_sig();
    let f = parse("forall n:N. P(n) \\/ ~P(n)", &sig).unwrap();
    assert_eq!(print(&f), "forall n:N. P(n) \\/ ~P(n)");
}

#[test]
fn syntax_error_reports_position() {
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    match parse("P /\\ ", &sig) {
        Err(FormulaError::Syntax { position, .. }) => assert_eq!(position, 5),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse("P ? Q", &sig), Err(FormulaError::Syntax { position: 2, .. })));
}

#[test]
fn unknown_symbol_and_sort_errors() {
    let sig = nat_sig();
    assert!(matches!(
        parse("Zorp(1)", &sig),
        Err(FormulaError::UnknownSymbol { ref name, .. }) if name == "Zorp"
    ));
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()))
        .with_sort(Sort::nat());
    let err = parse("forall n:N. A(n)", &sig).unwrap_err();
    assert_eq!(
        err,
        FormulaError::Sort {
            symbol: "n".into(),
            expected: "D".into(),
            found: "N".into()
        }
    );
    assert!(matches!(parse("P(1, 2)", &nat_sig()), Err(FormulaError::Arity { .. })));
}

#[test]
fn shadowing_binders_are_renamed() {
    let sig = Signature::propositional_first_order(SortKind::Custom("D".into()));
    let f = parse("forall x:D. exists x:D. A(x)", &sig).unwrap();
    let d = Sort::custom("D");
    let expected = Formula::forall(
        Var::new("x", d.clone()),
        Formula::exists(
            Var::new("x'", d.clone()),
            Formula::pred("A", vec![Term::var("x'", d)]),
        ),
    );
    assert_eq!(f, expected);
}

#[test]
fn unique_existence_is_desugared() {
    let sig = nat_sig();
    let f = parse("exists! n:N. P(n)", &sig).unwrap();
    let g = parse("exists n:N. P(n) /\\ (forall n':N. (P(n') -> n' = n))", &sig).unwrap();
    assert_eq!(f, g);
}

#[test]
fn ring_numerals_are_constants() {
    let f = parse("1 = x*x + 2", &ring_sig()).unwrap();
    let r = Sort::ring();
    let x = Term::var("x", r.clone());
    let rhs = Term::apply(
        "+",
        vec![Term::apply("*", vec![x.clone(), x], r.clone()), Term::constant("2", r.clone())],
        r.clone(),
    );
    assert_eq!(f, Formula::Eq(Term::constant("1", r), rhs));
}

#[test]
fn parenthesised_terms_are_not_formulas() {
    let f = parse("(x + c)*x = -(c - x)", &ring_sig()).unwrap();
    assert_eq!(print(&f), "(x + c)*x = -(c - x)");
}

#[test]
fn function_variables_apply_to_naturals() {
    let f = parse("forall f:N^N. exists e:N. Computes(e, f) /\\ f(e + 1) = 0", &Signature::arithmetic()).unwrap();
    assert!(f.is_closed());
    assert_eq!(print(&f), "forall f:N^N. exists e:N. Computes(e, f) /\\ f(e + 1) = 0");
}

#[test]
fn substitution_examples() {
    let sig = nat_sig();
    let p = parse("P(n')", &sig.clone().with_var("n'", Sort::nat())).unwrap();
    let replaced = substitute(&p, &Var::new("n'", Sort::nat()), &Term::NumLiteral(5)).unwrap();
    assert_eq!(replaced, Formula::pred("P", vec![Term::NumLiteral(5)]));

    // forall n. n = m, with m := n, renames the binder.
    let f = Formula::forall(Var::new("n", Sort::nat()), Formula::Eq(n("n"), n("m")));
    let g = substitute(&f, &Var::new("m", Sort::nat()), &n("n")).unwrap();
    let expected = Formula::forall(Var::new("n'", Sort::nat()), Formula::Eq(n("n'"), n("n")));
    assert_eq!(g, expected);

    let r = Sort::ring();
    let f = parse("exists y:R. x*y = 1", &ring_sig()).unwrap();
    let g = substitute(&f, &Var::new("x", r.clone()), &Term::constant("c", r.clone())).unwrap();
    assert_eq!(g, parse("exists y:R. c*y = 1", &ring_sig()).unwrap());

    let err = substitute(&f, &Var::new("x", r), &Term::NumLiteral(1)).unwrap_err();
    assert!(matches!(err, FormulaError::Sort { .. }));
}

#[test]
fn bound_occurrences_are_untouched() {
    let f = Formula::forall(Var::new("m", Sort::nat()), Formula::Eq(n("m"), n("m")));
    let g = substitute(&f, &Var::new("m", Sort::nat()), &Term::NumLiteral(3)).unwrap();
    assert_eq!(f, g);
}

#[test]
fn free_vars_examples() {
    assert!(free_vars(&field_property()).is_empty());
    let eq = parse("x = 0", &ring_sig()).unwrap();
    assert_eq!(free_vars(&eq), [Var::new("x", Sort::ring())].into_iter().collect());
    let f = parse("forall n:N. Pm(n, m)", &nat_sig()).unwrap();
    assert_eq!(free_vars(&f), [Var::new("m", Sort::nat())].into_iter().collect());
}

fn count_bottoms(f: &Formula) -> usize {
    match f {
        Formula::Bottom => 1,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => count_bottoms(a) + count_bottoms(b),
        Formula::Forall(_, b) | Formula::Exists(_, b) => count_bottoms(b),
        _ => 0,
    }
}

#[test]
fn round_trip_thousand_random_formulas() {
    let sigs = [kripke_sig(), nat_sig(), ring_sig()];
    for seed in 0..1000u64 {
        let sig = &sigs[(seed % 3) as usize];
        let f = random_formula(sig, seed, 5);
        let text = print(&f);
        let back = parse(&text, sig).unwrap_or_else(|e| panic!("seed {seed}: {text}: {e}"));
        assert_eq!(back, f, "seed {seed}: {text}");
    }
}

proptest! {
    #[test]
    fn negation_desugars_to_bottom(seed in 0u64..5000) {
        let sig = kripke_sig();
        let f = random_formula(&sig, seed, 4);
        let text = print(&f);
        let tildes = text.matches('~').count();
        let falses = text.matches("false").count();
        let back = parse(&text, &sig).unwrap();
        prop_assert_eq!(count_bottoms(&back), tildes + falses);
    }

    #[test]
    fn substitution_commutes_on_disjoint_variables(seed in 0u64..2000, a in 0u64..9, b in 0u64..9) {
        let sig = nat_sig();
        let f = random_formula(&sig.clone().with_var("y", Sort::nat()), seed, 4);
        let f = Formula::and(f, parse("Pm(m, x)", &sig).unwrap());
        let x = Var::new("x", Sort::nat());
        let y = Var::new("m", Sort::nat());
        let t = Term::apply("+", vec![Term::NumLiteral(a), Term::var("y", Sort::nat())], Sort::nat());
        let s = Term::NumLiteral(b);
        let left = substitute(&substitute(&f, &x, &t).unwrap(), &y, &s).unwrap();
        let right = substitute(&substitute(&f, &y, &s).unwrap(), &x, &t).unwrap();
        prop_assert_eq!(left, right);
    }
}
