//! External meanings of internal statements, spelled out as indented prose.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{print, substitute, Formula, Sort, SortKind, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Effective,
    Sheaf,
    Zariski,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "eff" | "effective" => Ok(Target::Effective),
            "sheaf" => Ok(Target::Sheaf),
            "zar" | "zariski" => Ok(Target::Zariski),
            other => Err(format!("unknown topos `{other}` (expected eff, sheaf or zar)")),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Effective => "effective",
            Target::Sheaf => "sheaf",
            Target::Zariski => "zariski",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslationStyle {
    pub target: Target,
    indent: usize,
}

impl TranslationStyle {
    pub fn new(target: Target) -> Self {
        TranslationStyle { target, indent: 4 }
    }

    /// Spaces per nesting level; zero is bumped to one.
    pub fn with_indent(mut self, width: usize) -> Self {
        self.indent = width.max(1);
        self
    }

    pub fn indent(&self) -> usize {
        self.indent
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("the {target} translation has no sort {sort}")]
    UnsupportedSort { sort: String, target: Target },
}

/// Lines with indentation relative to the first.
type Block = Vec<(usize, String)>;

fn line(text: impl Into<String>) -> Block {
    vec![(0, text.into())]
}

/// `prefix` glued to the first line of `sub`; the rest keeps its nesting.
fn join(prefix: &str, sub: Block) -> Block {
    let mut out = sub;
    let first = &mut out[0].1;
    *first = format!("{prefix} {first}");
    out
}

fn nest(block: Block) -> Block {
    block.into_iter().map(|(d, t)| (d + 1, t)).collect()
}

fn concat(blocks: impl IntoIterator<Item = Block>) -> Block {
    blocks.into_iter().flatten().collect()
}

fn atom_text(f: &Formula) -> Option<String> {
    match f {
        Formula::Top => Some("1 = 1".into()),
        Formula::Bottom => Some("1 = 0".into()),
        Formula::Eq(..) | Formula::Pred(..) => Some(print(f)),
        _ => None,
    }
}

fn instantiate(f: &Formula, v: &Var, name: &str) -> Formula {
    let t = Term::constant(name, v.sort.clone());
    substitute(f, v, &t).expect("a constant of the variable's own sort")
}

fn check_sorts(f: &Formula, target: Target) -> Result<(), TranslateError> {
    for s in f.quantified_sorts() {
        let ok = match target {
            Target::Effective => matches!(s.kind, SortKind::Nat | SortKind::NatFun),
            Target::Sheaf => matches!(s.kind, SortKind::Section | SortKind::Custom(_)),
            Target::Zariski => s.kind == SortKind::RingElem,
        };
        if !ok {
            return Err(TranslateError::UnsupportedSort { sort: s.name, target });
        }
    }
    Ok(())
}

/// The Kripke–Joyal meaning of `f` in the chosen topos.
pub fn translate(f: &Formula, style: &TranslationStyle) -> Result<String, TranslateError> {
    check_sorts(f, style.target)?;
    if *f == Formula::Top {
        return Ok("trivially true\n".into());
    }
    let block = match style.target {
        Target::Effective => realizer(f, "e", 0),
        Target::Sheaf => open(f, 0, "X"),
        Target::Zariski => stage(f, 0, "ℚ"),
    };
    let mut out = String::new();
    for (depth, text) in block {
        out.push_str(&" ".repeat(depth * style.indent));
        out.push_str(&text);
        out.push('\n');
    }
    Ok(out)
}

// Effective: realizers are numbers, `r·n` is Kleene application.

fn realizer_letter(level: usize) -> String {
    const LETTERS: [&str; 5] = ["e", "r", "s", "t", "u"];
    match LETTERS.get(level) {
        Some(l) => l.to_string(),
        None => format!("r{level}"),
    }
}

fn app(r: &str, arg: &str) -> String {
    if r.contains('·') {
        format!("({r})·{arg}")
    } else {
        format!("{r}·{arg}")
    }
}

fn realizer(f: &Formula, r: &str, level: usize) -> Block {
    if let Some(a) = atom_text(f) {
        return match f {
            Formula::Top => line("trivially true"),
            Formula::Bottom => line("1 = 0, which never holds"),
            _ => line(format!("{r} realizes {a}")),
        };
    }
    let (r0, r1) = (app(r, "0"), app(r, "1"));
    let halts = format!("{r0} halts and {r1} halts and");
    match f {
        Formula::And(a, b) => concat([
            join(&halts, realizer(a, &r0, level)),
            join("and", realizer(b, &r1, level)),
        ]),
        Formula::Or(a, b) => concat([
            line(format!("{r0} halts and {r1} halts, and")),
            nest(join(&format!("if {r0} = 0 then"), realizer(a, &r1, level))),
            nest(join(&format!("if {r0} ≠ 0 then"), realizer(b, &r1, level))),
        ]),
        Formula::Implies(a, b) => {
            let s = realizer_letter(level + 1);
            let rs = app(r, &s);
            concat([
                join(&format!("for any number {s} such that"), realizer(a, &s, level + 1)),
                nest(join(&format!("{rs} halts and"), realizer(b, &rs, level + 1))),
            ])
        }
        Formula::Forall(v, body) if v.sort.kind == SortKind::NatFun => {
            let code = format!("{}_code", v.name);
            let rc = app(r, &code);
            concat([
                line(format!(
                    "for any function {} : ℕ → ℕ and any number {code} such that {} is computed by the {code}-th machine,",
                    v.name, v.name
                )),
                nest(join(&format!("{rc} halts and"), realizer(body, &rc, level))),
            ])
        }
        Formula::Forall(v, body) => {
            let rn = app(r, &v.name);
            join(
                &format!("for any number {}, {rn} halts and", v.name),
                realizer(body, &rn, level),
            )
        }
        Formula::Exists(v, body) if v.sort.kind == SortKind::NatFun => concat([
            line(format!("{halts} the ({r0})-th machine computes a function {} : ℕ → ℕ and", v.name)),
            nest(realizer(body, &r1, level)),
        ]),
        Formula::Exists(v, body) => join(&halts, realizer(&instantiate(body, v, &r0), &r1, level)),
        _ => unreachable!("atoms handled above"),
    }
}

// Sheaf: opens of the base space, covered by families of smaller opens.

fn open_name(level: usize) -> String {
    const NAMES: [&str; 4] = ["X", "U", "V", "W"];
    match NAMES.get(level) {
        Some(n) => n.to_string(),
        None => format!("W{}", level - 3),
    }
}

fn sort_phrase(sort: &Sort) -> String {
    match sort.kind {
        SortKind::Section => format!("continuous function {{}} : {{open}} → {}", sort.name),
        _ => format!("section {{}} of {} over {{open}}", sort.name),
    }
}

fn section(v: &Var, over: &str) -> String {
    sort_phrase(&v.sort).replacen("{}", &v.name, 1).replace("{open}", over)
}

fn open_atom(f: &Formula, u: &str) -> Option<String> {
    match f {
        Formula::Top => Some(format!("{u} is any open")),
        Formula::Bottom => Some(format!("{u} is the empty open")),
        Formula::Eq(..) | Formula::Pred(..) => Some(format!("{} on {u}", print(f))),
        _ => None,
    }
}

fn open(f: &Formula, level: usize, u: &str) -> Block {
    if let Some(a) = open_atom(f, u) {
        return line(a);
    }
    let v = open_name(level + 1);
    let cover = format!("there is an open covering {u} = ⋃ {v}_i such that,");
    let vi = format!("{v}_i");
    match f {
        Formula::And(a, b) => concat([open(a, level, u), join("and", open(b, level, u))]),
        Formula::Or(a, b) => {
            let (pa, pb) = (open(a, level + 1, &vi), open(b, level + 1, &vi));
            concat([line(cover), nest(join("for each index i,", concat([pa, join("or", pb)])))])
        }
        Formula::Implies(a, b) => implication(
            &format!("for any open {v} ⊆ {u}"),
            a,
            b,
            |g| open(g, level + 1, &v),
            is_equation(a).then(|| format!("on which {} holds", print(a))),
            match &**b {
                Formula::Bottom => Some(format!("{v} is the empty open,")),
                g if is_equation(g) => Some(format!("also {} holds on {v},", print(g))),
                _ => None,
            },
        ),
        Formula::Forall(x, body) => concat([
            line(format!("for any open {v} ⊆ {u} and any {},", section(x, &v))),
            nest(open(body, level + 1, &v)),
        ]),
        Formula::Exists(x, body) => {
            let inner = open(body, level + 1, &vi);
            concat([
                line(cover),
                nest(join(&format!("for each index i, there is a {} with", section(x, &vi)), inner)),
            ])
        }
        _ => unreachable!("atoms handled above"),
    }
}

/// Shared shape of the `⇒` clause: a quantifier over later stages or
/// smaller opens, then either two inline lines or an if/then block.
fn implication(
    header: &str,
    a: &Formula,
    b: &Formula,
    sub: impl Fn(&Formula) -> Block,
    premise: Option<String>,
    conclusion: Option<String>,
) -> Block {
    match (premise, conclusion) {
        (Some(pa), Some(pb)) => concat([line(header), nest(line(pa)), nest(line(pb))]),
        _ => concat([
            line(format!("{header},")),
            nest(join("if", sub(a))),
            nest(join("then", sub(b))),
        ]),
    }
}

fn is_equation(f: &Formula) -> bool {
    matches!(f, Formula::Eq(..) | Formula::Pred(..))
}

// Zariski: stages are finitely presented algebras, refined by later stages.

fn stage_name(level: usize) -> String {
    const NAMES: [&str; 5] = ["ℚ", "A", "B", "C", "D"];
    match NAMES.get(level) {
        Some(n) => n.to_string(),
        None => format!("D{}", level - 4),
    }
}

fn stage_atom(f: &Formula, s: &str) -> Option<String> {
    match f {
        Formula::Top => Some(format!("1 = 1 in {s}")),
        _ => atom_text(f).map(|a| format!("{a} in {s}")),
    }
}

fn stage(f: &Formula, level: usize, s: &str) -> Block {
    if let Some(a) = stage_atom(f, s) {
        return line(a);
    }
    let t = stage_name(level + 1);
    let ti = format!("{t}_i");
    let later = if level == 0 {
        format!("any stage {t} (a finitely presented ℚ-algebra)")
    } else {
        format!("any later stage {t} of {s} (a finitely presented {s}-algebra)")
    };
    let cover = format!("{s} can be covered by later stages {ti}, a covering from a partition 1 = f_1 + ... + f_n in {s}, such that,");
    match f {
        Formula::And(a, b) => concat([stage(a, level, s), join("and", stage(b, level, s))]),
        Formula::Or(a, b) => {
            let pa = stage(a, level + 1, &ti);
            let pb = stage(b, level + 1, &ti);
            concat([line(cover), nest(join("for each index i,", concat([pa, join("or", pb)])))])
        }
        Formula::Implies(a, b) => implication(
            &format!("for {later}"),
            a,
            b,
            |g| stage(g, level + 1, &t),
            is_equation(a).then(|| format!("in which {} holds", print(a))),
            (is_equation(b) || **b == Formula::Bottom).then(|| format!("also {} holds,", atom_text(b).expect("atomic"))),
        ),
        Formula::Forall(x, body) => {
            let head = if level == 0 { "For" } else { "for" };
            concat([
                line(format!("{head} {later} and any element {} ∈ {t},", x.name)),
                nest(stage(body, level + 1, &t)),
            ])
        }
        Formula::Exists(x, body) => {
            let intro = format!("for each index i, there is an element {} ∈ {ti}", x.name);
            let inner = match atom_text(body) {
                Some(a) => line(format!("{intro} with {a} in {ti}.")),
                None => concat([line(format!("{intro} such that")), nest(stage(body, level + 1, &ti))]),
            };
            concat([line(cover), nest(inner)])
        }
        _ => unreachable!("atoms handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, random_formula, Signature};

    fn zar(text: &str) -> String {
        let f = parse(text, &Signature::ring()).unwrap();
        translate(&f, &TranslationStyle::new(Target::Zariski)).unwrap()
    }

    #[test]
    fn field_property_block() {
        let text = zar("forall x:R. (~(x = 0) -> exists y:R. x*y = 1)");
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7, "{text}");
        assert!(lines[0].starts_with("For any stage A"));
        assert!(lines[1].starts_with("    for any later stage B of A"));
        assert!(lines[2].starts_with("        if for any later stage C of B"));
        assert_eq!(lines[3].trim(), "in which x = 0 holds");
        assert_eq!(lines[4].trim(), "also 1 = 0 holds,");
        assert!(lines[5].trim().starts_with("then B can be covered by later stages C_i"));
        assert_eq!(lines[6].trim(), "for each index i, there is an element y ∈ C_i with x*y = 1 in C_i.");
    }

    #[test]
    fn existential_realizer() {
        let sig = Signature::arithmetic().with_var("f", Sort::nat_fun());
        let f = parse("exists n:N. f(n) = 0", &sig).unwrap();
        let text = translate(&f, &TranslationStyle::new(Target::Effective)).unwrap();
        assert_eq!(text, "e·0 halts and e·1 halts and e·1 realizes f(e·0) = 0\n");
    }

    #[test]
    fn truth_is_trivial_everywhere() {
        for t in [Target::Effective, Target::Sheaf, Target::Zariski] {
            assert_eq!(translate(&Formula::Top, &TranslationStyle::new(t)).unwrap(), "trivially true\n");
        }
    }

    #[test]
    fn unsupported_sorts() {
        let f = parse("forall f:N^N. f(0) = 0", &Signature::arithmetic()).unwrap();
        let err = translate(&f, &TranslationStyle::new(Target::Zariski)).unwrap_err();
        assert_eq!(
            err,
            TranslateError::UnsupportedSort {
                sort: "N^N".into(),
                target: Target::Zariski
            }
        );
        assert!(translate(&f, &TranslationStyle::new(Target::Effective)).is_ok());
    }

    #[test]
    fn indentation_width() {
        let f = parse("forall x:R. x = x", &Signature::ring()).unwrap();
        let text = translate(&f, &TranslationStyle::new(Target::Zariski).with_indent(2)).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "  x = x in A");
        assert_eq!(TranslationStyle::new(Target::Sheaf).with_indent(0).indent(), 1);
    }

    fn keywords(f: &Formula) -> Vec<(Target, &'static str)> {
        match f {
            Formula::Or(..) | Formula::Exists(..) => vec![(Target::Sheaf, "covering"), (Target::Zariski, "covering")],
            Formula::Implies(..) | Formula::Forall(..) => vec![(Target::Zariski, "finitely presented")],
            Formula::And(..) => vec![(Target::Effective, "halts")],
            _ => vec![],
        }
    }

    #[test]
    fn clause_keywords_appear() {
        let sheaf_sig = Signature::propositional_first_order(SortKind::Section);
        let ring = Signature::ring();
        let arith = Signature::arithmetic();
        for seed in 0..300 {
            for (sig, target) in [(&sheaf_sig, Target::Sheaf), (&ring, Target::Zariski), (&arith, Target::Effective)] {
                let f = random_formula(sig, seed, 4);
                let style = TranslationStyle::new(target);
                let Ok(text) = translate(&f, &style) else { continue };
                assert_eq!(Some(&text), translate(&f, &style).ok().as_ref());
                for (t, word) in keywords(&f) {
                    if t == target {
                        assert!(text.contains(word), "{target}: {}\n{text}", print(&f));
                    }
                }
            }
        }
    }
}
