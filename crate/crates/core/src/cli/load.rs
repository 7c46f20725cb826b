//! Reading model, stage and formula files, and the signature each target
//! parses formulas in.

use std::fs;
use std::path::Path;

use crate::formula::{parse, Formula, FormulaError, Signature, Sort};
use crate::kripke::KripkeModel;
use crate::sheaf::{section_signature, PredTable, SheafModel};
use crate::translate::Target;
use crate::zariski::Stage;

use super::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A formula file holds one formula; lines starting with `#` are comments.
pub fn formula_text(path: &Path) -> Result<String, CliError> {
    let text = read(path)?;
    let body: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
    Ok(body.join("\n").trim().to_string())
}

pub fn formula(path: &Path, sig: &Signature) -> Result<Formula, CliError> {
    let text = formula_text(path)?;
    parse(&text, sig).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn kripke_model(path: &Path) -> Result<KripkeModel, CliError> {
    let m = KripkeModel::from_json(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let problems = crate::kripke::validate(&m);
    if problems.is_empty() {
        Ok(m)
    } else {
        Err(CliError::Invalid(problems.join("; ")))
    }
}

pub fn sheaf_model(path: &Path) -> Result<SheafModel, CliError> {
    let m = SheafModel::from_json(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let problems = crate::sheaf::validate_model(&m);
    if problems.is_empty() {
        Ok(m)
    } else {
        Err(CliError::Invalid(problems.join("; ")))
    }
}

pub fn stage(path: &Path) -> Result<Stage, CliError> {
    Stage::from_json(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Letters and `A`, `B`, `C`, `E` over `D`, plus whatever else the model
/// interprets, with arity read off its entries.
pub fn kripke_signature(m: &KripkeModel) -> Signature {
    let d = Sort::custom("D");
    let mut sig = Signature::propositional_first_order(d.kind.clone());
    for (p, table) in &m.predicates {
        if sig.predicate(p).is_some() {
            continue;
        }
        let arity = table.values().flatten().map(Vec::len).next().unwrap_or(0);
        sig = sig.with_predicate(p.clone(), vec![d.clone(); arity]);
    }
    sig
}

/// Sections of `R` as constants, the order predicates, and the model's own
/// predicates over `R`.
pub fn sheaf_signature(m: &SheafModel) -> Signature {
    let names: Vec<&str> = m.sections.keys().map(String::as_str).collect();
    let r = Sort::section();
    let mut sig = section_signature(&names);
    for p in ["P", "Q", "R", "S", "T"] {
        sig = sig.with_predicate(p, vec![]);
    }
    for (p, table) in &m.predicates {
        let arity = match table {
            PredTable::Entries(set) => set.iter().map(|(_, a)| a.len()).next(),
            PredTable::Pointwise(set) => set.iter().map(|(_, a)| a.len()).next(),
        };
        let arity = arity.unwrap_or_else(|| sig.predicate(p).map_or(0, <[Sort]>::len));
        sig = sig.with_predicate(p.clone(), vec![r.clone(); arity]);
    }
    sig
}

/// Arithmetic, with free function symbols `f` and `g` for quick experiments.
pub fn effective_signature() -> Signature {
    Signature::arithmetic()
        .with_var("f", Sort::nat_fun())
        .with_var("g", Sort::nat_fun())
}

pub fn ring_signature(stage: &Stage) -> Signature {
    let mut sig = Signature::ring();
    for c in stage.constants.keys() {
        sig.add_constant(c.clone(), Sort::ring());
    }
    sig
}

/// The signature `translate` uses for each target. With `free` set it also
/// has free symbols: `f`, `g` of sort `N^N`, or sections `a`, `b`.
pub fn translate_signature(target: Target, free: bool) -> Signature {
    match target {
        Target::Effective if free => effective_signature(),
        Target::Effective => Signature::arithmetic(),
        Target::Zariski => Signature::ring(),
        Target::Sheaf => {
            let mut sig = section_signature(if free { &["a", "b"] } else { &[] });
            for p in ["P", "Q", "R", "S", "T"] {
                sig = sig.with_predicate(p, vec![]);
            }
            let r = Sort::section();
            for p in ["A", "B", "C"] {
                sig = sig.with_predicate(p, vec![r.clone()]);
            }
            sig.with_predicate("E", vec![r.clone(), r])
        }
    }
}

/// Parses `text` for `translate`, reaching for the free symbols only when
/// the formula needs them, so bound variables keep their names.
pub fn translate_formula(text: &str, target: Target) -> Result<Formula, FormulaError> {
    parse(text, &translate_signature(target, false)).or_else(|_| parse(text, &translate_signature(target, true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::SortKind;

    #[test]
    fn signatures_infer_arity() {
        let m = crate::cli::corpus::kripke_growing_domain();
        let sig = kripke_signature(&m);
        assert_eq!(sig.predicate("A").map(<[Sort]>::len), Some(1));
        assert!(matches!(sig.predicate("A").unwrap()[0].kind, SortKind::Custom(_)));
        let s = sheaf_signature(&SheafModel::trichotomy(2));
        assert!(s.constant("a").is_some());
        assert!(parse("forall b:R. b < 0 \\/ b = 0 \\/ b > 0", &s).is_ok());
        let markov = "forall f:N^N. ~~(exists n:N. f(n) = 0) -> exists n:N. f(n) = 0";
        let bound = translate_formula(markov, Target::Effective).unwrap();
        assert!(!crate::formula::print(&bound).contains("f'"));
        assert!(translate_formula("exists n:N. f(n) = 0", Target::Effective).is_ok());
    }
}
