use std::collections::BTreeSet;

use super::syntax::{Formula, Term, Var};
use super::FormulaError;

fn subst_term(t: &Term, v: &Var, by: &Term) -> Term {
    match t {
        Term::Variable(x) if x.name == v.name => by.clone(),
        Term::Variable(_) | Term::Constant { .. } | Term::NumLiteral(_) => t.clone(),
        Term::Apply { func, args, sort } => Term::Apply {
            func: func.clone(),
            args: args.iter().map(|a| subst_term(a, v, by)).collect(),
            sort: sort.clone(),
        },
        Term::Call { fun, arg } => {
            let arg = Box::new(subst_term(arg, v, by));
            if fun.name == v.name {
                // Only a variable can stand in function position.
                match by {
                    Term::Variable(g) => Term::Call { fun: g.clone(), arg },
                    _ => Term::Call { fun: fun.clone(), arg },
                }
            } else {
                Term::Call { fun: fun.clone(), arg }
            }
        }
    }
}

fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// Capture-avoiding substitution without the sort check.
pub(crate) fn substitute_unchecked(f: &Formula, v: &Var, by: &Term) -> Formula {
    let by_vars: BTreeSet<String> = by.free_vars().into_iter().map(|x| x.name).collect();
    go(f, v, by, &by_vars)
}

fn go(f: &Formula, v: &Var, by: &Term, by_vars: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Top | Formula::Bottom => f.clone(),
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, v, by), subst_term(b, v, by)),
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| subst_term(a, v, by)).collect()),
        Formula::And(a, b) => Formula::and(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Or(a, b) => Formula::or(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Implies(a, b) => Formula::implies(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let rebuild = |x: Var, body: Formula| match f {
                Formula::Forall(..) => Formula::forall(x, body),
                _ => Formula::exists(x, body),
            };
            if x.name == v.name || !body.free_vars().iter().any(|w| w.name == v.name) {
                return f.clone();
            }
            if by_vars.contains(&x.name) {
                let mut avoid = body.all_var_names();
                avoid.extend(by_vars.iter().cloned());
                avoid.insert(v.name.clone());
                let renamed = Var::new(fresh(&x.name, &avoid), x.sort.clone());
                let body = go(body, x, &Term::Variable(renamed.clone()), &BTreeSet::from([renamed.name.clone()]));
                rebuild(renamed, go(&body, v, by, by_vars))
            } else {
                rebuild(x.clone(), go(body, v, by, by_vars))
            }
        }
    }
}

/// Replaces every free occurrence of `v` by `t`, renaming binders that would
/// capture a variable of `t`.
pub fn substitute(f: &Formula, v: &Var, t: &Term) -> Result<Formula, FormulaError> {
    let found = t.sort();
    if found != v.sort {
        return Err(FormulaError::Sort {
            symbol: v.name.clone(),
            expected: v.sort.name.clone(),
            found: found.name,
        });
    }
    Ok(substitute_unchecked(f, v, t))
}
