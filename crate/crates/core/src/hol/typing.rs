use std::collections::HashMap;

use thiserror::Error;

use super::{print_hol, Term};
use crate::category::SemType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sort mismatch in `{subterm}`: expected {expected}, found {actual}")]
pub struct TypeError {
    pub subterm: String,
    pub expected: String,
    pub actual: String,
}

fn mismatch(t: &Term, expected: impl ToString, actual: impl ToString) -> TypeError {
    TypeError {
        subterm: print_hol(t),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// Computes the unique sort of `t`, checking every subterm.
pub fn type_check(t: &Term) -> Result<SemType, TypeError> {
    check(t, &mut HashMap::new())
}

fn check(t: &Term, env: &mut HashMap<String, Vec<SemType>>) -> Result<SemType, TypeError> {
    match t {
        Term::Var(v) => {
            if let Some(bound) = env.get(&v.name).and_then(|s| s.last()) {
                if *bound != v.ty {
                    return Err(mismatch(t, bound, &v.ty));
                }
            }
            Ok(v.ty.clone())
        }
        Term::Const(c) => Ok(c.ty.clone()),
        Term::Top | Term::Bottom => Ok(SemType::PROP),
        Term::Abs(v, body) => {
            let bt = with_binding(env, &v.name, &v.ty, |env| check(body, env))?;
            Ok(SemType::arrow(v.ty.clone(), bt))
        }
        Term::Exists(v, body) | Term::Forall(v, body) => {
            if v.ty.base().is_none() || v.ty.is_prop() {
                return Err(mismatch(t, "a base sort other than Prop", &v.ty));
            }
            let bt = with_binding(env, &v.name, &v.ty, |env| check(body, env))?;
            expect_prop(body, &bt)?;
            Ok(SemType::PROP)
        }
        Term::App(f, a) => {
            let ft = check(f, env)?;
            let at = check(a, env)?;
            match ft {
                SemType::Arrow(from, to) => {
                    if *from != at {
                        return Err(mismatch(a, &from, &at));
                    }
                    Ok(*to)
                }
                other => Err(mismatch(f, "a function sort", other)),
            }
        }
        Term::And(a, b) | Term::Or(a, b) | Term::Imp(a, b) => {
            let at = check(a, env)?;
            expect_prop(a, &at)?;
            let bt = check(b, env)?;
            expect_prop(b, &bt)?;
            Ok(SemType::PROP)
        }
        Term::Not(a) | Term::Question(a) => {
            let at = check(a, env)?;
            expect_prop(a, &at)?;
            Ok(SemType::PROP)
        }
        Term::Eq(a, b) => {
            let at = check(a, env)?;
            let bt = check(b, env)?;
            if at.base().is_none() || at.is_prop() {
                return Err(mismatch(a, "a base sort other than Prop", &at));
            }
            if at != bt {
                return Err(mismatch(b, &at, &bt));
            }
            Ok(SemType::PROP)
        }
        Term::Wh(f) => {
            let ft = check(f, env)?;
            match &ft {
                SemType::Arrow(from, to) if from.base().is_some() && to.is_prop() => {
                    Ok(SemType::PROP)
                }
                _ => Err(mismatch(f, "Base->Prop", &ft)),
            }
        }
    }
}

fn expect_prop(t: &Term, ty: &SemType) -> Result<(), TypeError> {
    if ty.is_prop() {
        Ok(())
    } else {
        Err(mismatch(t, SemType::PROP, ty))
    }
}

fn with_binding<R>(
    env: &mut HashMap<String, Vec<SemType>>,
    name: &str,
    ty: &SemType,
    f: impl FnOnce(&mut HashMap<String, Vec<SemType>>) -> R,
) -> R {
    env.entry(name.to_string()).or_default().push(ty.clone());
    let r = f(env);
    if let Some(stack) = env.get_mut(name) {
        stack.pop();
    }
    r
}

/// Sort of a term without checking its subterms. Returns `None` for
/// ill-sorted applications.
pub(crate) fn sort_of(t: &Term) -> Option<SemType> {
    match t {
        Term::Var(v) => Some(v.ty.clone()),
        Term::Const(c) => Some(c.ty.clone()),
        Term::Abs(v, b) => Some(SemType::arrow(v.ty.clone(), sort_of(b)?)),
        Term::App(f, _) => match sort_of(f)? {
            SemType::Arrow(_, to) => Some(*to),
            SemType::Base(_) => None,
        },
        _ => Some(SemType::PROP),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Sort;

    #[test]
    fn wh_question_is_prop() {
        let body = Term::exists(
            "e",
            Sort::Ev,
            Term::and(
                Term::atom("Smoke", vec![Term::var("e", SemType::EV)]),
                Term::atom(
                    "Subj",
                    vec![Term::var("e", SemType::EV), Term::var("x", SemType::ENT)],
                ),
            ),
        );
        let q = Term::wh(Term::lam("x", SemType::ENT, body));
        assert_eq!(type_check(&q).unwrap(), SemType::PROP);
    }

    #[test]
    fn cross_sort_equality_rejected() {
        let t = Term::eq(Term::var("x", SemType::ENT), Term::var("e", SemType::EV));
        let err = type_check(&t).unwrap_err();
        assert_eq!(err.expected, "Ent");
        assert_eq!(err.actual, "Ev");
    }

    #[test]
    fn application_mismatch_names_subterm() {
        let f = Term::constant("Smoke", SemType::pred(SemType::EV));
        let t = Term::app(f, Term::var("x", SemType::ENT));
        let err = type_check(&t).unwrap_err();
        assert_eq!(err.subterm, "x");
    }

    #[test]
    fn question_operand_must_be_prop() {
        let t = Term::question(Term::var("x", SemType::ENT));
        assert!(type_check(&t).is_err());
    }
}
