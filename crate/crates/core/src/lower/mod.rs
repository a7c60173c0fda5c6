//! From composed HOL terms to first-order formulas.
//!
//! Question operators are expanded, sorts are erased, and the coercions
//! `as_time`/`as_loc` disappear. Individual sorts leave no trace in the
//! output, so [`sort_erasure_violations`] exists to confirm that no
//! equation ever joins terms that were of different sorts.

mod fol;
mod tptp;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::category::{SemType, Sort};
use crate::derive::DerivationTree;
use crate::hol::{beta_normalize, fresh_name, print_hol, SemTag, Term};
use crate::lexicon::predicate_name;

pub use fol::{parse_fol, print_fol, Fol, FolSyntaxError, FolTerm};
pub use tptp::{mangle, to_tptp, tptp_formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerError {
    #[error("not first-order: {0}")]
    NotFirstOrder(String),
    #[error("not a question: {0}")]
    NotAQuestion(String),
    #[error("predicate {pred} used with arities {arities:?}")]
    ArityClash { pred: String, arities: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionKind {
    Polar,
    Wh,
}

impl QuestionKind {
    pub fn name(self) -> &'static str {
        match self {
            QuestionKind::Polar => "polar",
            QuestionKind::Wh => "wh",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuestionBody {
    pub kind: QuestionKind,
    pub body: Fol,
}

/// Replaces `?(P)` with `P ∨ ¬P` and `Q(f)` with `∃x.f(x)`.
pub fn expand_operators(t: &Term) -> Term {
    match t {
        Term::Question(p) => {
            let p = expand_operators(p);
            Term::or(p.clone(), Term::not(p))
        }
        Term::Wh(f) => {
            let f = expand_operators(f);
            match f {
                Term::Abs(v, body) => {
                    let sort = v.ty.base().unwrap_or(Sort::Ent);
                    beta_normalize(&Term::exists(&v.name, sort, *body))
                }
                other => {
                    let dom = match type_of_fun(&other) {
                        Some(SemType::Arrow(a, _)) => *a,
                        _ => SemType::ENT,
                    };
                    let x = fresh_name("x", &other.all_names());
                    let sort = dom.base().unwrap_or(Sort::Ent);
                    let app = Term::app(other, Term::var(&x, dom));
                    beta_normalize(&Term::exists(&x, sort, app))
                }
            }
        }
        Term::Var(_) | Term::Const(_) | Term::Top | Term::Bottom => t.clone(),
        Term::Abs(v, b) => Term::Abs(v.clone(), Box::new(expand_operators(b))),
        Term::Exists(v, b) => Term::Exists(v.clone(), Box::new(expand_operators(b))),
        Term::Forall(v, b) => Term::Forall(v.clone(), Box::new(expand_operators(b))),
        Term::App(a, b) => Term::app(expand_operators(a), expand_operators(b)),
        Term::And(a, b) => Term::and(expand_operators(a), expand_operators(b)),
        Term::Or(a, b) => Term::or(expand_operators(a), expand_operators(b)),
        Term::Imp(a, b) => Term::imp(expand_operators(a), expand_operators(b)),
        Term::Eq(a, b) => Term::eq(expand_operators(a), expand_operators(b)),
        Term::Not(a) => Term::not(expand_operators(a)),
    }
}

fn type_of_fun(t: &Term) -> Option<SemType> {
    crate::hol::type_check(t).ok()
}

/// Sort-erased first-order formula for a closed, operator-free,
/// beta-normal proposition.
pub fn to_fol(t: &Term) -> Result<Fol, LowerError> {
    if let Some(v) = t.free_vars().into_iter().next() {
        return Err(LowerError::NotFirstOrder(format!(
            "free variable {v} in {}",
            print_hol(t)
        )));
    }
    lower(t)
}

fn nfo(t: &Term, what: &str) -> LowerError {
    LowerError::NotFirstOrder(format!("{what}: {}", print_hol(t)))
}

fn lower(t: &Term) -> Result<Fol, LowerError> {
    Ok(match t {
        Term::Top => Fol::Top,
        Term::Bottom => Fol::Bottom,
        Term::And(a, b) => Fol::and(lower(a)?, lower(b)?),
        Term::Or(a, b) => Fol::or(lower(a)?, lower(b)?),
        Term::Imp(a, b) => Fol::imp(lower(a)?, lower(b)?),
        Term::Not(a) => Fol::not(lower(a)?),
        Term::Eq(a, b) => Fol::Eq(lower_term(a)?, lower_term(b)?),
        Term::Exists(v, b) | Term::Forall(v, b) => {
            if v.ty.base().is_none() || v.ty == SemType::PROP {
                return Err(nfo(t, "quantifier over a non-individual sort"));
            }
            let body = lower(b)?;
            if matches!(t, Term::Exists(..)) {
                Fol::exists(&v.name, body)
            } else {
                Fol::forall(&v.name, body)
            }
        }
        Term::Abs(..) => return Err(nfo(t, "residual lambda")),
        Term::Question(_) | Term::Wh(_) => return Err(nfo(t, "unexpanded question operator")),
        Term::Var(_) => return Err(nfo(t, "propositional variable")),
        Term::Const(c) => {
            if c.ty != SemType::PROP {
                return Err(nfo(t, "non-propositional constant in formula position"));
            }
            Fol::Atom(c.name.clone(), Vec::new())
        }
        Term::App(..) => {
            let (head, args) = t.spine();
            let Term::Const(c) = head else {
                return Err(nfo(t, "higher-order application"));
            };
            let args = args
                .into_iter()
                .map(lower_term)
                .collect::<Result<Vec<_>, _>>()?;
            Fol::Atom(c.name.clone(), args)
        }
    })
}

fn is_coercion(name: &str) -> bool {
    name == "as_time" || name == "as_loc"
}

fn lower_term(t: &Term) -> Result<FolTerm, LowerError> {
    match t {
        Term::Var(v) if v.ty.base().is_some() && v.ty != SemType::PROP => {
            Ok(FolTerm::Var(v.name.clone()))
        }
        Term::Const(c) if c.ty.base().is_some() && c.ty != SemType::PROP => {
            Ok(FolTerm::Const(c.name.clone()))
        }
        Term::App(f, a) => match &**f {
            Term::Const(c) if is_coercion(&c.name) => lower_term(a),
            _ => Err(nfo(t, "complex argument")),
        },
        _ => Err(nfo(t, "non-individual argument")),
    }
}

/// The formula whose proof or refutation answers the question.
pub fn question_body(t: &Term) -> Result<QuestionBody, LowerError> {
    match t {
        Term::Question(p) => Ok(QuestionBody {
            kind: QuestionKind::Polar,
            body: to_fol(&beta_normalize(&expand_operators(p)))?,
        }),
        Term::Wh(_) => Ok(QuestionBody {
            kind: QuestionKind::Wh,
            body: to_fol(&expand_operators(t))?,
        }),
        _ => Err(LowerError::NotAQuestion(print_hol(t))),
    }
}

/// Lowers a declarative term, expanding any embedded operators first.
pub fn lower_statement(t: &Term) -> Result<Fol, LowerError> {
    to_fol(&beta_normalize(&expand_operators(t)))
}

/// Predicate symbols contributed by proper-name leaves.
pub fn name_predicates(tree: &DerivationTree) -> BTreeSet<String> {
    tree.leaves()
        .into_iter()
        .filter_map(|entry| (entry.semtag == SemTag::PN).then(|| predicate_name(&entry.lemma)))
        .collect()
}

/// `∀x.∀y.((N(x) ∧ N(y)) → x = y)`: a name picks out at most one individual.
pub fn name_uniqueness_axiom(pred: &str) -> Fol {
    let x = FolTerm::Var("x".into());
    let y = FolTerm::Var("y".into());
    Fol::forall(
        "x",
        Fol::forall(
            "y",
            Fol::imp(
                Fol::and(Fol::atom(pred, &[x.clone()]), Fol::atom(pred, &[y.clone()])),
                Fol::Eq(x, y),
            ),
        ),
    )
}

/// `N(c)` and `∀x.(N(x) → x = c)`, tying a name predicate to a constant.
pub fn constant_bridge_axioms(pred: &str, constant: &str) -> Vec<Fol> {
    let c = FolTerm::Const(constant.to_string());
    let x = FolTerm::Var("x".into());
    vec![
        Fol::atom(pred, &[c.clone()]),
        Fol::forall("x", Fol::imp(Fol::atom(pred, &[x.clone()]), Fol::Eq(x, c))),
    ]
}

/// Every predicate must keep one arity across the whole problem.
pub fn check_arities(formulas: &[Fol]) -> Result<(), LowerError> {
    let mut all: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for f in formulas {
        f.predicates_into(&mut all);
    }
    match all.into_iter().find(|(_, a)| a.len() > 1) {
        Some((pred, arities)) => Err(LowerError::ArityClash {
            pred,
            arities: arities.into_iter().collect(),
        }),
        None => Ok(()),
    }
}

/// Equations whose two sides carry different sorts once coercions are
/// stripped. An empty result means erasure is safe for `t`.
pub fn sort_erasure_violations(t: &Term) -> Vec<String> {
    let mut out = Vec::new();
    erasure_walk(t, &mut HashMap::new(), &mut out);
    out
}

fn erased_sort(t: &Term, env: &HashMap<String, Vec<SemType>>) -> Option<SemType> {
    match t {
        Term::Var(v) => Some(
            env.get(&v.name)
                .and_then(|s| s.last().cloned())
                .unwrap_or_else(|| v.ty.clone()),
        ),
        Term::Const(c) => Some(c.ty.clone()),
        Term::App(f, a) => match &**f {
            Term::Const(c) if is_coercion(&c.name) => erased_sort(a, env),
            _ => None,
        },
        _ => None,
    }
}

fn erasure_walk(t: &Term, env: &mut HashMap<String, Vec<SemType>>, out: &mut Vec<String>) {
    match t {
        Term::Eq(a, b) => {
            let (sa, sb) = (erased_sort(a, env), erased_sort(b, env));
            if sa != sb {
                out.push(format!(
                    "{} relates {} and {}",
                    print_hol(t),
                    sa.map(|s| s.to_string()).unwrap_or_else(|| "?".into()),
                    sb.map(|s| s.to_string()).unwrap_or_else(|| "?".into())
                ));
            }
        }
        Term::Abs(v, b) | Term::Exists(v, b) | Term::Forall(v, b) => {
            env.entry(v.name.clone()).or_default().push(v.ty.clone());
            erasure_walk(b, env, out);
            env.get_mut(&v.name).map(Vec::pop);
        }
        Term::App(a, b) | Term::And(a, b) | Term::Or(a, b) | Term::Imp(a, b) => {
            erasure_walk(a, env, out);
            erasure_walk(b, env, out);
        }
        Term::Not(a) | Term::Question(a) | Term::Wh(a) => erasure_walk(a, env, out),
        Term::Var(_) | Term::Const(_) | Term::Top | Term::Bottom => {}
    }
}
