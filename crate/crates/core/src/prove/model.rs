//! Tarskian evaluation over small finite domains.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::lower::{Fol, FolTerm};

pub const MAX_DOMAIN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("predicate {pred} has arity {expected} in the interpretation but is used with {found} arguments")]
    ArityMismatch {
        pred: String,
        expected: usize,
        found: usize,
    },
    #[error("constant {0} is not interpreted")]
    UnboundConstant(String),
    #[error("variable {0} is free")]
    FreeVariable(String),
    #[error("domain size {0} is outside 1..={MAX_DOMAIN}")]
    DomainSize(usize),
    #[error("constant {0} denotes an element outside the domain")]
    OutOfDomain(String),
}

/// A relation of fixed arity over `0..domain_size`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// Constants map to domain elements; predicates absent from `relations`
/// are empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Interpretation {
    pub constants: BTreeMap<String, usize>,
    pub relations: BTreeMap<String, Relation>,
}

impl Interpretation {
    pub fn set(&mut self, pred: &str, tuples: impl IntoIterator<Item = Vec<usize>>) {
        let tuples: BTreeSet<Vec<usize>> = tuples.into_iter().collect();
        let arity = tuples.iter().next().map(Vec::len).unwrap_or(0);
        self.relations
            .insert(pred.to_string(), Relation { arity, tuples });
    }

    pub fn declare(&mut self, pred: &str, arity: usize) {
        self.relations.entry(pred.to_string()).or_insert(Relation {
            arity,
            tuples: BTreeSet::new(),
        });
    }
}

pub fn model_check(
    f: &Fol,
    domain_size: usize,
    interp: &Interpretation,
) -> Result<bool, ModelError> {
    if domain_size == 0 || domain_size > MAX_DOMAIN {
        return Err(ModelError::DomainSize(domain_size));
    }
    for (c, &d) in &interp.constants {
        if d >= domain_size {
            return Err(ModelError::OutOfDomain(c.clone()));
        }
    }
    eval(f, domain_size, interp, &mut HashMap::new())
}

fn value(
    t: &FolTerm,
    interp: &Interpretation,
    env: &HashMap<String, Vec<usize>>,
) -> Result<usize, ModelError> {
    match t {
        FolTerm::Var(v) => env
            .get(v)
            .and_then(|s| s.last().copied())
            .ok_or_else(|| ModelError::FreeVariable(v.clone())),
        FolTerm::Const(c) => interp
            .constants
            .get(c)
            .copied()
            .ok_or_else(|| ModelError::UnboundConstant(c.clone())),
    }
}

fn eval(
    f: &Fol,
    n: usize,
    interp: &Interpretation,
    env: &mut HashMap<String, Vec<usize>>,
) -> Result<bool, ModelError> {
    Ok(match f {
        Fol::Top => true,
        Fol::Bottom => false,
        Fol::Atom(p, args) => {
            let vals = args
                .iter()
                .map(|a| value(a, interp, env))
                .collect::<Result<Vec<_>, _>>()?;
            match interp.relations.get(p) {
                Some(r) if r.arity != args.len() && !r.tuples.is_empty() => {
                    return Err(ModelError::ArityMismatch {
                        pred: p.clone(),
                        expected: r.arity,
                        found: args.len(),
                    })
                }
                Some(r) => r.tuples.contains(&vals),
                None => false,
            }
        }
        Fol::Eq(a, b) => value(a, interp, env)? == value(b, interp, env)?,
        Fol::Not(a) => !eval(a, n, interp, env)?,
        Fol::And(a, b) => eval(a, n, interp, env)? && eval(b, n, interp, env)?,
        Fol::Or(a, b) => eval(a, n, interp, env)? || eval(b, n, interp, env)?,
        Fol::Imp(a, b) => !eval(a, n, interp, env)? || eval(b, n, interp, env)?,
        Fol::Exists(v, b) | Fol::Forall(v, b) => {
            let want = matches!(f, Fol::Exists(..));
            let mut result = !want;
            for d in 0..n {
                env.entry(v.clone()).or_default().push(d);
                let r = eval(b, n, interp, env);
                env.get_mut(v).map(Vec::pop);
                if r? == want {
                    result = want;
                    break;
                }
            }
            result
        }
    })
}
