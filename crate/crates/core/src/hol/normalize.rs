//! Beta reduction and the logical clean-up applied after it.
//!
//! [`beta_normalize`] reduces to beta-normal form and then runs
//! [`simplify`], which removes `⊤` conjuncts, right-nests conjunctions and
//! lifts existentials out of conjunctions. Every rewrite is an equivalence,
//! and the clean-up never creates new redexes, so the result is still
//! beta-normal.

use std::collections::BTreeSet;

use super::{fresh_name, rename_bound, substitute, Term};

/// Normal-order beta reduction. Terminates on well-typed input.
pub fn beta_reduce(t: &Term) -> Term {
    match t {
        Term::App(f, a) => {
            let f = beta_reduce(f);
            match f {
                Term::Abs(v, body) => beta_reduce(&substitute(&body, &v.name, a)),
                f => Term::App(Box::new(f), Box::new(beta_reduce(a))),
            }
        }
        _ => map_children(t, beta_reduce),
    }
}

/// Beta reduction that normalizes arguments before substituting them.
fn beta_reduce_applicative_inner(t: &Term) -> Term {
    match t {
        Term::App(f, a) => {
            let f = beta_reduce_applicative_inner(f);
            let a = beta_reduce_applicative_inner(a);
            match f {
                Term::Abs(v, body) => {
                    beta_reduce_applicative_inner(&substitute(&body, &v.name, &a))
                }
                f => Term::App(Box::new(f), Box::new(a)),
            }
        }
        _ => map_children(t, beta_reduce_applicative_inner),
    }
}

/// Beta-normal form followed by [`simplify`].
pub fn beta_normalize(t: &Term) -> Term {
    simplify(&beta_reduce(t))
}

/// Same result as [`beta_normalize`] up to alpha-equivalence, reached by
/// contracting innermost redexes first.
pub fn beta_normalize_applicative(t: &Term) -> Term {
    simplify(&beta_reduce_applicative_inner(t))
}

fn map_children(t: &Term, f: impl Fn(&Term) -> Term) -> Term {
    let b = |x: &Term| Box::new(f(x));
    match t {
        Term::Var(_) | Term::Const(_) | Term::Top | Term::Bottom => t.clone(),
        Term::Abs(v, body) => Term::Abs(v.clone(), b(body)),
        Term::Exists(v, body) => Term::Exists(v.clone(), b(body)),
        Term::Forall(v, body) => Term::Forall(v.clone(), b(body)),
        Term::App(x, y) => Term::App(b(x), b(y)),
        Term::And(x, y) => Term::And(b(x), b(y)),
        Term::Or(x, y) => Term::Or(b(x), b(y)),
        Term::Imp(x, y) => Term::Imp(b(x), b(y)),
        Term::Eq(x, y) => Term::Eq(b(x), b(y)),
        Term::Not(x) => Term::Not(b(x)),
        Term::Question(x) => Term::Question(b(x)),
        Term::Wh(x) => Term::Wh(b(x)),
    }
}

/// Logical clean-up: `A ∧ ⊤ ⇒ A`, `(A ∧ B) ∧ C ⇒ A ∧ (B ∧ C)`,
/// `(∃x.A) ∧ B ⇒ ∃x.(A ∧ B)` and `A ∧ ∃x.B ⇒ ∃x.(A ∧ B)`,
/// renaming the binder when it would capture.
pub fn simplify(t: &Term) -> Term {
    match t {
        Term::And(a, b) => mk_and(simplify(a), simplify(b)),
        _ => map_children(t, simplify),
    }
}

// Both arguments are already simplified.
fn mk_and(a: Term, b: Term) -> Term {
    match (a, b) {
        (Term::Top, b) => b,
        (a, Term::Top) => a,
        (Term::Exists(v, body), b) => {
            let (v, body) = if b.free_vars().contains(&v.name) {
                let mut avoid: BTreeSet<String> = b.all_names();
                avoid.extend(body.all_names());
                let fresh = fresh_name(&v.name, &avoid);
                rename_bound(&v, &body, &fresh)
            } else {
                (v, *body)
            };
            Term::Exists(v, Box::new(mk_and(body, b)))
        }
        (Term::And(x, y), b) => mk_and(*x, mk_and(*y, b)),
        (a, Term::Exists(v, body)) => {
            let (v, body) = if a.free_vars().contains(&v.name) {
                let mut avoid: BTreeSet<String> = a.all_names();
                avoid.extend(body.all_names());
                let fresh = fresh_name(&v.name, &avoid);
                rename_bound(&v, &body, &fresh)
            } else {
                (v, *body)
            };
            Term::Exists(v, Box::new(mk_and(a, body)))
        }
        (a, b) => Term::And(Box::new(a), Box::new(b)),
    }
}
