//! Sorted higher-order lambda terms.
//!
//! Terms carry their sorts on variables and constants, so type checking is a
//! syntax-directed walk. Bound names are irrelevant: [`alpha_eq`] is the
//! intended notion of equality between terms.

mod normalize;
mod text;
mod typing;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use crate::category::{SemType, Sort};
pub use normalize::{beta_normalize, beta_normalize_applicative, beta_reduce, simplify};
pub use text::{
    parse_hol, parse_hol_expecting, print_applicative, print_hol, print_hol_ascii, print_hol_typed,
    HolSyntaxError,
};
pub use typing::{type_check, TypeError};

/// Semantic tags that select lexical meanings.
///
/// The declaration order is the total order used for deterministic printing.
#[allow(non_camel_case_types, clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SemTag {
    NN,
    NNS,
    PN,
    TV,
    IV,
    DT,
    WDT,
    BE1,
    BE2,
    BE3,
    DO,
    WHO,
    WHAT1,
    WHAT2,
    WHICH,
    WHICH_INSITU,
    WHEN1,
    WHEN2,
    WHERE1,
    WHERE2,
    PREP_TIME,
    PREP_LOC,
    ADJ,
    VPSS,
    CONJ,
    PREP,
    NEG,
    TO,
    ADV,
    CV,
}

impl SemTag {
    pub const ALL: [SemTag; 30] = [
        SemTag::NN,
        SemTag::NNS,
        SemTag::PN,
        SemTag::TV,
        SemTag::IV,
        SemTag::DT,
        SemTag::WDT,
        SemTag::BE1,
        SemTag::BE2,
        SemTag::BE3,
        SemTag::DO,
        SemTag::WHO,
        SemTag::WHAT1,
        SemTag::WHAT2,
        SemTag::WHICH,
        SemTag::WHICH_INSITU,
        SemTag::WHEN1,
        SemTag::WHEN2,
        SemTag::WHERE1,
        SemTag::WHERE2,
        SemTag::PREP_TIME,
        SemTag::PREP_LOC,
        SemTag::ADJ,
        SemTag::VPSS,
        SemTag::CONJ,
        SemTag::PREP,
        SemTag::NEG,
        SemTag::TO,
        SemTag::ADV,
        SemTag::CV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemTag::NN => "NN",
            SemTag::NNS => "NNS",
            SemTag::PN => "PN",
            SemTag::TV => "TV",
            SemTag::IV => "IV",
            SemTag::DT => "DT",
            SemTag::WDT => "WDT",
            SemTag::BE1 => "BE1",
            SemTag::BE2 => "BE2",
            SemTag::BE3 => "BE3",
            SemTag::DO => "DO",
            SemTag::WHO => "WHO",
            SemTag::WHAT1 => "WHAT1",
            SemTag::WHAT2 => "WHAT2",
            SemTag::WHICH => "WHICH",
            SemTag::WHICH_INSITU => "WHICH_INSITU",
            SemTag::WHEN1 => "WHEN1",
            SemTag::WHEN2 => "WHEN2",
            SemTag::WHERE1 => "WHERE1",
            SemTag::WHERE2 => "WHERE2",
            SemTag::PREP_TIME => "PREP_TIME",
            SemTag::PREP_LOC => "PREP_LOC",
            SemTag::ADJ => "ADJ",
            SemTag::VPSS => "VPSS",
            SemTag::CONJ => "CONJ",
            SemTag::PREP => "PREP",
            SemTag::NEG => "NEG",
            SemTag::TO => "TO",
            SemTag::ADV => "ADV",
            SemTag::CV => "CV",
        }
    }

    pub fn from_name(s: &str) -> Option<SemTag> {
        SemTag::ALL.iter().copied().find(|t| t.name() == s)
    }

    /// Tag shown on leaves of the applicative display form. Determiner-like
    /// wh-words collapse onto `WDT`.
    pub fn display_class(self) -> SemTag {
        match self {
            SemTag::WHICH | SemTag::WHICH_INSITU | SemTag::WHAT2 => SemTag::WDT,
            other => other,
        }
    }
}

impl fmt::Display for SemTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub ty: SemType,
}

impl Var {
    pub fn new(name: impl Into<String>, ty: SemType) -> Var {
        Var {
            name: name.into(),
            ty,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Const {
    pub name: String,
    pub tag: Option<SemTag>,
    pub ty: SemType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Const(Const),
    Abs(Var, Box<Term>),
    App(Box<Term>, Box<Term>),
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Imp(Box<Term>, Box<Term>),
    Not(Box<Term>),
    Top,
    Bottom,
    Eq(Box<Term>, Box<Term>),
    Exists(Var, Box<Term>),
    Forall(Var, Box<Term>),
    /// The polar-question operator `?`.
    Question(Box<Term>),
    /// The wh-question operator `Q`.
    Wh(Box<Term>),
}

impl Term {
    pub fn var(name: &str, ty: SemType) -> Term {
        Term::Var(Var::new(name, ty))
    }

    pub fn constant(name: &str, ty: SemType) -> Term {
        Term::Const(Const {
            name: name.to_string(),
            tag: None,
            ty,
        })
    }

    pub fn tagged(name: &str, tag: SemTag, ty: SemType) -> Term {
        Term::Const(Const {
            name: name.to_string(),
            tag: Some(tag),
            ty,
        })
    }

    pub fn abs(v: Var, body: Term) -> Term {
        Term::Abs(v, Box::new(body))
    }

    pub fn lam(name: &str, ty: SemType, body: Term) -> Term {
        Term::Abs(Var::new(name, ty), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::And(Box::new(a), Box::new(b))
    }

    /// Right-nested conjunction; `⊤` for an empty list.
    pub fn conj(items: impl IntoIterator<Item = Term>) -> Term {
        let mut items: Vec<Term> = items.into_iter().collect();
        let mut acc = match items.pop() {
            Some(t) => t,
            None => return Term::Top,
        };
        while let Some(t) = items.pop() {
            acc = Term::and(t, acc);
        }
        acc
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Term, b: Term) -> Term {
        Term::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::Not(Box::new(a))
    }

    pub fn eq(a: Term, b: Term) -> Term {
        Term::Eq(Box::new(a), Box::new(b))
    }

    pub fn exists(name: &str, sort: Sort, body: Term) -> Term {
        Term::Exists(Var::new(name, SemType::Base(sort)), Box::new(body))
    }

    pub fn forall(name: &str, sort: Sort, body: Term) -> Term {
        Term::Forall(Var::new(name, SemType::Base(sort)), Box::new(body))
    }

    pub fn question(p: Term) -> Term {
        Term::Question(Box::new(p))
    }

    pub fn wh(f: Term) -> Term {
        Term::Wh(Box::new(f))
    }

    /// `Pred(a1, ..., an)` where the predicate's sort is read off the arguments.
    pub fn atom(pred: &str, args: Vec<Term>) -> Term {
        let arg_tys: Vec<SemType> = args
            .iter()
            .map(|a| typing::sort_of(a).unwrap_or(SemType::ENT))
            .collect();
        let ty = SemType::curried(&arg_tys, SemType::PROP);
        Term::apps(Term::constant(pred, ty), args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(&v.name) {
                    out.insert(v.name.clone());
                }
            }
            Term::Const(_) | Term::Top | Term::Bottom => {}
            Term::Abs(v, b) | Term::Exists(v, b) | Term::Forall(v, b) => {
                bound.push(v.name.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(a, b)
            | Term::And(a, b)
            | Term::Or(a, b)
            | Term::Imp(a, b)
            | Term::Eq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Not(a) | Term::Question(a) | Term::Wh(a) => a.collect_free(bound, out),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All names used anywhere in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Var(v) | Term::Abs(v, _) | Term::Exists(v, _) | Term::Forall(v, _) => {
                out.insert(v.name.clone());
            }
            Term::Const(c) => {
                out.insert(c.name.clone());
            }
            _ => {}
        });
        out
    }

    pub fn constants(&self) -> Vec<Const> {
        let mut out: Vec<Const> = Vec::new();
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut dyn FnMut(&Term)) {
        f(self);
        match self {
            Term::Var(_) | Term::Const(_) | Term::Top | Term::Bottom => {}
            Term::Abs(_, b) | Term::Exists(_, b) | Term::Forall(_, b) => b.visit(f),
            Term::App(a, b)
            | Term::And(a, b)
            | Term::Or(a, b)
            | Term::Imp(a, b)
            | Term::Eq(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Term::Not(a) | Term::Question(a) | Term::Wh(a) => a.visit(f),
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn contains_operators(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| {
            if matches!(t, Term::Question(_) | Term::Wh(_)) {
                found = true;
            }
        });
        found
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_hol(self))
    }
}

/// A name based on `base` that does not occur in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded counter")
}

/// Capture-avoiding substitution of `replacement` for free occurrences of `name`.
pub fn substitute(term: &Term, name: &str, replacement: &Term) -> Term {
    let repl_free = replacement.free_vars();
    subst_inner(term, name, replacement, &repl_free)
}

fn subst_inner(term: &Term, name: &str, repl: &Term, repl_free: &BTreeSet<String>) -> Term {
    let go = |t: &Term| subst_inner(t, name, repl, repl_free);
    match term {
        Term::Var(v) => {
            if v.name == name {
                repl.clone()
            } else {
                term.clone()
            }
        }
        Term::Const(_) | Term::Top | Term::Bottom => term.clone(),
        Term::Abs(v, b) | Term::Exists(v, b) | Term::Forall(v, b) => {
            if v.name == name {
                return term.clone();
            }
            if !b.free_vars().contains(name) {
                return term.clone();
            }
            let (v2, b2) = if repl_free.contains(&v.name) {
                let mut avoid = repl_free.clone();
                avoid.extend(b.all_names());
                avoid.insert(name.to_string());
                let fresh = fresh_name(&v.name, &avoid);
                let renamed = substitute(
                    b,
                    &v.name,
                    &Term::Var(Var::new(fresh.clone(), v.ty.clone())),
                );
                (Var::new(fresh, v.ty.clone()), renamed)
            } else {
                (v.clone(), (**b).clone())
            };
            let body = Box::new(go(&b2));
            match term {
                Term::Abs(..) => Term::Abs(v2, body),
                Term::Exists(..) => Term::Exists(v2, body),
                _ => Term::Forall(v2, body),
            }
        }
        Term::App(a, b) => Term::App(Box::new(go(a)), Box::new(go(b))),
        Term::And(a, b) => Term::And(Box::new(go(a)), Box::new(go(b))),
        Term::Or(a, b) => Term::Or(Box::new(go(a)), Box::new(go(b))),
        Term::Imp(a, b) => Term::Imp(Box::new(go(a)), Box::new(go(b))),
        Term::Eq(a, b) => Term::Eq(Box::new(go(a)), Box::new(go(b))),
        Term::Not(a) => Term::Not(Box::new(go(a))),
        Term::Question(a) => Term::Question(Box::new(go(a))),
        Term::Wh(a) => Term::Wh(Box::new(go(a))),
    }
}

/// Rename a binder to `new`, returning the renamed body.
pub(crate) fn rename_bound(v: &Var, body: &Term, new: &str) -> (Var, Term) {
    let nv = Var::new(new, v.ty.clone());
    let nb = substitute(body, &v.name, &Term::Var(nv.clone()));
    (nv, nb)
}

/// Equality up to renaming of bound variables. Sorts of binders and
/// constants must agree.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    alpha(a, b, &mut Vec::new(), &mut Vec::new())
}

fn alpha(a: &Term, b: &Term, ea: &mut Vec<String>, eb: &mut Vec<String>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let ix = ea.iter().rposition(|n| *n == x.name);
            let iy = eb.iter().rposition(|n| *n == y.name);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j && x.ty == y.ty,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::Top, Term::Top) | (Term::Bottom, Term::Bottom) => true,
        (Term::Abs(x, p), Term::Abs(y, q))
        | (Term::Exists(x, p), Term::Exists(y, q))
        | (Term::Forall(x, p), Term::Forall(y, q)) => {
            if std::mem::discriminant(a) != std::mem::discriminant(b) || x.ty != y.ty {
                return false;
            }
            ea.push(x.name.clone());
            eb.push(y.name.clone());
            let r = alpha(p, q, ea, eb);
            ea.pop();
            eb.pop();
            r
        }
        (Term::App(a1, a2), Term::App(b1, b2))
        | (Term::And(a1, a2), Term::And(b1, b2))
        | (Term::Or(a1, a2), Term::Or(b1, b2))
        | (Term::Imp(a1, a2), Term::Imp(b1, b2))
        | (Term::Eq(a1, a2), Term::Eq(b1, b2)) => alpha(a1, b1, ea, eb) && alpha(a2, b2, ea, eb),
        (Term::Not(x), Term::Not(y))
        | (Term::Question(x), Term::Question(y))
        | (Term::Wh(x), Term::Wh(y)) => alpha(x, y, ea, eb),
        _ => false,
    }
}
