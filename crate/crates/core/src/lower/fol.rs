//! First-order formulas and their ASCII text form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FolTerm {
    Var(String),
    Const(String),
}

impl FolTerm {
    pub fn name(&self) -> &str {
        match self {
            FolTerm::Var(n) | FolTerm::Const(n) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Fol {
    Atom(String, Vec<FolTerm>),
    Eq(FolTerm, FolTerm),
    And(Box<Fol>, Box<Fol>),
    Or(Box<Fol>, Box<Fol>),
    Imp(Box<Fol>, Box<Fol>),
    Not(Box<Fol>),
    Top,
    Bottom,
    Exists(String, Box<Fol>),
    Forall(String, Box<Fol>),
}

impl Fol {
    pub fn atom(pred: &str, args: &[FolTerm]) -> Fol {
        Fol::Atom(pred.to_string(), args.to_vec())
    }

    pub fn and(a: Fol, b: Fol) -> Fol {
        Fol::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Fol, b: Fol) -> Fol {
        Fol::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Fol, b: Fol) -> Fol {
        Fol::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Fol) -> Fol {
        Fol::Not(Box::new(a))
    }

    pub fn exists(v: &str, body: Fol) -> Fol {
        Fol::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall(v: &str, body: Fol) -> Fol {
        Fol::Forall(v.to_string(), Box::new(body))
    }

    /// Right-nested conjunction; `⊤` when empty.
    pub fn conj(items: Vec<Fol>) -> Fol {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Fol::Top,
            Some(last) => it.fold(last, |acc, f| Fol::and(f, acc)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let term = |t: &FolTerm, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            if let FolTerm::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Fol::Atom(_, args) => args.iter().for_each(|a| term(a, bound, out)),
            Fol::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Fol::And(a, b) | Fol::Or(a, b) | Fol::Imp(a, b) => {
                a.free_into(bound, out);
                b.free_into(bound, out);
            }
            Fol::Not(a) => a.free_into(bound, out),
            Fol::Top | Fol::Bottom => {}
            Fol::Exists(v, b) | Fol::Forall(v, b) => {
                bound.push(v.clone());
                b.free_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Constant symbols, sorted.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| {
            if let FolTerm::Const(c) = t {
                out.insert(c.clone());
            }
        });
        out
    }

    fn visit_terms(&self, f: &mut dyn FnMut(&FolTerm)) {
        match self {
            Fol::Atom(_, args) => args.iter().for_each(|a| f(a)),
            Fol::Eq(a, b) => {
                f(a);
                f(b);
            }
            Fol::And(a, b) | Fol::Or(a, b) | Fol::Imp(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Fol::Not(a) | Fol::Exists(_, a) | Fol::Forall(_, a) => a.visit_terms(f),
            Fol::Top | Fol::Bottom => {}
        }
    }

    /// Predicate symbols with their arities.
    pub fn predicates(&self) -> BTreeMap<String, BTreeSet<usize>> {
        let mut out: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        self.predicates_into(&mut out);
        out
    }

    pub(crate) fn predicates_into(&self, out: &mut BTreeMap<String, BTreeSet<usize>>) {
        match self {
            Fol::Atom(p, args) => {
                out.entry(p.clone()).or_default().insert(args.len());
            }
            Fol::And(a, b) | Fol::Or(a, b) | Fol::Imp(a, b) => {
                a.predicates_into(out);
                b.predicates_into(out);
            }
            Fol::Not(a) | Fol::Exists(_, a) | Fol::Forall(_, a) => a.predicates_into(out),
            Fol::Eq(..) | Fol::Top | Fol::Bottom => {}
        }
    }

    /// Replaces free occurrences of variable `v` by `t`. `t` must be a
    /// constant or a variable that is not bound anywhere in `self`.
    pub fn subst(&self, v: &str, t: &FolTerm) -> Fol {
        let st = |x: &FolTerm| match x {
            FolTerm::Var(n) if n == v => t.clone(),
            other => other.clone(),
        };
        match self {
            Fol::Atom(p, args) => Fol::Atom(p.clone(), args.iter().map(st).collect()),
            Fol::Eq(a, b) => Fol::Eq(st(a), st(b)),
            Fol::And(a, b) => Fol::and(a.subst(v, t), b.subst(v, t)),
            Fol::Or(a, b) => Fol::or(a.subst(v, t), b.subst(v, t)),
            Fol::Imp(a, b) => Fol::imp(a.subst(v, t), b.subst(v, t)),
            Fol::Not(a) => Fol::not(a.subst(v, t)),
            Fol::Top | Fol::Bottom => self.clone(),
            Fol::Exists(w, b) if w == v => self.clone(),
            Fol::Forall(w, b) if w == v => {
                let _ = b;
                self.clone()
            }
            Fol::Exists(w, b) => Fol::exists(w, b.subst(v, t)),
            Fol::Forall(w, b) => Fol::forall(w, b.subst(v, t)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Fol::Atom(..) | Fol::Eq(..) | Fol::Top | Fol::Bottom => 1,
            Fol::And(a, b) | Fol::Or(a, b) | Fol::Imp(a, b) => 1 + a.size() + b.size(),
            Fol::Not(a) | Fol::Exists(_, a) | Fol::Forall(_, a) => 1 + a.size(),
        }
    }
}

const P_BINDER: u8 = 0;
const P_IMP: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;
const P_NOT: u8 = 4;

fn wrap(s: String, own: u8, ctx: u8) -> String {
    if own < ctx {
        format!("({s})")
    } else {
        s
    }
}

fn binder_body(b: &Fol) -> String {
    match b {
        Fol::And(..) | Fol::Or(..) | Fol::Imp(..) => format!("({})", pr(b, P_BINDER)),
        _ => pr(b, P_BINDER),
    }
}

fn pr(f: &Fol, ctx: u8) -> String {
    match f {
        Fol::Atom(p, args) if args.is_empty() => p.clone(),
        Fol::Atom(p, args) => {
            let a: Vec<&str> = args.iter().map(FolTerm::name).collect();
            format!("{p}({})", a.join(", "))
        }
        Fol::Eq(a, b) => format!("{} = {}", a.name(), b.name()),
        Fol::Top => "True".to_string(),
        Fol::Bottom => "False".to_string(),
        Fol::Not(a) => wrap(format!("~{}", pr(a, P_NOT)), P_NOT, ctx),
        Fol::And(a, b) => wrap(format!("{} & {}", pr(a, P_NOT), pr(b, P_AND)), P_AND, ctx),
        Fol::Or(a, b) => wrap(format!("{} | {}", pr(a, P_AND), pr(b, P_OR)), P_OR, ctx),
        Fol::Imp(a, b) => wrap(format!("{} -> {}", pr(a, P_OR), pr(b, P_IMP)), P_IMP, ctx),
        Fol::Exists(v, b) => wrap(format!("exists {v}. {}", binder_body(b)), P_BINDER, ctx),
        Fol::Forall(v, b) => wrap(format!("forall {v}. {}", binder_body(b)), P_BINDER, ctx),
    }
}

/// ASCII text form: `exists x. (Man(x) & ~Smoke(x))`.
pub fn print_fol(f: &Fol) -> String {
    pr(f, P_BINDER)
}

impl fmt::Display for Fol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_fol(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("FOL syntax error at {position}: {message}")]
pub struct FolSyntaxError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Not,
    Imp,
    Eq,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, FolSyntaxError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '~' | '¬' => Some(Tok::Not),
            '→' => Some(Tok::Imp),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c == '-' && chars.get(i + 1).map(|p| p.1) == Some('>') {
            out.push((Tok::Imp, pos));
            i += 2;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'')
            {
                i += 1;
            }
            out.push((
                Tok::Ident(chars[start..i].iter().map(|p| p.1).collect()),
                pos,
            ));
        } else {
            return Err(FolSyntaxError {
                position: pos,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
    bound: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.end)
    }

    fn err<T>(&self, message: &str) -> Result<T, FolSyntaxError> {
        Err(FolSyntaxError {
            position: self.pos(),
            message: message.to_string(),
        })
    }

    fn formula(&mut self) -> Result<Fol, FolSyntaxError> {
        if let Some(Tok::Ident(w)) = self.peek() {
            let w = w.clone();
            if w == "exists" || w == "forall" || w == "∃" || w == "∀" {
                self.i += 1;
                let v = match self.peek() {
                    Some(Tok::Ident(v)) => v.clone(),
                    _ => return self.err("expected a variable"),
                };
                self.i += 1;
                if self.peek() != Some(&Tok::Dot) {
                    return self.err("expected '.'");
                }
                self.i += 1;
                self.bound.push(v.clone());
                let body = self.formula()?;
                self.bound.pop();
                return Ok(if w == "exists" || w == "∃" {
                    Fol::exists(&v, body)
                } else {
                    Fol::forall(&v, body)
                });
            }
        }
        self.imp()
    }

    fn right(
        &mut self,
        next: fn(&mut Parser) -> Result<Fol, FolSyntaxError>,
    ) -> Result<Fol, FolSyntaxError> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == "exists" || w == "forall" => self.formula(),
            _ => next(self),
        }
    }

    fn imp(&mut self) -> Result<Fol, FolSyntaxError> {
        let a = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            self.i += 1;
            let b = self.right(Parser::imp)?;
            return Ok(Fol::imp(a, b));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<Fol, FolSyntaxError> {
        let a = self.and()?;
        if self.peek() == Some(&Tok::Or) {
            self.i += 1;
            let b = self.right(Parser::or)?;
            return Ok(Fol::or(a, b));
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<Fol, FolSyntaxError> {
        let a = self.unary()?;
        if self.peek() == Some(&Tok::And) {
            self.i += 1;
            let b = self.right(Parser::and)?;
            return Ok(Fol::and(a, b));
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<Fol, FolSyntaxError> {
        if self.peek() == Some(&Tok::Not) {
            self.i += 1;
            let a = self.right(Parser::unary)?;
            return Ok(Fol::not(a));
        }
        self.atomic()
    }

    fn term(&self, name: String) -> FolTerm {
        if self.bound.contains(&name) {
            FolTerm::Var(name)
        } else {
            FolTerm::Const(name)
        }
    }

    fn atomic(&mut self) -> Result<Fol, FolSyntaxError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.i += 1;
                let f = self.formula()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(f)
            }
            Some(Tok::Ident(w)) => {
                self.i += 1;
                match w.as_str() {
                    "True" => return Ok(Fol::Top),
                    "False" => return Ok(Fol::Bottom),
                    _ => {}
                }
                if self.peek() == Some(&Tok::Eq) {
                    self.i += 1;
                    let rhs = match self.peek() {
                        Some(Tok::Ident(r)) => r.clone(),
                        _ => return self.err("expected a term after '='"),
                    };
                    self.i += 1;
                    return Ok(Fol::Eq(self.term(w), self.term(rhs)));
                }
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.i += 1;
                    loop {
                        match self.peek().cloned() {
                            Some(Tok::Ident(a)) => {
                                self.i += 1;
                                args.push(self.term(a));
                            }
                            _ => return self.err("expected an argument"),
                        }
                        match self.peek() {
                            Some(Tok::Comma) => self.i += 1,
                            Some(Tok::RParen) => {
                                self.i += 1;
                                break;
                            }
                            _ => return self.err("expected ',' or ')'"),
                        }
                    }
                }
                Ok(Fol::Atom(w, args))
            }
            _ => self.err("expected a formula"),
        }
    }
}

/// Parses the ASCII form. Identifiers bound by a quantifier are variables;
/// all other argument identifiers are constants.
pub fn parse_fol(src: &str) -> Result<Fol, FolSyntaxError> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        end: src.len(),
        bound: Vec::new(),
    };
    let f = p.formula()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}
