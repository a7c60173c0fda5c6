//! Text form of HOL terms.
//!
//! Two surface styles are accepted and can be mixed: functional application
//! `Smoke(e)`, `S(λy.⊤, K)` (the `(` must touch the head), and parenthesized
//! juxtaposition `((which_WDT delegate_NN) (finish_TV (the_DT report_NN)))`.
//! Constants may carry a `_TAG` semantic-tag suffix. Binders are `λ`/`\`,
//! `∃`/`exists`, `∀`/`forall`; connectives `∧`/`&`, `∨`/`|`, `¬`/`~`,
//! `→`/`->`, `=`; constants `⊤`/`True`, `⊥`/`False`; operators `?`/`Q?`
//! and `Q(...)`.
//!
//! Sorts are optional: binders may be annotated (`λx:Ent.`), constants may be
//! annotated (`yesterday:Time`), and everything else is inferred by
//! unification. Sorts left open default to `Ent`, except results of
//! applications, which default to `Prop`.
//!
//! The functional form `Subj(e) = x` is read as the relation `Subj(e, x)`
//! (likewise `Obj`).

use std::collections::HashMap;

use thiserror::Error;

use super::{Const, SemTag, Term, Var};
use crate::category::{SemType, Sort};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("HOL syntax error at {position}: {message}")]
pub struct HolSyntaxError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, HolSyntaxError> {
    Err(HolSyntaxError {
        position,
        message: message.into(),
    })
}

/// Sorts of the built-in relational and coercion constants.
pub(crate) fn builtin_signature(name: &str) -> Option<SemType> {
    let rel = |a: SemType, b: SemType| SemType::curried(&[a, b], SemType::PROP);
    Some(match name {
        "Subj" | "Obj" => rel(SemType::EV, SemType::ENT),
        "TimeOf" => rel(SemType::EV, SemType::TIME),
        "LocOf" => rel(SemType::EV, SemType::LOC),
        "Theme" => rel(SemType::EV, SemType::EV),
        "as_time" => SemType::arrow(SemType::ENT, SemType::TIME),
        "as_loc" => SemType::arrow(SemType::ENT, SemType::LOC),
        _ => return None,
    })
}

// ---------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Lambda,
    Exists,
    Forall,
    Dot,
    Comma,
    Colon,
    LParen,
    RParen,
    LBrack,
    RBrack,
    And,
    Or,
    Not,
    Imp,
    Eq,
    Top,
    Bottom,
    Question,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
    /// No whitespace between this token and the previous one.
    adjacent: bool,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() && c != 'λ' || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<Token>, HolSyntaxError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut adjacent = false;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            adjacent = false;
            i += 1;
            continue;
        }
        let push = |tok: Tok, out: &mut Vec<Token>| {
            out.push(Token { tok, pos, adjacent });
        };
        let next = chars.get(i + 1).map(|p| p.1);
        match c {
            'λ' | '\\' => {
                push(Tok::Lambda, &mut out);
                i += 1;
            }
            '∃' => {
                push(Tok::Exists, &mut out);
                i += 1;
            }
            '∀' => {
                push(Tok::Forall, &mut out);
                i += 1;
            }
            '.' => {
                push(Tok::Dot, &mut out);
                i += 1;
            }
            ',' => {
                push(Tok::Comma, &mut out);
                i += 1;
            }
            ':' => {
                push(Tok::Colon, &mut out);
                i += 1;
            }
            '(' => {
                push(Tok::LParen, &mut out);
                i += 1;
            }
            ')' => {
                push(Tok::RParen, &mut out);
                i += 1;
            }
            '[' => {
                push(Tok::LBrack, &mut out);
                i += 1;
            }
            ']' => {
                push(Tok::RBrack, &mut out);
                i += 1;
            }
            '∧' | '&' => {
                push(Tok::And, &mut out);
                i += 1;
            }
            '∨' | '|' => {
                push(Tok::Or, &mut out);
                i += 1;
            }
            '¬' | '~' => {
                push(Tok::Not, &mut out);
                i += 1;
            }
            '→' => {
                push(Tok::Imp, &mut out);
                i += 1;
            }
            '-' if next == Some('>') => {
                push(Tok::Imp, &mut out);
                i += 2;
            }
            '=' => {
                push(Tok::Eq, &mut out);
                i += 1;
            }
            '⊤' => {
                push(Tok::Top, &mut out);
                i += 1;
            }
            '⊥' => {
                push(Tok::Bottom, &mut out);
                i += 1;
            }
            '?' => {
                push(Tok::Question, &mut out);
                i += 1;
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|p| p.1).collect();
                if word == "Q" && chars.get(i).map(|p| p.1) == Some('?') {
                    push(Tok::Question, &mut out);
                    i += 1;
                } else {
                    let tok = match word.as_str() {
                        "exists" => Tok::Exists,
                        "forall" => Tok::Forall,
                        "True" => Tok::Top,
                        "False" => Tok::Bottom,
                        _ => Tok::Ident(word),
                    };
                    push(tok, &mut out);
                }
            }
            other => return err(pos, format!("unexpected character '{other}'")),
        }
        adjacent = true;
    }
    Ok(out)
}

// ---------------------------------------------------------------- raw syntax

#[derive(Debug, Clone)]
enum Raw {
    Name {
        name: String,
        tag: Option<SemTag>,
        ann: Option<SemType>,
    },
    Lam(Vec<(String, Option<SemType>)>, Box<RawT>),
    Ex(Vec<(String, Option<SemType>)>, Box<RawT>),
    All(Vec<(String, Option<SemType>)>, Box<RawT>),
    App(Box<RawT>, Box<RawT>),
    And(Box<RawT>, Box<RawT>),
    Or(Box<RawT>, Box<RawT>),
    Imp(Box<RawT>, Box<RawT>),
    Eq(Box<RawT>, Box<RawT>),
    Not(Box<RawT>),
    Question(Box<RawT>),
    Wh(Box<RawT>),
    Top,
    Bottom,
}

#[derive(Debug, Clone)]
struct RawT {
    raw: Raw,
    pos: usize,
}

fn split_tag(word: &str) -> (String, Option<SemTag>) {
    for (i, c) in word.char_indices() {
        if c == '_' && i > 0 {
            if let Some(tag) = SemTag::from_name(&word[i + 1..]) {
                return (word[..i].to_string(), Some(tag));
            }
        }
    }
    (word.to_string(), None)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.tok.clone());
        self.i += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), HolSyntaxError> {
        if self.peek() == Some(&tok) {
            self.i += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<RawT, HolSyntaxError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Lambda) | Some(Tok::Exists) | Some(Tok::Forall) => {
                let kind = self.bump().unwrap();
                let vars = self.binder_vars()?;
                if kind == Tok::Lambda || self.peek() != Some(&Tok::LBrack) {
                    self.expect(Tok::Dot, "'.' after binder")?;
                }
                let body = Box::new(self.term()?);
                let raw = match kind {
                    Tok::Lambda => Raw::Lam(vars, body),
                    Tok::Exists => Raw::Ex(vars, body),
                    _ => Raw::All(vars, body),
                };
                Ok(RawT { raw, pos })
            }
            _ => self.imp(),
        }
    }

    fn binder_vars(&mut self) -> Result<Vec<(String, Option<SemType>)>, HolSyntaxError> {
        let mut vars = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek().cloned() {
            self.i += 1;
            let ann = if self.peek() == Some(&Tok::Colon) {
                self.i += 1;
                Some(self.sem_type(true)?)
            } else {
                None
            };
            vars.push((name, ann));
        }
        if vars.is_empty() {
            return err(self.pos(), "expected a bound variable");
        }
        Ok(vars)
    }

    /// Types: base sorts, parenthesized types, and (when `arrows`) `A->B`.
    fn sem_type(&mut self, arrows: bool) -> Result<SemType, HolSyntaxError> {
        let pos = self.pos();
        let left = match self.bump() {
            Some(Tok::LParen) => {
                let t = self.sem_type(true)?;
                self.expect(Tok::RParen, "')' in type")?;
                t
            }
            Some(Tok::Ident(name)) => match Sort::from_name(&name) {
                Some(s) => SemType::Base(s),
                None => return err(pos, format!("unknown sort '{name}'")),
            },
            _ => return err(pos, "expected a sort"),
        };
        if arrows && self.peek() == Some(&Tok::Imp) {
            self.i += 1;
            let right = self.sem_type(true)?;
            return Ok(SemType::arrow(left, right));
        }
        Ok(left)
    }

    // Right operands may be binders, which extend as far right as possible.
    fn operand(
        &mut self,
        next: fn(&mut Parser) -> Result<RawT, HolSyntaxError>,
    ) -> Result<RawT, HolSyntaxError> {
        match self.peek() {
            Some(Tok::Lambda) | Some(Tok::Exists) | Some(Tok::Forall) => self.term(),
            _ => next(self),
        }
    }

    fn imp(&mut self) -> Result<RawT, HolSyntaxError> {
        let left = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            let pos = self.pos();
            self.i += 1;
            let right = self.operand(Parser::imp)?;
            return Ok(RawT {
                raw: Raw::Imp(Box::new(left), Box::new(right)),
                pos,
            });
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<RawT, HolSyntaxError> {
        let left = self.and()?;
        if self.peek() == Some(&Tok::Or) {
            let pos = self.pos();
            self.i += 1;
            let right = self.operand(Parser::or)?;
            return Ok(RawT {
                raw: Raw::Or(Box::new(left), Box::new(right)),
                pos,
            });
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<RawT, HolSyntaxError> {
        let left = self.unary()?;
        if self.peek() == Some(&Tok::And) {
            let pos = self.pos();
            self.i += 1;
            let right = self.operand(Parser::and)?;
            return Ok(RawT {
                raw: Raw::And(Box::new(left), Box::new(right)),
                pos,
            });
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<RawT, HolSyntaxError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Not) => {
                self.i += 1;
                let inner = self.operand(Parser::unary)?;
                Ok(RawT {
                    raw: Raw::Not(Box::new(inner)),
                    pos,
                })
            }
            Some(Tok::Question) => {
                self.i += 1;
                let inner = self.operand(Parser::unary)?;
                Ok(RawT {
                    raw: Raw::Question(Box::new(inner)),
                    pos,
                })
            }
            _ => self.eq(),
        }
    }

    fn eq(&mut self) -> Result<RawT, HolSyntaxError> {
        let left = self.app()?;
        if self.peek() == Some(&Tok::Eq) {
            let pos = self.pos();
            self.i += 1;
            let right = self.app()?;
            return Ok(RawT {
                raw: relational_eq(left, right),
                pos,
            });
        }
        Ok(left)
    }

    fn app(&mut self) -> Result<RawT, HolSyntaxError> {
        let mut head = self.atomic()?;
        while self.peek() == Some(&Tok::LParen) && self.toks[self.i].adjacent {
            let pos = self.pos();
            self.i += 1;
            loop {
                let arg = self.term()?;
                head = RawT {
                    raw: Raw::App(Box::new(head), Box::new(arg)),
                    pos,
                };
                match self.bump() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RParen) => break,
                    _ => return err(self.pos(), "expected ',' or ')' in argument list"),
                }
            }
        }
        Ok(head)
    }

    fn atomic(&mut self) -> Result<RawT, HolSyntaxError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(word)) => {
                if word == "Q" && self.peek() == Some(&Tok::LParen) {
                    self.i += 1;
                    let inner = self.term()?;
                    self.expect(Tok::RParen, "')' after Q argument")?;
                    return Ok(RawT {
                        raw: Raw::Wh(Box::new(inner)),
                        pos,
                    });
                }
                let (name, tag) = split_tag(&word);
                let ann = if self.peek() == Some(&Tok::Colon) {
                    self.i += 1;
                    Some(self.sem_type(false)?)
                } else {
                    None
                };
                Ok(RawT {
                    raw: Raw::Name { name, tag, ann },
                    pos,
                })
            }
            Some(Tok::Top) => Ok(RawT { raw: Raw::Top, pos }),
            Some(Tok::Bottom) => Ok(RawT {
                raw: Raw::Bottom,
                pos,
            }),
            Some(Tok::LParen) => {
                let mut t = self.term()?;
                while self.peek() != Some(&Tok::RParen) {
                    if self.peek().is_none() {
                        return err(self.pos(), "expected ')'");
                    }
                    let apos = self.pos();
                    let arg = self.term()?;
                    t = RawT {
                        raw: Raw::App(Box::new(t), Box::new(arg)),
                        pos: apos,
                    };
                }
                self.i += 1;
                Ok(t)
            }
            Some(Tok::LBrack) => {
                let t = self.term()?;
                self.expect(Tok::RBrack, "']'")?;
                Ok(t)
            }
            Some(_) => err(pos, "unexpected token"),
            None => err(pos, "unexpected end of input"),
        }
    }
}

fn relational_eq(left: RawT, right: RawT) -> Raw {
    if let Raw::App(f, a) = &left.raw {
        if let Raw::Name { name, .. } = &f.raw {
            if name == "Subj" || name == "Obj" {
                return Raw::App(
                    Box::new(RawT {
                        raw: Raw::App(f.clone(), a.clone()),
                        pos: left.pos,
                    }),
                    Box::new(right),
                );
            }
        }
    }
    Raw::Eq(Box::new(left), Box::new(right))
}

// ---------------------------------------------------------------- inference

#[derive(Debug, Clone, PartialEq)]
enum Ty {
    Var(usize),
    Base(Sort),
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn from_sem(t: &SemType) -> Ty {
        match t {
            SemType::Base(s) => Ty::Base(*s),
            SemType::Arrow(a, b) => Ty::Arrow(Box::new(Ty::from_sem(a)), Box::new(Ty::from_sem(b))),
        }
    }
}

#[derive(Default)]
struct Infer {
    binding: Vec<Option<Ty>>,
    prop_default: Vec<bool>,
    consts: HashMap<(String, Option<SemTag>), Ty>,
}

enum Elab {
    Var(String, Ty),
    Const(String, Option<SemTag>, Ty),
    Abs(String, Ty, Box<Elab>),
    Ex(String, Ty, Box<Elab>),
    All(String, Ty, Box<Elab>),
    App(Box<Elab>, Box<Elab>),
    And(Box<Elab>, Box<Elab>),
    Or(Box<Elab>, Box<Elab>),
    Imp(Box<Elab>, Box<Elab>),
    Eq(Box<Elab>, Box<Elab>),
    Not(Box<Elab>),
    Question(Box<Elab>),
    Wh(Box<Elab>),
    Top,
    Bottom,
}

impl Infer {
    fn fresh(&mut self, prop: bool) -> Ty {
        self.binding.push(None);
        self.prop_default.push(prop);
        Ty::Var(self.binding.len() - 1)
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match t {
            Ty::Var(v) => match &self.binding[*v] {
                Some(b) => self.resolve(b),
                None => t.clone(),
            },
            Ty::Base(_) => t.clone(),
            Ty::Arrow(a, b) => Ty::Arrow(Box::new(self.resolve(a)), Box::new(self.resolve(b))),
        }
    }

    fn occurs(&self, v: usize, t: &Ty) -> bool {
        match self.resolve(t) {
            Ty::Var(w) => v == w,
            Ty::Base(_) => false,
            Ty::Arrow(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty, pos: usize) -> Result<(), HolSyntaxError> {
        let a = self.resolve(a);
        let b = self.resolve(b);
        match (&a, &b) {
            (Ty::Var(x), Ty::Var(y)) if x == y => Ok(()),
            (Ty::Var(x), other) | (other, Ty::Var(x)) => {
                if self.occurs(*x, other) {
                    return err(pos, "infinite sort");
                }
                if let Ty::Var(y) = other {
                    let p = self.prop_default[*x] || self.prop_default[*y];
                    self.prop_default[*y] = p;
                }
                self.binding[*x] = Some(other.clone());
                Ok(())
            }
            (Ty::Base(s), Ty::Base(t)) if s == t => Ok(()),
            (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => {
                self.unify(a1, a2, pos)?;
                self.unify(b1, b2, pos)
            }
            _ => err(
                pos,
                format!("sort mismatch: {} vs {}", self.show(&a), self.show(&b)),
            ),
        }
    }

    fn show(&self, t: &Ty) -> String {
        self.zonk(t).to_string()
    }

    fn zonk(&self, t: &Ty) -> SemType {
        match self.resolve(t) {
            Ty::Var(v) => {
                if self.prop_default[v] {
                    SemType::PROP
                } else {
                    SemType::ENT
                }
            }
            Ty::Base(s) => SemType::Base(s),
            Ty::Arrow(a, b) => SemType::arrow(self.zonk(&a), self.zonk(&b)),
        }
    }

    fn elab(
        &mut self,
        r: &RawT,
        env: &mut Vec<(String, Ty)>,
    ) -> Result<(Elab, Ty), HolSyntaxError> {
        let prop = Ty::Base(Sort::Prop);
        match &r.raw {
            Raw::Name { name, tag, ann } => {
                if let Some((_, ty)) = env.iter().rev().find(|(n, _)| n == name) {
                    let ty = ty.clone();
                    if tag.is_some() {
                        return err(r.pos, format!("bound variable '{name}' cannot carry a tag"));
                    }
                    if let Some(a) = ann {
                        self.unify(&ty, &Ty::from_sem(a), r.pos)?;
                    }
                    return Ok((Elab::Var(name.clone(), ty.clone()), ty));
                }
                let key = (name.clone(), *tag);
                let ty = match self.consts.get(&key) {
                    Some(t) => t.clone(),
                    None => {
                        let t = match builtin_signature(name) {
                            Some(s) => Ty::from_sem(&s),
                            None => self.fresh(false),
                        };
                        self.consts.insert(key, t.clone());
                        t
                    }
                };
                if let Some(a) = ann {
                    self.unify(&ty, &Ty::from_sem(a), r.pos)?;
                }
                Ok((Elab::Const(name.clone(), *tag, ty.clone()), ty))
            }
            Raw::Lam(vars, body) | Raw::Ex(vars, body) | Raw::All(vars, body) => {
                let is_lam = matches!(r.raw, Raw::Lam(..));
                let mut tys = Vec::new();
                for (name, ann) in vars {
                    let ty = match ann {
                        Some(a) => Ty::from_sem(a),
                        None => self.fresh(false),
                    };
                    env.push((name.clone(), ty.clone()));
                    tys.push(ty);
                }
                let (mut e, mut bt) = self.elab(body, env)?;
                env.truncate(env.len() - vars.len());
                if !is_lam {
                    self.unify(&bt, &prop, body.pos)?;
                }
                for ((name, _), ty) in vars.iter().zip(tys).rev() {
                    e = match r.raw {
                        Raw::Lam(..) => {
                            bt = Ty::Arrow(Box::new(ty.clone()), Box::new(bt));
                            Elab::Abs(name.clone(), ty, Box::new(e))
                        }
                        Raw::Ex(..) => Elab::Ex(name.clone(), ty, Box::new(e)),
                        _ => Elab::All(name.clone(), ty, Box::new(e)),
                    };
                }
                Ok((e, bt))
            }
            Raw::App(f, a) => {
                let (fe, ft) = self.elab(f, env)?;
                let (ae, at) = self.elab(a, env)?;
                let res = self.fresh(true);
                self.unify(&ft, &Ty::Arrow(Box::new(at), Box::new(res.clone())), r.pos)?;
                Ok((Elab::App(Box::new(fe), Box::new(ae)), res))
            }
            Raw::And(a, b) | Raw::Or(a, b) | Raw::Imp(a, b) => {
                let (ae, at) = self.elab(a, env)?;
                self.unify(&at, &prop, a.pos)?;
                let (be, bt) = self.elab(b, env)?;
                self.unify(&bt, &prop, b.pos)?;
                let e = match r.raw {
                    Raw::And(..) => Elab::And(Box::new(ae), Box::new(be)),
                    Raw::Or(..) => Elab::Or(Box::new(ae), Box::new(be)),
                    _ => Elab::Imp(Box::new(ae), Box::new(be)),
                };
                Ok((e, prop))
            }
            Raw::Eq(a, b) => {
                let (ae, at) = self.elab(a, env)?;
                let (be, bt) = self.elab(b, env)?;
                self.unify(&at, &bt, r.pos)?;
                Ok((Elab::Eq(Box::new(ae), Box::new(be)), prop))
            }
            Raw::Not(a) | Raw::Question(a) => {
                let (ae, at) = self.elab(a, env)?;
                self.unify(&at, &prop, a.pos)?;
                let e = match r.raw {
                    Raw::Not(_) => Elab::Not(Box::new(ae)),
                    _ => Elab::Question(Box::new(ae)),
                };
                Ok((e, prop))
            }
            Raw::Wh(f) => {
                let (fe, ft) = self.elab(f, env)?;
                let dom = self.fresh(false);
                self.unify(
                    &ft,
                    &Ty::Arrow(Box::new(dom), Box::new(prop.clone())),
                    f.pos,
                )?;
                Ok((Elab::Wh(Box::new(fe)), prop))
            }
            Raw::Top => Ok((Elab::Top, prop)),
            Raw::Bottom => Ok((Elab::Bottom, prop)),
        }
    }

    fn finish(&self, e: &Elab) -> Term {
        let b = |x: &Elab| Box::new(self.finish(x));
        match e {
            Elab::Var(n, t) => Term::Var(Var::new(n.clone(), self.zonk(t))),
            Elab::Const(n, tag, t) => Term::Const(Const {
                name: n.clone(),
                tag: *tag,
                ty: self.zonk(t),
            }),
            Elab::Abs(n, t, body) => Term::Abs(Var::new(n.clone(), self.zonk(t)), b(body)),
            Elab::Ex(n, t, body) => Term::Exists(Var::new(n.clone(), self.zonk(t)), b(body)),
            Elab::All(n, t, body) => Term::Forall(Var::new(n.clone(), self.zonk(t)), b(body)),
            Elab::App(x, y) => Term::App(b(x), b(y)),
            Elab::And(x, y) => Term::And(b(x), b(y)),
            Elab::Or(x, y) => Term::Or(b(x), b(y)),
            Elab::Imp(x, y) => Term::Imp(b(x), b(y)),
            Elab::Eq(x, y) => Term::Eq(b(x), b(y)),
            Elab::Not(x) => Term::Not(b(x)),
            Elab::Question(x) => Term::Question(b(x)),
            Elab::Wh(x) => Term::Wh(b(x)),
            Elab::Top => Term::Top,
            Elab::Bottom => Term::Bottom,
        }
    }
}

fn parse_raw(src: &str) -> Result<RawT, HolSyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
    };
    let t = p.term()?;
    if p.i != p.toks.len() {
        return err(p.pos(), "trailing input");
    }
    Ok(t)
}

/// Parses a term, inferring sorts.
pub fn parse_hol(src: &str) -> Result<Term, HolSyntaxError> {
    let raw = parse_raw(src)?;
    let mut inf = Infer::default();
    let (e, _) = inf.elab(&raw, &mut Vec::new())?;
    Ok(inf.finish(&e))
}

/// Parses a term whose overall sort must be `expected`.
pub fn parse_hol_expecting(src: &str, expected: &SemType) -> Result<Term, HolSyntaxError> {
    let raw = parse_raw(src)?;
    let mut inf = Infer::default();
    let (e, ty) = inf.elab(&raw, &mut Vec::new())?;
    inf.unify(&ty, &Ty::from_sem(expected), 0)
        .map_err(|e| HolSyntaxError {
            position: e.position,
            message: format!("term does not have sort {expected}: {}", e.message),
        })?;
    Ok(inf.finish(&e))
}

// ---------------------------------------------------------------- printing

#[derive(Clone, Copy)]
struct Style {
    ascii: bool,
    typed: bool,
}

const P_BINDER: u8 = 0;
const P_IMP: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;
const P_NOT: u8 = 4;
const P_ATOM: u8 = 6;

/// Unicode text form.
pub fn print_hol(t: &Term) -> String {
    pr(
        t,
        P_BINDER,
        Style {
            ascii: false,
            typed: false,
        },
    )
}

/// ASCII text form (`\`, `exists`, `&`, `|`, `~`, `->`, `True`, `Q?`).
pub fn print_hol_ascii(t: &Term) -> String {
    pr(
        t,
        P_BINDER,
        Style {
            ascii: true,
            typed: false,
        },
    )
}

/// Unicode text form with every binder annotated with its sort; parsing this
/// back recovers the term exactly up to alpha-equivalence.
pub fn print_hol_typed(t: &Term) -> String {
    pr(
        t,
        P_BINDER,
        Style {
            ascii: false,
            typed: true,
        },
    )
}

/// Fully parenthesized juxtaposition form, used for derivation display terms.
pub fn print_applicative(t: &Term) -> String {
    match t {
        Term::App(f, a) => format!("({} {})", print_applicative(f), print_applicative(a)),
        Term::Const(c) => const_name(c, true, false),
        _ => print_hol(t),
    }
}

fn ty_ann(t: &SemType) -> String {
    match t {
        SemType::Base(s) => s.name().to_string(),
        SemType::Arrow(..) => format!("({t})"),
    }
}

fn const_name(c: &Const, head: bool, typed: bool) -> String {
    let mut s = c.name.clone();
    if let Some(tag) = c.tag {
        s.push('_');
        s.push_str(tag.name());
    }
    if !head && (typed || c.ty != SemType::ENT) && builtin_signature(&c.name).is_none() {
        s.push(':');
        s.push_str(&ty_ann(&c.ty));
    }
    s
}

fn binder_body(body: &Term, st: Style) -> String {
    match body {
        Term::And(..) | Term::Or(..) | Term::Imp(..) => format!("({})", pr(body, P_BINDER, st)),
        _ => pr(body, P_BINDER, st),
    }
}

fn var_decl(v: &Var, st: Style) -> String {
    if st.typed {
        format!("{}:{}", v.name, ty_ann(&v.ty))
    } else {
        v.name.clone()
    }
}

fn wrap(s: String, own: u8, ctx: u8) -> String {
    if own < ctx {
        format!("({s})")
    } else {
        s
    }
}

fn pr(t: &Term, ctx: u8, st: Style) -> String {
    let (and, or, not, imp, top, bot, lam, ex, all, qm) = if st.ascii {
        (
            " & ", " | ", "~", " -> ", "True", "False", "\\", "exists ", "forall ", "Q?",
        )
    } else {
        (" ∧ ", " ∨ ", "¬", " → ", "⊤", "⊥", "λ", "∃", "∀", "?")
    };
    match t {
        Term::Var(v) => v.name.clone(),
        Term::Const(c) => const_name(c, false, st.typed),
        Term::Top => top.to_string(),
        Term::Bottom => bot.to_string(),
        Term::Abs(..) => {
            let mut names = Vec::new();
            let mut cur = t;
            while let Term::Abs(v, b) = cur {
                names.push(var_decl(v, st));
                cur = b;
            }
            let s = format!("{lam}{}.{}", names.join(" "), binder_body(cur, st));
            wrap(s, P_BINDER, ctx)
        }
        Term::Exists(v, b) => wrap(
            format!("{ex}{}.{}", var_decl(v, st), binder_body(b, st)),
            P_BINDER,
            ctx,
        ),
        Term::Forall(v, b) => wrap(
            format!("{all}{}.{}", var_decl(v, st), binder_body(b, st)),
            P_BINDER,
            ctx,
        ),
        Term::App(..) => {
            let (head, args) = t.spine();
            let head_s = match head {
                Term::Const(c) => const_name(c, true, false),
                Term::Var(v) => v.name.clone(),
                other => format!("({})", pr(other, P_BINDER, st)),
            };
            let args: Vec<String> = args.iter().map(|a| pr(a, P_BINDER, st)).collect();
            format!("{head_s}({})", args.join(", "))
        }
        Term::And(a, b) => wrap(
            format!("{}{and}{}", pr(a, P_NOT, st), pr(b, P_AND, st)),
            P_AND,
            ctx,
        ),
        Term::Or(a, b) => wrap(
            format!("{}{or}{}", pr(a, P_AND, st), pr(b, P_OR, st)),
            P_OR,
            ctx,
        ),
        Term::Imp(a, b) => wrap(
            format!("{}{imp}{}", pr(a, P_OR, st), pr(b, P_IMP, st)),
            P_IMP,
            ctx,
        ),
        Term::Not(a) => wrap(format!("{not}{}", pr(a, P_NOT, st)), P_NOT, ctx),
        Term::Eq(a, b) => wrap(
            format!("{} = {}", pr(a, P_ATOM, st), pr(b, P_ATOM, st)),
            P_NOT + 1,
            ctx,
        ),
        Term::Question(a) => format!("{qm}({})", pr(a, P_BINDER, st)),
        Term::Wh(a) => format!("Q({})", pr(a, P_BINDER, st)),
    }
}
