//! CCG categories: the text notation, instance matching, and the
//! category-to-semantic-type mapping.
//!
//! The notation is the usual one: `/` and `\` are the directional slashes,
//! `|` is the "either direction" slash used only in lexicon patterns,
//! features are written as `_feat` suffixes on `S`, and a leading `^` marks
//! a barred (closed) sentence category such as `^S_wq`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Dcl,
    Q,
    Wq,
    Pol,
    B,
    Adj,
    Pss,
    None,
}

impl Feature {
    pub fn name(self) -> &'static str {
        match self {
            Feature::Dcl => "dcl",
            Feature::Q => "q",
            Feature::Wq => "wq",
            Feature::Pol => "pol",
            Feature::B => "b",
            Feature::Adj => "adj",
            Feature::Pss => "pss",
            Feature::None => "none",
        }
    }

    pub fn from_name(s: &str) -> Option<Feature> {
        Some(match s {
            "dcl" => Feature::Dcl,
            "q" => Feature::Q,
            "wq" => Feature::Wq,
            "pol" => Feature::Pol,
            "b" => Feature::B,
            "adj" => Feature::Adj,
            "pss" => Feature::Pss,
            "none" => Feature::None,
            _ => return None,
        })
    }

    /// `none` unifies with everything; other features only with themselves.
    pub fn unifies(self, other: Feature) -> bool {
        self == Feature::None || other == Feature::None || self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    S,
    NP,
    N,
    PP,
}

impl AtomKind {
    pub fn name(self) -> &'static str {
        match self {
            AtomKind::S => "S",
            AtomKind::NP => "NP",
            AtomKind::N => "N",
            AtomKind::PP => "PP",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slash {
    Forward,
    Backward,
    Either,
}

impl Slash {
    pub fn symbol(self) -> char {
        match self {
            Slash::Forward => '/',
            Slash::Backward => '\\',
            Slash::Either => '|',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Atom {
        kind: AtomKind,
        feature: Feature,
        barred: bool,
    },
    Functor {
        result: Box<Category>,
        slash: Slash,
        arg: Box<Category>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("category syntax error at {position}: {message}")]
pub struct CategoryError {
    pub position: usize,
    pub message: String,
}

impl Category {
    pub fn atom(kind: AtomKind) -> Category {
        Category::Atom {
            kind,
            feature: Feature::None,
            barred: false,
        }
    }

    pub fn s(feature: Feature) -> Category {
        Category::Atom {
            kind: AtomKind::S,
            feature,
            barred: false,
        }
    }

    pub fn s_bar(feature: Feature) -> Category {
        Category::Atom {
            kind: AtomKind::S,
            feature,
            barred: true,
        }
    }

    pub fn np() -> Category {
        Category::atom(AtomKind::NP)
    }

    pub fn n() -> Category {
        Category::atom(AtomKind::N)
    }

    pub fn pp() -> Category {
        Category::atom(AtomKind::PP)
    }

    pub fn functor(result: Category, slash: Slash, arg: Category) -> Category {
        Category::Functor {
            result: Box::new(result),
            slash,
            arg: Box::new(arg),
        }
    }

    pub fn fwd(result: Category, arg: Category) -> Category {
        Category::functor(result, Slash::Forward, arg)
    }

    pub fn bwd(result: Category, arg: Category) -> Category {
        Category::functor(result, Slash::Backward, arg)
    }

    pub fn is_barred(&self) -> bool {
        matches!(self, Category::Atom { barred: true, .. })
    }

    /// True when any `|` slash occurs anywhere inside the category.
    pub fn has_either(&self) -> bool {
        match self {
            Category::Atom { .. } => false,
            Category::Functor { result, slash, arg } => {
                *slash == Slash::Either || result.has_either() || arg.has_either()
            }
        }
    }

    /// Checks the structural invariants: bars and features only on `S`.
    pub fn well_formed(&self) -> bool {
        match self {
            Category::Atom {
                kind,
                feature,
                barred,
            } => *kind == AtomKind::S || (!barred && *feature == Feature::None),
            Category::Functor { result, arg, .. } => {
                !result.is_barred() && !arg.is_barred() && result.well_formed() && arg.well_formed()
            }
        }
    }

    pub fn parse(text: &str) -> Result<Category, CategoryError> {
        let mut p = CatParser {
            src: text.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let cat = p.category()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(cat)
    }
}

/// Parses category text; see the module docs for the notation.
pub fn parse_category(text: &str) -> Result<Category, CategoryError> {
    Category::parse(text)
}

impl FromStr for Category {
    type Err = CategoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::parse(s)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Atom {
                kind,
                feature,
                barred,
            } => {
                if *barred {
                    f.write_str("^")?;
                }
                f.write_str(kind.name())?;
                if *feature != Feature::None {
                    write!(f, "_{}", feature.name())?;
                }
                Ok(())
            }
            Category::Functor { result, slash, arg } => {
                write_operand(f, result)?;
                write!(f, "{}", slash.symbol())?;
                write_operand(f, arg)
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, c: &Category) -> fmt::Result {
    match c {
        Category::Atom { .. } => write!(f, "{c}"),
        Category::Functor { .. } => write!(f, "({c})"),
    }
}

pub fn print_category(cat: &Category) -> String {
    cat.to_string()
}

struct CatParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl CatParser<'_> {
    fn err(&self, message: &str) -> CategoryError {
        CategoryError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    // Slashes are left-associative: A/B/C = (A/B)/C.
    fn category(&mut self) -> Result<Category, CategoryError> {
        let mut left = self.primary()?;
        loop {
            self.skip_ws();
            let slash = match self.peek() {
                Some(b'/') => Slash::Forward,
                Some(b'\\') => Slash::Backward,
                Some(b'|') => Slash::Either,
                _ => return Ok(left),
            };
            self.pos += 1;
            self.skip_ws();
            let right = self.primary()?;
            left = Category::functor(left, slash, right);
        }
    }

    fn primary(&mut self) -> Result<Category, CategoryError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.category()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'^') => {
                self.pos += 1;
                let start = self.pos;
                let atom = self.atom()?;
                match atom {
                    Category::Atom {
                        kind: AtomKind::S,
                        feature,
                        ..
                    } => Ok(Category::s_bar(feature)),
                    _ => Err(CategoryError {
                        position: start,
                        message: "only S may be barred".into(),
                    }),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => self.atom(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Category, CategoryError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let kind = match name {
            "S" => AtomKind::S,
            "NP" => AtomKind::NP,
            "N" => AtomKind::N,
            "PP" => AtomKind::PP,
            _ => {
                return Err(CategoryError {
                    position: start,
                    message: format!("unknown atom '{name}'"),
                })
            }
        };
        let mut feature = Feature::None;
        if self.peek() == Some(b'_') {
            self.pos += 1;
            let fstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            }
            let fname = std::str::from_utf8(&self.src[fstart..self.pos]).unwrap_or("");
            feature = Feature::from_name(fname).ok_or_else(|| CategoryError {
                position: fstart,
                message: format!("unknown feature '{fname}'"),
            })?;
            if kind != AtomKind::S && feature != Feature::None {
                return Err(CategoryError {
                    position: fstart,
                    message: format!("feature on non-S atom {}", kind.name()),
                });
            }
        }
        Ok(Category::Atom {
            kind,
            feature,
            barred: false,
        })
    }
}

/// True iff `concrete` is an instance of `pattern`.
///
/// A `|` slash in the pattern matches either direction, a `none` feature in
/// the pattern matches any feature, and bar flags must agree exactly.
pub fn matches(pattern: &Category, concrete: &Category) -> bool {
    match (pattern, concrete) {
        (
            Category::Atom {
                kind: k1,
                feature: f1,
                barred: b1,
            },
            Category::Atom {
                kind: k2,
                feature: f2,
                barred: b2,
            },
        ) => k1 == k2 && b1 == b2 && (*f1 == Feature::None || f1 == f2),
        (
            Category::Functor {
                result: r1,
                slash: s1,
                arg: a1,
            },
            Category::Functor {
                result: r2,
                slash: s2,
                arg: a2,
            },
        ) => {
            let slash_ok = *s1 == Slash::Either || s1 == s2;
            slash_ok && matches(r1, r2) && matches(a1, a2)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Ent,
    Ev,
    Time,
    Loc,
    Prop,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::Ent => "Ent",
            Sort::Ev => "Ev",
            Sort::Time => "Time",
            Sort::Loc => "Loc",
            Sort::Prop => "Prop",
        }
    }

    pub fn from_name(s: &str) -> Option<Sort> {
        Some(match s {
            "Ent" => Sort::Ent,
            "Ev" => Sort::Ev,
            "Time" => Sort::Time,
            "Loc" => Sort::Loc,
            "Prop" => Sort::Prop,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemType {
    Base(Sort),
    Arrow(Box<SemType>, Box<SemType>),
}

impl SemType {
    pub const ENT: SemType = SemType::Base(Sort::Ent);
    pub const EV: SemType = SemType::Base(Sort::Ev);
    pub const TIME: SemType = SemType::Base(Sort::Time);
    pub const LOC: SemType = SemType::Base(Sort::Loc);
    pub const PROP: SemType = SemType::Base(Sort::Prop);

    pub fn arrow(from: SemType, to: SemType) -> SemType {
        SemType::Arrow(Box::new(from), Box::new(to))
    }

    /// `a1 -> a2 -> ... -> result`
    pub fn curried(args: &[SemType], result: SemType) -> SemType {
        args.iter()
            .rev()
            .fold(result, |acc, a| SemType::arrow(a.clone(), acc))
    }

    pub fn pred(arg: SemType) -> SemType {
        SemType::arrow(arg, SemType::PROP)
    }

    pub fn base(&self) -> Option<Sort> {
        match self {
            SemType::Base(s) => Some(*s),
            SemType::Arrow(..) => None,
        }
    }

    pub fn is_prop(&self) -> bool {
        *self == SemType::PROP
    }

    /// Type of noun phrases: a pair of continuations over entities.
    pub fn np() -> SemType {
        let p = SemType::pred(SemType::ENT);
        SemType::arrow(p.clone(), SemType::arrow(p, SemType::PROP))
    }

    /// Type of unbarred sentences: a function of the event continuation.
    pub fn sentence() -> SemType {
        SemType::arrow(SemType::pred(SemType::EV), SemType::PROP)
    }
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemType::Base(s) => f.write_str(s.name()),
            SemType::Arrow(a, b) => match **a {
                SemType::Arrow(..) => write!(f, "({a})->{b}"),
                SemType::Base(_) => write!(f, "{a}->{b}"),
            },
        }
    }
}

impl FromStr for SemType {
    type Err = String;

    /// Parses `Ent`, `Ev->Prop`, `(Ent->Prop)->Prop`, etc. `→` is accepted for `->`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.replace('→', "->");
        let toks = tokenize_type(&normalized)?;
        let mut pos = 0;
        let ty = parse_type(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(format!("trailing input in type '{s}'"));
        }
        Ok(ty)
    }
}

fn tokenize_type(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' || c == ')' {
            out.push(c.to_string());
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push("->".into());
            i += 2;
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphabetic() {
                i += 1;
            }
            out.push(chars[start..i].iter().collect());
        } else {
            return Err(format!("unexpected '{c}' in type"));
        }
    }
    Ok(out)
}

fn parse_type(toks: &[String], pos: &mut usize) -> Result<SemType, String> {
    let left = match toks.get(*pos).map(String::as_str) {
        Some("(") => {
            *pos += 1;
            let t = parse_type(toks, pos)?;
            if toks.get(*pos).map(String::as_str) != Some(")") {
                return Err("expected ')' in type".into());
            }
            *pos += 1;
            t
        }
        Some(name) => {
            let sort = Sort::from_name(name).ok_or_else(|| format!("unknown sort '{name}'"))?;
            *pos += 1;
            SemType::Base(sort)
        }
        None => return Err("unexpected end of type".into()),
    };
    if toks.get(*pos).map(String::as_str) == Some("->") {
        *pos += 1;
        let right = parse_type(toks, pos)?;
        return Ok(SemType::arrow(left, right));
    }
    Ok(left)
}

/// The category-to-type homomorphism.
pub fn sem_type_of(cat: &Category) -> SemType {
    match cat {
        Category::Atom { kind, barred, .. } => match kind {
            AtomKind::N => SemType::pred(SemType::ENT),
            AtomKind::NP => SemType::np(),
            AtomKind::PP => SemType::pred(SemType::EV),
            AtomKind::S if *barred => SemType::PROP,
            AtomKind::S => SemType::sentence(),
        },
        Category::Functor { result, arg, .. } => {
            SemType::arrow(sem_type_of(arg), sem_type_of(result))
        }
    }
}
