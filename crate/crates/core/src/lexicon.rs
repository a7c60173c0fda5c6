//! Word forms mapped to (category, semantic tag, lambda template) triples.
//!
//! Lexicon files hold one entry per line,
//! `form <TAB> category <TAB> semtag <TAB> template`, with `#` comments.
//! Override files hold `lemma <TAB> hint <TAB> semtag` lines that take
//! precedence over the mechanical tag-assignment rules.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use thiserror::Error;

use crate::category::{matches, parse_category, print_category, sem_type_of, Category, Feature};
use crate::hol::{alpha_eq, parse_hol_expecting, print_hol, type_check, SemTag, Term};

pub const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");
pub const BUNDLED_OVERRIDES: &str = include_str!("../data/overrides.tsv");

#[derive(Debug, Clone, PartialEq)]
pub struct LexicalEntry {
    pub form: String,
    pub lemma: String,
    pub category: Category,
    pub semtag: SemTag,
    pub template: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{}", render_lines(.0))]
    Invalid(Vec<LineError>),
}

fn render_lines(errs: &[LineError]) -> String {
    errs.iter()
        .map(|e| format!("line {}: {}", e.line, e.message))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no semantic tag for '{lemma}' with POS {pos} and category {category}")]
pub struct UnknownTag {
    pub lemma: String,
    pub pos: String,
    pub category: String,
}

/// Override table keyed by (lemma, complement hint).
pub type Overrides = BTreeMap<(String, String), SemTag>;

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexicalEntry>,
    index: HashMap<String, Vec<usize>>,
    pub overrides: Overrides,
}

impl Lexicon {
    /// The lexicon and override table shipped with the crate.
    pub fn bundled() -> Lexicon {
        let mut lex = parse_lexicon(BUNDLED_LEXICON).expect("bundled lexicon is valid");
        lex.overrides = parse_overrides(BUNDLED_OVERRIDES).expect("bundled overrides are valid");
        lex
    }

    pub fn entries(&self) -> &[LexicalEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(&token.to_lowercase())
    }

    /// All entries for the lowercased token, in file order.
    pub fn lookup(&self, token: &str) -> Vec<LexicalEntry> {
        self.index
            .get(&token.to_lowercase())
            .map(|ids| ids.iter().map(|&i| self.entries[i].clone()).collect())
            .unwrap_or_default()
    }

    /// Like [`Lexicon::lookup`], falling back to synthesized open-class
    /// entries. The flag reports whether synthesis happened.
    pub fn lookup_or_synthesize(&self, token: &str) -> (Vec<LexicalEntry>, bool) {
        let found = self.lookup(token);
        if !found.is_empty() {
            return (found, false);
        }
        (synthesize(token), true)
    }

    pub fn push(&mut self, entry: LexicalEntry) {
        self.index
            .entry(entry.form.clone())
            .or_default()
            .push(self.entries.len());
        self.entries.push(entry);
    }
}

pub fn load_lexicon(path: &Path) -> Result<Lexicon, LexiconError> {
    let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_lexicon(&text)
}

pub fn load_overrides(path: &Path) -> Result<Overrides, LexiconError> {
    let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_overrides(&text)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Parses and validates a whole lexicon file. Any bad line rejects the file.
pub fn parse_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::default();
    let mut errors = Vec::new();
    for (line, raw) in content_lines(text) {
        match parse_entry(raw) {
            Ok(entry) => {
                let dup = lex.lookup(&entry.form).iter().any(|e| {
                    e.category == entry.category
                        && e.semtag == entry.semtag
                        && alpha_eq(&e.template, &entry.template)
                });
                if dup {
                    errors.push(LineError {
                        line,
                        message: format!("duplicate entry for '{}'", entry.form),
                    });
                } else {
                    lex.push(entry);
                }
            }
            Err(message) => errors.push(LineError { line, message }),
        }
    }
    if errors.is_empty() {
        Ok(lex)
    } else {
        Err(LexiconError::Invalid(errors))
    }
}

fn parse_entry(raw: &str) -> Result<LexicalEntry, String> {
    let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(format!(
            "expected 4 tab-separated fields, found {}",
            fields.len()
        ));
    }
    let form = fields[0];
    if form.is_empty() || form.to_lowercase() != form {
        return Err(format!("form '{form}' must be non-empty and lowercase"));
    }
    let category = parse_category(fields[1]).map_err(|e| format!("category: {e}"))?;
    let semtag = SemTag::from_name(fields[2])
        .ok_or_else(|| format!("unknown semantic tag '{}'", fields[2]))?;
    if !schema_exists(semtag, &category) {
        return Err(format!(
            "no template schema for {} at category {}",
            semtag, category
        ));
    }
    let expected = sem_type_of(&category);
    let template =
        parse_hol_expecting(fields[3], &expected).map_err(|e| format!("template: {e}"))?;
    let actual = type_check(&template).map_err(|e| format!("template: {e}"))?;
    if actual != expected {
        return Err(format!(
            "template has sort {actual}, category {category} requires {expected}"
        ));
    }
    if !template.is_closed() {
        return Err("template has free variables".to_string());
    }
    let lemma = lemma_of(form, semtag, &template);
    Ok(LexicalEntry {
        form: form.to_string(),
        lemma,
        category,
        semtag,
        template,
    })
}

/// Canonical text of a lexicon; the inverse of [`parse_lexicon`].
pub fn print_lexicon(lex: &Lexicon) -> String {
    let mut out = String::new();
    for e in &lex.entries {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            e.form,
            print_category(&e.category),
            e.semtag,
            print_hol(&e.template)
        ));
    }
    out
}

pub fn parse_overrides(text: &str) -> Result<Overrides, LexiconError> {
    let mut map = Overrides::new();
    let mut errors = Vec::new();
    for (line, raw) in content_lines(text) {
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if fields.len() != 3 {
            errors.push(LineError {
                line,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
            continue;
        }
        match SemTag::from_name(fields[2]) {
            Some(tag) => {
                let key = (fields[0].to_lowercase(), fields[1].to_string());
                if map.insert(key, tag).is_some() {
                    errors.push(LineError {
                        line,
                        message: format!("duplicate override for ({}, {})", fields[0], fields[1]),
                    });
                }
            }
            None => errors.push(LineError {
                line,
                message: format!("unknown semantic tag '{}'", fields[2]),
            }),
        }
    }
    if errors.is_empty() {
        Ok(map)
    } else {
        Err(LexiconError::Invalid(errors))
    }
}

pub fn print_overrides(o: &Overrides) -> String {
    o.iter()
        .map(|((l, h), t)| format!("{l}\t{h}\t{t}\n"))
        .collect()
}

// ---------------------------------------------------------------- schemas

fn cat(s: &str) -> Category {
    parse_category(s).expect("schema category")
}

fn is(pattern: &str, c: &Category) -> bool {
    matches(&cat(pattern), c)
}

fn is_modifier(c: &Category) -> bool {
    is("(S\\NP)\\(S\\NP)", c)
}

const T_IV: &str = "λS K.S(λy.⊤, λx.∃e.({P}(e) ∧ Subj(e, x) ∧ K(e)))";
const T_TV: &str = "λO S K.S(λy.⊤, λx.O(λy.⊤, λy.∃e.({P}(e) ∧ Subj(e, x) ∧ Obj(e, y) ∧ K(e))))";
const T_PASSIVE: &str = "λS K.S(λy.⊤, λx.∃e.({P}(e) ∧ Obj(e, x) ∧ K(e)))";
const T_SOME: &str = "λN F1 F2.∃x.(N(x) ∧ F1(x) ∧ F2(x))";
const T_EVERY: &str = "λN F1 F2.∀x.(N(x) ∧ F1(x) → F2(x))";
const T_NO: &str = "λN F1 F2.¬∃x.(N(x) ∧ F1(x) ∧ F2(x))";
const T_WHO: &str = "λP K.Q(λx.P(λF1 F2.F2(x), λy.⊤))";
const T_WHICH: &str = "λP1 P2 K.Q(λx.(P1(x) ∧ P2(λF1 F2.F2(x), λy.⊤)))";
const T_COPULA: &str = "λO S K.S(λy.⊤, λx.O(λy.⊤, λy.(x = y ∧ ∃e.(Be(e) ∧ Subj(e, x) ∧ K(e)))))";
const T_IDENTITY: &str = "λV.V";

fn modifier(relation: &str) -> String {
    format!("λO V S K.V(S, λe.(K(e) ∧ O(λx.⊤, λx.{relation})))")
}

fn schema_text(tag: SemTag, c: &Category, lemma: &str) -> Option<String> {
    use SemTag::*;
    let s = |t: &str| Some(t.to_string());
    match tag {
        NN | NNS | PN if is("N", c) => s("λx.{P}(x)"),
        ADJ if is("N/N", c) => s("λN x.({P}(x) ∧ N(x))"),
        ADJ if is("S_adj\\NP", c) => s("λS K.S(λy.⊤, λx.{P}(x))"),
        IV if is("S\\NP", c) => s(T_IV),
        TV if is("(S\\NP)/NP", c) => s(T_TV),
        VPSS if is("S_pss\\NP", c) => s(T_PASSIVE),
        DT if is("NP/N", c) => match lemma {
            "every" | "all" | "each" => s(T_EVERY),
            "no" => s(T_NO),
            _ => s(T_SOME),
        },
        DT if is("NP", c) => match lemma {
            "everyone" | "everybody" => s("λF1 F2.∀x.(Person(x) ∧ F1(x) → F2(x))"),
            "nobody" | "noone" => s("λF1 F2.¬∃x.(Person(x) ∧ F1(x) ∧ F2(x))"),
            _ => s("λF1 F2.∃x.(Person(x) ∧ F1(x) ∧ F2(x))"),
        },
        WHICH_INSITU if is("NP/N", c) => s(T_SOME),
        WHO | WHAT1 if *c == cat("S_wq/(S|NP)") => s(T_WHO),
        WHAT2 | WHICH | WDT if *c == cat("(S_wq/(S|NP))/N") => s(T_WHICH),
        WHEN1 if *c == cat("S_wq/S_q") => s("λS K.Q(λt.S(λe.TimeOf(e, t)))"),
        WHERE1 if *c == cat("S_wq/S_q") => s("λS K.Q(λl.S(λe.LocOf(e, l)))"),
        WHEN2 if *c == cat("S_wq/(S_q/NP)") => {
            s("λP K.Q(λt.P(λF1 F2.∃x.(F1(x) ∧ F2(x)), λe.TimeOf(e, t)))")
        }
        WHERE2 if *c == cat("S_wq/(S_q/NP)") => {
            s("λP K.Q(λl.P(λF1 F2.∃x.(F1(x) ∧ F2(x)), λe.LocOf(e, l)))")
        }
        BE1 if *c == cat("(S_q/NP)/NP") => {
            s("λP1 P2 K.P2(λy.⊤, λx.P1(λy.⊤, λy.∃e.(Be(e) ∧ Subj(e, y) ∧ K(e))))")
        }
        BE1 if is("(S\\NP)/NP", c) => s(T_COPULA),
        BE2 if *c == cat("(S_q/(S_adj\\NP))/NP") => s("λP1 P2 K.P2(P1, K)"),
        BE3 if *c == cat("(S_q/(S_pss\\NP))/NP") => s("λP1 P2 K.P2(P1, λe.K(e))"),
        DO if *c == cat("(S_q/(S_b\\NP))/NP") => s("λP1 P2 K.P2(P1, K)"),
        BE2 | BE3 | DO | TO if is("(S\\NP)/(S\\NP)", c) => s(T_IDENTITY),
        NEG if is("(S\\NP)/(S\\NP)", c) => s("λV S K.S(λy.⊤, λx.¬V(λF1 F2.F2(x), K))"),
        CV if is("(S\\NP)/(S\\NP)", c) => {
            s("λV S K.S(λy.⊤, λx.∃e.({P}(e) ∧ Subj(e, x) ∧ K(e) ∧ V(λF1 F2.F2(x), λe2.Theme(e, e2))))")
        }
        PREP_TIME if c.is_functor_over_np(is_modifier) => Some(modifier("TimeOf(e, as_time(x))")),
        PREP_LOC if c.is_functor_over_np(is_modifier) => Some(modifier("LocOf(e, as_loc(x))")),
        PREP if c.is_functor_over_np(is_modifier) => Some(modifier("{P}(e, x)")),
        PREP_TIME if *c == cat("PP/NP") => s("λO e.O(λx.⊤, λx.TimeOf(e, as_time(x)))"),
        PREP_LOC if *c == cat("PP/NP") => s("λO e.O(λx.⊤, λx.LocOf(e, as_loc(x)))"),
        PREP if *c == cat("PP/NP") => s("λO e.O(λx.⊤, λx.{P}(e, x))"),
        PREP if *c == cat("(N\\N)/NP") => s("λO N x.(N(x) ∧ O(λy.⊤, λy.{P}(x, y)))"),
        ADV if is_modifier(c) => s("λV S K.V(S, λe.(K(e) ∧ TimeOf(e, {c}:Time)))"),
        CONJ if *c == cat("(S_dcl\\S_dcl)/S_dcl") => s("λS2 S1 K.(S1(K) ∧ S2(K))"),
        _ => None,
    }
}

trait FunctorOverNp {
    fn is_functor_over_np(&self, result: fn(&Category) -> bool) -> bool;
}

impl FunctorOverNp for Category {
    fn is_functor_over_np(&self, result: fn(&Category) -> bool) -> bool {
        match self {
            Category::Functor {
                result: r,
                slash,
                arg,
            } => *slash == crate::category::Slash::Forward && **arg == Category::np() && result(r),
            _ => false,
        }
    }
}

pub fn schema_exists(tag: SemTag, c: &Category) -> bool {
    schema_text(tag, c, "x").is_some()
}

/// Predicate symbol for a lemma: alphanumeric characters, first letter upper.
pub fn predicate_name(lemma: &str) -> String {
    let clean: String = lemma.chars().filter(|c| c.is_alphanumeric()).collect();
    let mut chars = clean.chars();
    match chars.next() {
        Some(f) => f.to_uppercase().chain(chars).collect(),
        None => "Unknown".to_string(),
    }
}

/// The template shared by all entries with this tag and category, with the
/// lemma's predicate symbol filled in.
pub fn template_schema(tag: SemTag, c: &Category, lemma: &str) -> Option<Term> {
    let text = schema_text(tag, c, lemma)?;
    let constant: String = lemma
        .chars()
        .filter(|c| c.is_alphanumeric())
        .collect::<String>()
        .to_lowercase();
    let text = text
        .replace("{P}", &predicate_name(lemma))
        .replace("{c}", &constant);
    parse_hol_expecting(&text, &sem_type_of(c)).ok()
}

fn uses_predicate(tag: SemTag) -> bool {
    use SemTag::*;
    matches!(tag, NN | NNS | PN | ADJ | IV | TV | VPSS | CV | PREP)
}

fn lemma_of(form: &str, tag: SemTag, template: &Term) -> String {
    if uses_predicate(tag) {
        let builtin = [
            "Subj", "Obj", "TimeOf", "LocOf", "Theme", "Be", "Person", "as_time", "as_loc",
        ];
        if let Some(c) = template
            .constants()
            .into_iter()
            .find(|c| !builtin.contains(&c.name.as_str()))
        {
            return c.name.to_lowercase();
        }
    }
    form.to_string()
}

/// Builds an entry from a schema. Returns `None` when the tag has no schema
/// at that category.
pub fn entry_from_schema(
    form: &str,
    lemma: &str,
    category: Category,
    semtag: SemTag,
) -> Option<LexicalEntry> {
    let template = template_schema(semtag, &category, lemma)?;
    Some(LexicalEntry {
        form: form.to_lowercase(),
        lemma: lemma.to_string(),
        category,
        semtag,
        template,
    })
}

// ---------------------------------------------------------------- tag assignment

const MONTHS: [&str; 12] = [
    "january",
    "february",
    "march",
    "april",
    "may",
    "june",
    "july",
    "august",
    "september",
    "october",
    "november",
    "december",
];

/// Coarse class of a preposition's complement head, used as override key.
pub fn complement_hint(head: &str) -> Option<&'static str> {
    let h = head.to_lowercase();
    let is_date = (!h.is_empty() && h.chars().all(|c| c.is_ascii_digit()))
        || MONTHS.contains(&h.as_str())
        || matches!(h.as_str(), "yesterday" | "today" | "tomorrow" | "time");
    is_date.then_some("date")
}

/// Mechanical tag assignment from category, POS tag and lemma, consulting the
/// override table first.
pub fn assign_semtag(
    category: &Category,
    pos: &str,
    lemma: &str,
    hint: Option<&str>,
    overrides: &Overrides,
) -> Result<SemTag, UnknownTag> {
    use SemTag::*;
    let lemma = lemma.to_lowercase();
    if let Some(h) = hint {
        if let Some(tag) = overrides.get(&(lemma.clone(), h.to_string())) {
            return Ok(*tag);
        }
    }
    let c = category;
    let unknown = || UnknownTag {
        lemma: lemma.clone(),
        pos: pos.to_string(),
        category: c.to_string(),
    };
    let tag = match pos {
        "NN" | "CD" if is("N", c) => NN,
        "NNS" if is("N", c) => NNS,
        "NNP" | "NNPS" if is("N", c) => PN,
        "NN" | "DT" | "PRP" if is("NP", c) => DT,
        "JJ" | "VBN" if is("S_adj\\NP", c) || is("N/N", c) => ADJ,
        "VBN" if is("S_pss\\NP", c) => VPSS,
        "TO" if is("(S_b\\NP)/(S_b\\NP)", c) => TO,
        "IN" | "TO" => match lemma.as_str() {
            "in" | "on" | "at" => PREP_LOC,
            _ => PREP,
        },
        "DT" | "PDT" if is("NP/N", c) => DT,
        "WDT" if is("NP/N", c) => WHICH_INSITU,
        "WDT" => WHICH,
        "WP" if lemma == "who" => WHO,
        "WP" if is("(S_wq/(S|NP))/N", c) => WHAT2,
        "WP" => WHAT1,
        "WRB" => match (lemma.as_str(), is("S_wq/S_q", c)) {
            ("when", true) => WHEN1,
            ("when", false) => WHEN2,
            ("where", true) => WHERE1,
            ("where", false) => WHERE2,
            _ => return Err(unknown()),
        },
        "CC" => CONJ,
        "RB" if matches!(lemma.as_str(), "not" | "n't") => NEG,
        "RB" | "NN" if is_modifier(c) => ADV,
        p if p.starts_with("VB") || p == "MD" => {
            if lemma == "be" {
                if is("(S_q/(S_adj\\NP))/NP", c) || is("(S\\NP)/(S_adj\\NP)", c) {
                    BE2
                } else if is("(S_q/(S_pss\\NP))/NP", c) || is("(S\\NP)/(S_pss\\NP)", c) {
                    BE3
                } else {
                    BE1
                }
            } else if lemma == "do" {
                DO
            } else if is("(S\\NP)/(S\\NP)", c) {
                CV
            } else if is("S_pss\\NP", c) {
                VPSS
            } else if is("(S\\NP)/NP", c) {
                TV
            } else if is("S\\NP", c) {
                IV
            } else {
                return Err(unknown());
            }
        }
        _ => return Err(unknown()),
    };
    if schema_exists(tag, c) {
        Ok(tag)
    } else {
        Err(unknown())
    }
}

// ---------------------------------------------------------------- synthesis

/// Crude lemmatizer for synthesized entries.
pub fn stem(token: &str) -> String {
    let t = token.to_lowercase();
    for suffix in ["ied", "ies"] {
        if let Some(s) = t.strip_suffix(suffix) {
            if s.len() > 1 {
                return format!("{s}y");
            }
        }
    }
    for suffix in ["ed", "es", "s"] {
        if let Some(s) = t.strip_suffix(suffix) {
            if s.len() > 2 && !s.ends_with('s') {
                return s.to_string();
            }
        }
    }
    t
}

/// Default open-class entries for an out-of-vocabulary token: a name when
/// capitalized, otherwise noun and verb readings.
pub fn synthesize(token: &str) -> Vec<LexicalEntry> {
    if !token.chars().any(|c| c.is_alphanumeric()) {
        return Vec::new();
    }
    let form = token.to_lowercase();
    let mut out = Vec::new();
    let mut add = |lemma: &str, c: &str, tag: SemTag| {
        if let Some(e) = entry_from_schema(&form, lemma, cat(c), tag) {
            out.push(e);
        }
    };
    if token.chars().next().is_some_and(char::is_uppercase) {
        add(&form, "N", SemTag::PN);
        return out;
    }
    let lemma = stem(token);
    let past_or_third = form.ends_with('s') || form.ends_with("ed");
    let tag = if form.ends_with('s') {
        SemTag::NNS
    } else {
        SemTag::NN
    };
    add(&lemma, "N", tag);
    let f = if past_or_third {
        Feature::Dcl
    } else {
        Feature::B
    };
    add(&lemma, &format!("S_{}\\NP", f.name()), SemTag::IV);
    add(&lemma, &format!("(S_{}\\NP)/NP", f.name()), SemTag::TV);
    out
}
