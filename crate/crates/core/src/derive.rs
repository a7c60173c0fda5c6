//! CCG derivations: combinatory rules, a packed CKY chart, and import of
//! externally produced trees.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::category::{matches, parse_category, AtomKind, Category, Feature, Slash};
use crate::hol::SemTag;
use crate::lexicon::{
    assign_semtag, complement_hint, entry_from_schema, stem, LexicalEntry, Lexicon,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryRule {
    FA,
    BA,
    FC,
    BC,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryRule {
    TR,
    QC,
    QI,
}

impl BinaryRule {
    pub const ALL: [BinaryRule; 4] = [
        BinaryRule::FA,
        BinaryRule::BA,
        BinaryRule::FC,
        BinaryRule::BC,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryRule::FA => ">",
            BinaryRule::BA => "<",
            BinaryRule::FC => ">B",
            BinaryRule::BC => "<B",
        }
    }

    /// Accepts internal symbols and common external rule names.
    pub fn from_name(s: &str) -> Option<BinaryRule> {
        Some(match s.to_ascii_lowercase().as_str() {
            "fa" | ">" => BinaryRule::FA,
            "ba" | "<" => BinaryRule::BA,
            "fc" | ">b" => BinaryRule::FC,
            "bc" | "<b" => BinaryRule::BC,
            _ => return None,
        })
    }
}

impl UnaryRule {
    pub const ALL: [UnaryRule; 3] = [UnaryRule::TR, UnaryRule::QC, UnaryRule::QI];

    pub fn symbol(self) -> &'static str {
        match self {
            UnaryRule::TR => "TR",
            UnaryRule::QC => "QC",
            UnaryRule::QI => "?I",
        }
    }

    pub fn from_name(s: &str) -> Option<UnaryRule> {
        Some(match s.to_ascii_lowercase().as_str() {
            "tr" | "lex" => UnaryRule::TR,
            "qc" => UnaryRule::QC,
            "qi" | "?i" => UnaryRule::QI,
            _ => return None,
        })
    }
}

impl fmt::Display for BinaryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl fmt::Display for UnaryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Binary combinators. Barred categories never combine.
pub fn apply_binary(rule: BinaryRule, left: &Category, right: &Category) -> Option<Category> {
    if left.is_barred() || right.is_barred() {
        return None;
    }
    let split = |c: &Category, want: Slash| match c {
        Category::Functor { result, slash, arg } if *slash == want => {
            Some(((**result).clone(), (**arg).clone()))
        }
        _ => None,
    };
    match rule {
        BinaryRule::FA => {
            let (x, y) = split(left, Slash::Forward)?;
            matches(&y, right).then_some(x)
        }
        BinaryRule::BA => {
            let (x, y) = split(right, Slash::Backward)?;
            matches(&y, left).then_some(x)
        }
        BinaryRule::FC => {
            let (x, y) = split(left, Slash::Forward)?;
            let (y2, z) = split(right, Slash::Forward)?;
            matches(&y, &y2).then(|| Category::fwd(x, z))
        }
        BinaryRule::BC => {
            let (y, z) = split(left, Slash::Backward)?;
            let (x, y2) = split(right, Slash::Backward)?;
            matches(&y2, &y).then(|| Category::bwd(x, z))
        }
    }
}

pub fn apply_unary(rule: UnaryRule, child: &Category) -> Option<Category> {
    match (rule, child) {
        (
            UnaryRule::TR,
            Category::Atom {
                kind: AtomKind::N,
                barred: false,
                ..
            },
        ) => Some(Category::np()),
        (
            UnaryRule::QC,
            Category::Atom {
                kind: AtomKind::S,
                feature,
                barred: false,
            },
        ) if matches!(feature, Feature::Wq | Feature::Q | Feature::Dcl) => {
            Some(Category::s_bar(*feature))
        }
        (
            UnaryRule::QI,
            Category::Atom {
                kind: AtomKind::S,
                feature: Feature::Q,
                barred: true,
            },
        ) => Some(Category::s_bar(Feature::Pol)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DerivationTree {
    Leaf {
        token: String,
        entry: LexicalEntry,
    },
    Unary {
        rule: UnaryRule,
        child: Box<DerivationTree>,
        cat: Category,
    },
    Binary {
        rule: BinaryRule,
        left: Box<DerivationTree>,
        right: Box<DerivationTree>,
        cat: Category,
    },
}

impl DerivationTree {
    pub fn category(&self) -> &Category {
        match self {
            DerivationTree::Leaf { entry, .. } => &entry.category,
            DerivationTree::Unary { cat, .. } | DerivationTree::Binary { cat, .. } => cat,
        }
    }

    pub fn tokens(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_tokens(&mut out);
        out
    }

    fn collect_tokens<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            DerivationTree::Leaf { token, .. } => out.push(token),
            DerivationTree::Unary { child, .. } => child.collect_tokens(out),
            DerivationTree::Binary { left, right, .. } => {
                left.collect_tokens(out);
                right.collect_tokens(out);
            }
        }
    }

    pub fn leaves(&self) -> Vec<&LexicalEntry> {
        let mut out = Vec::new();
        self.visit(&mut |n| {
            if let DerivationTree::Leaf { entry, .. } = n {
                out.push(entry);
            }
        });
        out
    }

    /// Preorder traversal.
    pub fn visit<'a>(&'a self, f: &mut dyn FnMut(&'a DerivationTree)) {
        f(self);
        match self {
            DerivationTree::Leaf { .. } => {}
            DerivationTree::Unary { child, .. } => child.visit(f),
            DerivationTree::Binary { left, right, .. } => {
                left.visit(f);
                right.visit(f);
            }
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Bracketed one-line form, e.g. `(QC (> who smokes))`.
    pub fn bracketed(&self) -> String {
        match self {
            DerivationTree::Leaf { token, entry } => {
                format!("{}:{}:{}", token, entry.category, entry.semtag)
            }
            DerivationTree::Unary { rule, child, .. } => {
                format!("({} {})", rule, child.bracketed())
            }
            DerivationTree::Binary {
                rule, left, right, ..
            } => {
                format!("({} {} {})", rule, left.bracketed(), right.bracketed())
            }
        }
    }

    /// Indented multi-line rendering with one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            DerivationTree::Leaf { token, entry } => {
                out.push_str(&format!(
                    "{pad}{}  {}  [{}]\n",
                    token, entry.category, entry.semtag
                ));
            }
            DerivationTree::Unary { rule, child, cat } => {
                out.push_str(&format!("{pad}{rule}  {cat}\n"));
                child.render_into(depth + 1, out);
            }
            DerivationTree::Binary {
                rule,
                left,
                right,
                cat,
            } => {
                out.push_str(&format!("{pad}{rule}  {cat}\n"));
                left.render_into(depth + 1, out);
                right.render_into(depth + 1, out);
            }
        }
    }

    /// The JSON import format for this tree.
    pub fn to_json(&self) -> Value {
        match self {
            DerivationTree::Leaf { token, entry } => json!({
                "type": "leaf",
                "cat": entry.category.to_string(),
                "token": token,
                "lemma": entry.lemma,
                "semtag": entry.semtag.name(),
            }),
            DerivationTree::Unary { rule, child, cat } => json!({
                "type": "unary",
                "cat": cat.to_string(),
                "rule": rule.symbol(),
                "children": [child.to_json()],
            }),
            DerivationTree::Binary {
                rule,
                left,
                right,
                cat,
            } => json!({
                "type": "binary",
                "cat": cat.to_string(),
                "rule": rule.symbol(),
                "children": [left.to_json(), right.to_json()],
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid derivation node at {path}: {message}")]
pub struct ValidationError {
    /// Child indices from the root, e.g. `root/1/0`.
    pub path: String,
    pub message: String,
}

/// Re-checks every node against the rules.
pub fn validate(tree: &DerivationTree) -> Result<(), ValidationError> {
    validate_at(tree, "root")
}

fn validate_at(tree: &DerivationTree, path: &str) -> Result<(), ValidationError> {
    let fail = |message: String| {
        Err(ValidationError {
            path: path.to_string(),
            message,
        })
    };
    match tree {
        DerivationTree::Leaf { .. } => Ok(()),
        DerivationTree::Unary { rule, child, cat } => {
            validate_at(child, &format!("{path}/0"))?;
            match apply_unary(*rule, child.category()) {
                Some(c) if c == *cat => Ok(()),
                Some(c) => fail(format!("{rule} yields {c}, node says {cat}")),
                None => fail(format!("{rule} does not apply to {}", child.category())),
            }
        }
        DerivationTree::Binary {
            rule,
            left,
            right,
            cat,
        } => {
            validate_at(left, &format!("{path}/0"))?;
            validate_at(right, &format!("{path}/1"))?;
            match apply_binary(*rule, left.category(), right.category()) {
                Some(c) if c == *cat => Ok(()),
                Some(c) => fail(format!("{rule} yields {c}, node says {cat}")),
                None => fail(format!(
                    "{rule} does not combine {} and {}",
                    left.category(),
                    right.category()
                )),
            }
        }
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("no derivation reaches a goal category; lexical coverage: {}", render_coverage(.coverage))]
    NoParse { coverage: Vec<(String, usize)> },
}

fn render_coverage(c: &[(String, usize)]) -> String {
    c.iter()
        .map(|(t, n)| format!("{t}={n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Splits a sentence into word tokens, separating final punctuation.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in sentence.split_whitespace() {
        let mut w = word;
        let mut trailing = Vec::new();
        while let Some(last) = w.chars().last() {
            if matches!(last, '?' | '.' | ',' | '!') {
                trailing.push(last.to_string());
                w = &w[..w.len() - last.len_utf8()];
            } else {
                break;
            }
        }
        if !w.is_empty() {
            out.push(w.to_string());
        }
        out.extend(trailing.into_iter().rev());
    }
    out
}

pub fn default_goals() -> Vec<Category> {
    vec![
        Category::s_bar(Feature::Wq),
        Category::s_bar(Feature::Pol),
        Category::s_bar(Feature::Dcl),
    ]
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Upper bound on returned derivations.
    pub max_derivations: usize,
    /// Synthesize entries for tokens missing from the lexicon.
    pub synthesize: bool,
    /// Keep derivations whose root semantics repeat an earlier one.
    pub all_derivations: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            max_derivations: 64,
            synthesize: true,
            all_derivations: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParseResult {
    pub trees: Vec<DerivationTree>,
    /// Tokens whose entries were synthesized.
    pub synthesized: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Back {
    Leaf(usize),
    Unary(UnaryRule, Category),
    Binary(BinaryRule, usize, Category, Category),
}

/// Packed chart: for each span, the categories found and every way each
/// was built.
#[derive(Debug, Default)]
pub struct Chart {
    cells: HashMap<(usize, usize), BTreeMap<Category, Vec<Back>>>,
}

impl Chart {
    pub fn categories(&self, i: usize, j: usize) -> Vec<&Category> {
        self.cells
            .get(&(i, j))
            .map(|m| m.keys().collect())
            .unwrap_or_default()
    }

    /// Number of (span, category, back-pointer) items.
    pub fn item_count(&self) -> usize {
        self.cells
            .values()
            .flat_map(|m| m.values())
            .map(Vec::len)
            .sum()
    }

    fn add(&mut self, i: usize, j: usize, cat: Category, back: Back) -> bool {
        let list = self
            .cells
            .entry((i, j))
            .or_default()
            .entry(cat)
            .or_default();
        if list.contains(&back) {
            false
        } else {
            list.push(back);
            true
        }
    }
}

/// Strips trailing sentence punctuation, which no lexical entry covers.
pub fn strip_punctuation(tokens: &[String]) -> &[String] {
    let mut end = tokens.len();
    while end > 0 && matches!(tokens[end - 1].as_str(), "?" | "." | "!") {
        end -= 1;
    }
    &tokens[..end]
}

/// All derivations rooted at a goal. Trees are ordered by preposition tag
/// conflicts, then by the number of composition steps, then left-branching
/// first and lexicon order. Unless `all_derivations` is set, trees whose root
/// semantics repeat an earlier tree are dropped.
pub fn parse(
    tokens: &[String],
    lexicon: &Lexicon,
    goals: &[Category],
) -> Result<Vec<DerivationTree>, ParseError> {
    parse_with(tokens, lexicon, goals, &ParseOptions::default()).map(|r| r.trees)
}

pub fn parse_with(
    tokens: &[String],
    lexicon: &Lexicon,
    goals: &[Category],
    opts: &ParseOptions,
) -> Result<ParseResult, ParseError> {
    let words = strip_punctuation(tokens);
    if words.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut synthesized = Vec::new();
    let entries: Vec<Vec<LexicalEntry>> = words
        .iter()
        .map(|w| {
            if opts.synthesize {
                let (es, synth) = lexicon.lookup_or_synthesize(w);
                if synth {
                    synthesized.push(w.clone());
                }
                es
            } else {
                lexicon.lookup(w)
            }
        })
        .collect();
    let chart = build_chart(&entries);
    let n = words.len();
    let mut trees = Vec::new();
    let mut memo = HashMap::new();
    let unpack_limit = opts.max_derivations.saturating_mul(8).max(64);
    if let Some(cell) = chart.cells.get(&(0, n)) {
        for cat in cell.keys().filter(|c| goals.contains(c)) {
            trees.extend(unpack(
                &chart,
                0,
                n,
                cat,
                words,
                &entries,
                &mut memo,
                unpack_limit,
            ));
        }
    }
    if trees.is_empty() {
        return Err(ParseError::NoParse {
            coverage: words
                .iter()
                .zip(&entries)
                .map(|(w, e)| (w.clone(), e.len()))
                .collect(),
        });
    }
    let mut keyed: Vec<((usize, usize), Vec<(u8, usize, u8)>, DerivationTree)> = trees
        .into_iter()
        .map(|t| {
            let primary = (
                override_conflicts(&t, &lexicon.overrides),
                composition_count(&t),
            );
            (primary, order_key(&t, &entries), t)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut trees = Vec::new();
    let mut seen: Vec<crate::hol::Term> = Vec::new();
    for (_, _, tree) in keyed {
        if trees.len() >= opts.max_derivations {
            break;
        }
        if !opts.all_derivations {
            if let Ok(t) = crate::compose::compose(&tree) {
                if seen.iter().any(|s| crate::hol::alpha_eq(s, &t)) {
                    continue;
                }
                seen.push(t);
            }
        }
        trees.push(tree);
    }
    Ok(ParseResult { trees, synthesized })
}

pub fn build_chart(entries: &[Vec<LexicalEntry>]) -> Chart {
    let n = entries.len();
    let mut chart = Chart {
        cells: HashMap::new(),
    };
    for (i, es) in entries.iter().enumerate() {
        for (k, e) in es.iter().enumerate() {
            chart.add(i, i + 1, e.category.clone(), Back::Leaf(k));
        }
        unary_closure(&mut chart, i, i + 1);
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len;
            for k in i + 1..j {
                let lefts: Vec<Category> = chart.categories(i, k).into_iter().cloned().collect();
                let rights: Vec<Category> = chart.categories(k, j).into_iter().cloned().collect();
                for l in &lefts {
                    for r in &rights {
                        for rule in BinaryRule::ALL {
                            if let Some(c) = apply_binary(rule, l, r) {
                                chart.add(i, j, c, Back::Binary(rule, k, l.clone(), r.clone()));
                            }
                        }
                    }
                }
            }
            unary_closure(&mut chart, i, j);
        }
    }
    chart
}

fn unary_closure(chart: &mut Chart, i: usize, j: usize) {
    let mut frontier: Vec<Category> = chart.categories(i, j).into_iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for rule in UnaryRule::ALL {
            if let Some(r) = apply_unary(rule, &c) {
                let fresh = !chart.cells.get(&(i, j)).is_some_and(|m| m.contains_key(&r));
                chart.add(i, j, r.clone(), Back::Unary(rule, c.clone()));
                if fresh {
                    frontier.push(r);
                }
            }
        }
    }
}

type Memo = HashMap<(usize, usize, Category), Vec<DerivationTree>>;

#[allow(clippy::too_many_arguments)]
fn unpack(
    chart: &Chart,
    i: usize,
    j: usize,
    cat: &Category,
    words: &[String],
    entries: &[Vec<LexicalEntry>],
    memo: &mut Memo,
    limit: usize,
) -> Vec<DerivationTree> {
    let key = (i, j, cat.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut out = Vec::new();
    let backs = chart
        .cells
        .get(&(i, j))
        .and_then(|m| m.get(cat))
        .cloned()
        .unwrap_or_default();
    for back in backs {
        if out.len() >= limit {
            break;
        }
        match back {
            Back::Leaf(k) => out.push(DerivationTree::Leaf {
                token: words[i].clone(),
                entry: entries[i][k].clone(),
            }),
            Back::Unary(rule, child) => {
                for c in unpack(chart, i, j, &child, words, entries, memo, limit) {
                    out.push(DerivationTree::Unary {
                        rule,
                        child: Box::new(c),
                        cat: cat.clone(),
                    });
                }
            }
            Back::Binary(rule, k, l, r) => {
                let ls = unpack(chart, i, k, &l, words, entries, memo, limit);
                let rs = unpack(chart, k, j, &r, words, entries, memo, limit);
                'outer: for a in &ls {
                    for b in &rs {
                        if out.len() >= limit {
                            break 'outer;
                        }
                        out.push(DerivationTree::Binary {
                            rule,
                            left: Box::new(a.clone()),
                            right: Box::new(b.clone()),
                            cat: cat.clone(),
                        });
                    }
                }
            }
        }
    }
    out.truncate(limit);
    memo.insert(key, out.clone());
    out
}

fn composition_count(tree: &DerivationTree) -> usize {
    let mut n = 0;
    tree.visit(&mut |node| {
        if let DerivationTree::Binary {
            rule: BinaryRule::FC | BinaryRule::BC,
            ..
        } = node
        {
            n += 1;
        }
    });
    n
}

/// Preorder key: larger left spans first, then rule order, then lexicon order.
fn order_key(tree: &DerivationTree, entries: &[Vec<LexicalEntry>]) -> Vec<(u8, usize, u8)> {
    let mut key = Vec::new();
    let mut pos = 0usize;
    key_into(tree, entries, &mut pos, &mut key);
    key
}

fn key_into(
    tree: &DerivationTree,
    entries: &[Vec<LexicalEntry>],
    pos: &mut usize,
    key: &mut Vec<(u8, usize, u8)>,
) {
    match tree {
        DerivationTree::Leaf { entry, .. } => {
            let idx = entries
                .get(*pos)
                .and_then(|es| es.iter().position(|e| e == entry))
                .unwrap_or(usize::MAX);
            key.push((2, idx, 0));
            *pos += 1;
        }
        DerivationTree::Unary { rule, child, .. } => {
            key.push((1, 0, *rule as u8));
            key_into(child, entries, pos, key);
        }
        DerivationTree::Binary {
            rule, left, right, ..
        } => {
            let left_len = left.tokens().len();
            key.push((0, usize::MAX - left_len, *rule as u8));
            key_into(left, entries, pos, key);
            key_into(right, entries, pos, key);
        }
    }
}

pub(crate) fn is_preposition(tag: SemTag) -> bool {
    matches!(tag, SemTag::PREP | SemTag::PREP_TIME | SemTag::PREP_LOC)
}

/// Number of preposition leaves whose tag disagrees with the tag the
/// override table and mechanical rules pick for their complement.
pub fn override_conflicts(tree: &DerivationTree, overrides: &crate::lexicon::Overrides) -> usize {
    let mut n = 0;
    tree.visit(&mut |node| {
        if let DerivationTree::Binary {
            rule: BinaryRule::FA,
            left,
            right,
            ..
        } = node
        {
            if let DerivationTree::Leaf { entry, .. } = &**left {
                if is_preposition(entry.semtag) {
                    let head = right.tokens().last().copied().unwrap_or("");
                    let tag = assign_semtag(
                        &entry.category,
                        "IN",
                        &entry.lemma,
                        complement_hint(head),
                        overrides,
                    );
                    if tag.ok() != Some(entry.semtag) {
                        n += 1;
                    }
                }
            }
        }
    });
    n
}

// ---------------------------------------------------------------- import

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImportError {
    #[error("malformed derivation document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Reads a derivation in the JSON tree format and validates every node.
///
/// Nodes are objects with `type` (`leaf`, `unary` or `binary`), `cat`, and
/// `rule` for inner nodes (`fa`/`>`, `ba`/`<`, `fc`/`>B`, `bc`/`<B`,
/// `tr`/`lex`, `qc`, `qi`/`?I`). Leaves carry `token` and optionally `pos`,
/// `lemma` and `semtag`; inner nodes carry `children`.
pub fn import_derivation(doc: &str, lexicon: &Lexicon) -> Result<DerivationTree, ImportError> {
    let v: Value = serde_json::from_str(doc).map_err(|e| ImportError::Malformed(e.to_string()))?;
    let tree = import_node(&v, lexicon, "root", None)?;
    validate(&tree)?;
    Ok(tree)
}

fn node_err(path: &str, message: impl Into<String>) -> ImportError {
    ImportError::Invalid(ValidationError {
        path: path.to_string(),
        message: message.into(),
    })
}

fn json_tokens(v: &Value, out: &mut Vec<String>) {
    if let Some(t) = v.get("token").and_then(Value::as_str) {
        out.push(t.to_string());
    }
    if let Some(cs) = v.get("children").and_then(Value::as_array) {
        for c in cs {
            json_tokens(c, out);
        }
    }
}

fn import_node(
    v: &Value,
    lexicon: &Lexicon,
    path: &str,
    hint: Option<&str>,
) -> Result<DerivationTree, ImportError> {
    let field = |k: &str| v.get(k).and_then(Value::as_str);
    let kind = field("type").ok_or_else(|| node_err(path, "missing 'type'"))?;
    let cat_text = field("cat").ok_or_else(|| node_err(path, "missing 'cat'"))?;
    let cat = parse_category(cat_text).map_err(|e| node_err(path, e.to_string()))?;
    let children: Vec<&Value> = v
        .get("children")
        .and_then(Value::as_array)
        .map(|a| a.iter().collect())
        .unwrap_or_default();
    match kind {
        "leaf" => {
            let token = field("token").ok_or_else(|| node_err(path, "leaf without 'token'"))?;
            let entry = resolve_leaf(
                token,
                &cat,
                field("pos"),
                field("lemma"),
                field("semtag"),
                hint,
                lexicon,
            )
            .ok_or_else(|| node_err(path, format!("no lexical entry for '{token}' at {cat}")))?;
            Ok(DerivationTree::Leaf {
                token: token.to_string(),
                entry,
            })
        }
        "unary" => {
            if children.len() != 1 {
                return Err(node_err(path, "unary node needs exactly one child"));
            }
            let child = import_node(children[0], lexicon, &format!("{path}/0"), None)?;
            let rule = match field("rule") {
                Some(r) => UnaryRule::from_name(r)
                    .ok_or_else(|| node_err(path, format!("unknown unary rule '{r}'")))?,
                None => UnaryRule::ALL
                    .into_iter()
                    .find(|r| apply_unary(*r, child.category()).as_ref() == Some(&cat))
                    .ok_or_else(|| node_err(path, "no unary rule yields this category"))?,
            };
            Ok(DerivationTree::Unary {
                rule,
                child: Box::new(child),
                cat,
            })
        }
        "binary" => {
            if children.len() != 2 {
                return Err(node_err(path, "binary node needs exactly two children"));
            }
            let mut right_tokens = Vec::new();
            json_tokens(children[1], &mut right_tokens);
            let head_hint = right_tokens.last().and_then(|t| complement_hint(t));
            let left = import_node(children[0], lexicon, &format!("{path}/0"), head_hint)?;
            let right = import_node(children[1], lexicon, &format!("{path}/1"), None)?;
            let rule = match field("rule") {
                Some(r) => BinaryRule::from_name(r)
                    .ok_or_else(|| node_err(path, format!("unknown binary rule '{r}'")))?,
                None => BinaryRule::ALL
                    .into_iter()
                    .find(|r| {
                        apply_binary(*r, left.category(), right.category()).as_ref() == Some(&cat)
                    })
                    .ok_or_else(|| {
                        node_err(
                            path,
                            format!(
                                "no rule combines {} and {}",
                                left.category(),
                                right.category()
                            ),
                        )
                    })?,
            };
            Ok(DerivationTree::Binary {
                rule,
                left: Box::new(left),
                right: Box::new(right),
                cat,
            })
        }
        other => Err(node_err(path, format!("unknown node type '{other}'"))),
    }
}

fn default_pos(cat: &Category, token: &str) -> &'static str {
    if *cat == Category::n() {
        if token.chars().next().is_some_and(char::is_uppercase) {
            "NNP"
        } else {
            "NN"
        }
    } else {
        "VB"
    }
}

fn resolve_leaf(
    token: &str,
    cat: &Category,
    pos: Option<&str>,
    lemma: Option<&str>,
    semtag: Option<&str>,
    hint: Option<&str>,
    lexicon: &Lexicon,
) -> Option<LexicalEntry> {
    let candidates: Vec<LexicalEntry> = lexicon
        .lookup(token)
        .into_iter()
        .filter(|e| e.category == *cat)
        .collect();
    let explicit = semtag.and_then(SemTag::from_name);
    let pos = pos.unwrap_or_else(|| default_pos(cat, token));
    let lemma = match lemma {
        Some(l) => l.to_lowercase(),
        None => candidates
            .first()
            .map(|e| e.lemma.clone())
            .unwrap_or_else(|| {
                if pos.starts_with("NNP") {
                    token.to_lowercase()
                } else {
                    stem(token)
                }
            }),
    };
    let wanted =
        explicit.or_else(|| assign_semtag(cat, pos, &lemma, hint, &lexicon.overrides).ok());
    if let Some(tag) = wanted {
        if let Some(e) = candidates.iter().find(|e| e.semtag == tag) {
            return Some(e.clone());
        }
        if let Some(e) = entry_from_schema(token, &lemma, cat.clone(), tag) {
            return Some(e);
        }
    }
    candidates.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Category {
        parse_category(s).unwrap()
    }

    fn toks(s: &str) -> Vec<String> {
        tokenize(s)
    }

    #[test]
    fn binary_rule_examples() {
        assert_eq!(
            apply_binary(BinaryRule::FA, &c("S_wq/(S|NP)"), &c("S_dcl\\NP")),
            Some(c("S_wq"))
        );
        assert_eq!(
            apply_binary(BinaryRule::FC, &c("S_q/(S_b\\NP)"), &c("(S_b\\NP)/NP")),
            Some(c("S_q/NP"))
        );
        assert_eq!(apply_binary(BinaryRule::FA, &c("NP"), &c("NP")), None);
        assert_eq!(
            apply_binary(BinaryRule::BA, &c("NP"), &c("S_dcl\\NP")),
            Some(c("S_dcl"))
        );
        assert_eq!(
            apply_binary(BinaryRule::BC, &c("S_b\\NP"), &c("(S_b\\NP)\\(S_b\\NP)")),
            None,
            "BC needs a functor on the left whose result the right consumes"
        );
        assert_eq!(
            apply_binary(
                BinaryRule::BC,
                &c("(S_b\\NP)\\NP"),
                &c("(S_b\\NP)\\(S_b\\NP)")
            ),
            Some(c("(S_b\\NP)\\NP"))
        );
    }

    #[test]
    fn barred_inputs_rejected() {
        assert_eq!(apply_binary(BinaryRule::BA, &c("NP"), &c("^S_dcl")), None);
        assert_eq!(
            apply_binary(BinaryRule::FA, &c("S_wq/S_q"), &c("^S_q")),
            None
        );
    }

    #[test]
    fn unary_rule_examples() {
        assert_eq!(apply_unary(UnaryRule::TR, &c("N")), Some(c("NP")));
        assert_eq!(apply_unary(UnaryRule::QC, &c("S_wq")), Some(c("^S_wq")));
        assert_eq!(apply_unary(UnaryRule::QI, &c("^S_q")), Some(c("^S_pol")));
        assert_eq!(apply_unary(UnaryRule::QC, &c("S_b")), None);
        assert_eq!(apply_unary(UnaryRule::QI, &c("^S_wq")), None);
    }

    #[test]
    fn who_smokes_has_one_tree() {
        let lex = Lexicon::bundled();
        let trees = parse(&toks("Who smokes?"), &lex, &default_goals()).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(
            trees[0].bracketed(),
            "(QC (> Who:S_wq/(S|NP):WHO smokes:S_dcl\\NP:IV))"
        );
    }

    #[test]
    fn polar_question_shape() {
        let lex = Lexicon::bundled();
        let trees = parse(&toks("Does John like Smith?"), &lex, &default_goals()).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(
            trees[0].bracketed(),
            "(?I (QC (> (> Does:(S_q/(S_b\\NP))/NP:DO (TR John:N:PN)) (> like:(S_b\\NP)/NP:TV (TR Smith:N:PN)))))"
        );
    }

    #[test]
    fn no_goal_reachable() {
        let lex = Lexicon::bundled();
        let err = parse(&toks("Smokes who"), &lex, &default_goals()).unwrap_err();
        match err {
            ParseError::NoParse { coverage } => assert_eq!(coverage.len(), 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse(&toks("?"), &lex, &default_goals()).unwrap_err(),
            ParseError::Empty
        );
    }

    #[test]
    fn time_override_prefers_prep_time() {
        let lex = Lexicon::bundled();
        let trees = parse(&toks("John met Mary on time."), &lex, &default_goals()).unwrap();
        let tags: Vec<SemTag> = trees[0].leaves().iter().map(|e| e.semtag).collect();
        assert!(tags.contains(&SemTag::PREP_TIME), "{tags:?}");
        let trees = parse(
            &toks("John met Mary at the station."),
            &lex,
            &default_goals(),
        )
        .unwrap();
        let tags: Vec<SemTag> = trees[0].leaves().iter().map(|e| e.semtag).collect();
        assert!(tags.contains(&SemTag::PREP_LOC), "{tags:?}");
    }

    #[test]
    fn tokenize_splits_punctuation() {
        assert_eq!(toks("Who smokes?"), vec!["Who", "smokes", "?"]);
        assert_eq!(toks("  a  b. "), vec!["a", "b", "."]);
    }

    #[test]
    fn import_single_leaf() {
        let lex = Lexicon::bundled();
        let t =
            import_derivation(r#"{"type":"leaf","cat":"NP","token":"everyone"}"#, &lex).unwrap();
        assert_eq!(t.category(), &c("NP"));
    }

    #[test]
    fn export_import_round_trip() {
        let lex = Lexicon::bundled();
        let t = parse(&toks("Does John like Smith?"), &lex, &default_goals())
            .unwrap()
            .remove(0);
        let back = import_derivation(&t.to_json().to_string(), &lex).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn embedded_clause_import_fails_at_node() {
        // "which professor" analysed as a wh-clause instead of an in-situ NP
        let doc = r#"{"type":"unary","cat":"^S_wq","rule":"qc","children":[
          {"type":"binary","cat":"S_wq","rule":"fa","children":[
            {"type":"binary","cat":"S_wq/(S|NP)","rule":"fa","children":[
              {"type":"leaf","cat":"(S_wq/(S|NP))/N","token":"Which","pos":"WDT"},
              {"type":"leaf","cat":"N","token":"student","pos":"NN"}]},
            {"type":"binary","cat":"S_dcl\\NP","rule":"fa","children":[
              {"type":"leaf","cat":"(S_dcl\\NP)/NP","token":"met","pos":"VBD","lemma":"meet"},
              {"type":"binary","cat":"S_wq/(S|NP)","rule":"fa","children":[
                {"type":"leaf","cat":"(S_wq/(S|NP))/N","token":"which","pos":"WDT"},
                {"type":"leaf","cat":"N","token":"professor","pos":"NN"}]}]}]}]}"#;
        let err = import_derivation(doc, &Lexicon::bundled()).unwrap_err();
        match err {
            ImportError::Invalid(v) => assert_eq!(v.path, "root/0/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn import_synthesizes_unknown_words() {
        let doc = r#"{"type":"binary","cat":"S_dcl","rule":"ba","children":[
            {"type":"unary","cat":"NP","rule":"lex","children":[{"type":"leaf","cat":"N","token":"Zork","pos":"NNP"}]},
            {"type":"leaf","cat":"S_dcl\\NP","token":"glimmers","pos":"VBZ"}]}"#;
        let t = import_derivation(doc, &Lexicon::bundled()).unwrap();
        let tags: Vec<SemTag> = t.leaves().iter().map(|e| e.semtag).collect();
        assert_eq!(tags, vec![SemTag::PN, SemTag::IV]);
    }
}
