//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ccgq::category::{AtomKind, Category, Feature, SemType, Slash, Sort};
use ccgq::derive::{
    apply_binary, apply_unary, strip_punctuation, tokenize, BinaryRule, DerivationTree, UnaryRule,
};
use ccgq::harness::bundled_problems;
use ccgq::hol::Term;
use ccgq::lexicon::Lexicon;
use ccgq::lower::{Fol, FolTerm};
use ccgq::prove::{Interpretation, Relation};
pub mod checks;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Sentences used for the representation examples.
pub const REPRESENTATION_SENTENCES: [&str; 8] = [
    "Did John meet Mary?",
    "John met Mary.",
    "Who smokes?",
    "John smokes.",
    "When did John meet Mary?",
    "John met Mary yesterday.",
    "Where did John meet Mary?",
    "John met Mary at the station.",
];

/// Every sentence that ships with the crate: suite premises and
/// questions plus the representation examples.
pub fn bundled_sentences() -> Vec<String> {
    let mut out: Vec<String> = REPRESENTATION_SENTENCES
        .iter()
        .map(|s| s.to_string())
        .collect();
    out.push("Does John like Smith?".into());
    out.push("Which delegate finished the report?".into());
    for p in bundled_problems() {
        out.extend(p.premises.iter().cloned());
        out.push(p.question.clone());
    }
    let mut seen = BTreeSet::new();
    out.retain(|s| seen.insert(s.clone()));
    out
}

pub fn word_count(s: &str) -> usize {
    strip_punctuation(&tokenize(s)).len()
}

// ---------------------------------------------------------------------------
// Brute-force derivation enumeration

fn close_unary(mut trees: Vec<DerivationTree>) -> Vec<DerivationTree> {
    let mut i = 0;
    while i < trees.len() {
        let cat = trees[i].category().clone();
        for rule in UnaryRule::ALL {
            if let Some(c) = apply_unary(rule, &cat) {
                let t = DerivationTree::Unary {
                    rule,
                    child: Box::new(trees[i].clone()),
                    cat: c,
                };
                trees.push(t);
            }
        }
        i += 1;
    }
    trees
}

fn all_trees(
    entries: &[Vec<ccgq::lexicon::LexicalEntry>],
    words: &[String],
    i: usize,
    j: usize,
) -> Vec<DerivationTree> {
    if j == i + 1 {
        let leaves = entries[i]
            .iter()
            .map(|e| DerivationTree::Leaf {
                token: words[i].clone(),
                entry: e.clone(),
            })
            .collect();
        return close_unary(leaves);
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        let ls = all_trees(entries, words, i, k);
        let rs = all_trees(entries, words, k, j);
        for l in &ls {
            for r in &rs {
                for rule in BinaryRule::ALL {
                    if let Some(c) = apply_binary(rule, l.category(), r.category()) {
                        out.push(DerivationTree::Binary {
                            rule,
                            left: Box::new(l.clone()),
                            right: Box::new(r.clone()),
                            cat: c,
                        });
                    }
                }
            }
        }
    }
    close_unary(out)
}

/// Every derivation of the sentence reaching one of `goals`, found by
/// exhaustive recursion over split points.
pub fn brute_force_derivations(
    sentence: &str,
    lexicon: &Lexicon,
    goals: &[Category],
) -> Vec<DerivationTree> {
    let tokens = tokenize(sentence);
    let words = strip_punctuation(&tokens).to_vec();
    let entries: Vec<_> = words
        .iter()
        .map(|w| lexicon.lookup_or_synthesize(w).0)
        .collect();
    if words.is_empty() {
        return Vec::new();
    }
    all_trees(&entries, &words, 0, words.len())
        .into_iter()
        .filter(|t| goals.contains(t.category()))
        .collect()
}

/// Multiset fingerprint of a derivation list.
pub fn fingerprint(trees: &[DerivationTree]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for t in trees {
        *m.entry(format!("{t:?}")).or_insert(0) += 1;
    }
    m
}

// ---------------------------------------------------------------------------
// Finite-model search by grounding to SAT

#[derive(Debug, Clone)]
enum G {
    T,
    F,
    V(usize),
    Not(Box<G>),
    And(Vec<G>),
    Or(Vec<G>),
}

fn g_not(g: G) -> G {
    match g {
        G::T => G::F,
        G::F => G::T,
        G::Not(x) => *x,
        other => G::Not(Box::new(other)),
    }
}

fn g_and(items: Vec<G>) -> G {
    let mut out = Vec::new();
    for g in items {
        match g {
            G::T => {}
            G::F => return G::F,
            G::And(xs) => out.extend(xs),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => G::T,
        1 => out.pop().unwrap(),
        _ => G::And(out),
    }
}

fn g_or(items: Vec<G>) -> G {
    let mut out = Vec::new();
    for g in items {
        match g {
            G::F => {}
            G::T => return G::T,
            G::Or(xs) => out.extend(xs),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => G::F,
        1 => out.pop().unwrap(),
        _ => G::Or(out),
    }
}

struct Grounder<'a> {
    n: usize,
    consts: &'a HashMap<String, usize>,
    atoms: HashMap<(String, Vec<usize>), usize>,
}

impl Grounder<'_> {
    fn val(&self, t: &FolTerm, env: &HashMap<String, usize>) -> usize {
        match t {
            FolTerm::Var(v) => env[v],
            FolTerm::Const(c) => self.consts[c],
        }
    }

    fn ground(&mut self, f: &Fol, env: &mut HashMap<String, usize>) -> G {
        match f {
            Fol::Top => G::T,
            Fol::Bottom => G::F,
            Fol::Atom(p, args) => {
                let tuple: Vec<usize> = args.iter().map(|a| self.val(a, env)).collect();
                let next = self.atoms.len();
                G::V(*self.atoms.entry((p.clone(), tuple)).or_insert(next))
            }
            Fol::Eq(a, b) => {
                if self.val(a, env) == self.val(b, env) {
                    G::T
                } else {
                    G::F
                }
            }
            Fol::Not(a) => g_not(self.ground(a, env)),
            Fol::And(a, b) => {
                let x = self.ground(a, env);
                let y = self.ground(b, env);
                g_and(vec![x, y])
            }
            Fol::Or(a, b) => {
                let x = self.ground(a, env);
                let y = self.ground(b, env);
                g_or(vec![x, y])
            }
            Fol::Imp(a, b) => {
                let x = self.ground(a, env);
                let y = self.ground(b, env);
                g_or(vec![g_not(x), y])
            }
            Fol::Exists(v, b) | Fol::Forall(v, b) => {
                let saved = env.get(v).copied();
                let mut parts = Vec::new();
                for d in 0..self.n {
                    env.insert(v.clone(), d);
                    parts.push(self.ground(b, env));
                }
                match saved {
                    Some(s) => env.insert(v.clone(), s),
                    None => env.remove(v),
                };
                if matches!(f, Fol::Exists(..)) {
                    g_or(parts)
                } else {
                    g_and(parts)
                }
            }
        }
    }
}

fn tseitin(g: &G, solver: &mut varisat::Solver, atom_vars: &[varisat::Var]) -> varisat::Lit {
    use varisat::ExtendFormula;
    match g {
        G::V(i) => atom_vars[*i].positive(),
        G::Not(x) => !tseitin(x, solver, atom_vars),
        G::T | G::F => {
            let v = solver.new_var().positive();
            solver.add_clause(&[if matches!(g, G::T) { v } else { !v }]);
            v
        }
        G::And(xs) | G::Or(xs) => {
            let kids: Vec<varisat::Lit> =
                xs.iter().map(|x| tseitin(x, solver, atom_vars)).collect();
            let t = solver.new_var().positive();
            if matches!(g, G::And(_)) {
                for &k in &kids {
                    solver.add_clause(&[!t, k]);
                }
                let mut c: Vec<varisat::Lit> = kids.iter().map(|&k| !k).collect();
                c.push(t);
                solver.add_clause(&c);
            } else {
                let mut c = kids.clone();
                c.push(!t);
                solver.add_clause(&c);
                for &k in &kids {
                    solver.add_clause(&[t, !k]);
                }
            }
            t
        }
    }
}

/// Constant assignments up to renaming of domain elements.
fn const_assignments(consts: &[String], n: usize) -> Vec<HashMap<String, usize>> {
    let mut out = Vec::new();
    fn rec(
        i: usize,
        consts: &[String],
        n: usize,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<HashMap<String, usize>>,
    ) {
        if i == consts.len() {
            out.push(consts.iter().cloned().zip(cur.iter().copied()).collect());
            return;
        }
        for d in 0..n.min(max + 1) {
            cur.push(d);
            rec(i + 1, consts, n, max.max(d + 1), cur, out);
            cur.pop();
        }
    }
    rec(0, consts, n, 0, &mut Vec::new(), &mut out);
    out
}

/// A model of all formulas over a domain of exactly `n` elements.
pub fn find_model(formulas: &[Fol], n: usize) -> Option<Interpretation> {
    use varisat::ExtendFormula;
    let consts: Vec<String> = formulas
        .iter()
        .flat_map(|f| f.constants())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for assignment in const_assignments(&consts, n) {
        let mut g = Grounder {
            n,
            consts: &assignment,
            atoms: HashMap::new(),
        };
        let grounded: Vec<G> = formulas
            .iter()
            .map(|f| g.ground(f, &mut HashMap::new()))
            .collect();
        let root = g_and(grounded);
        if matches!(root, G::F) {
            continue;
        }
        let mut solver = varisat::Solver::new();
        let atom_vars: Vec<varisat::Var> = (0..g.atoms.len()).map(|_| solver.new_var()).collect();
        let r = tseitin(&root, &mut solver, &atom_vars);
        solver.add_clause(&[r]);
        if solver.solve().expect("solver runs") {
            let model: BTreeSet<varisat::Lit> =
                solver.model().expect("model").into_iter().collect();
            let mut interp = Interpretation {
                constants: assignment.iter().map(|(k, v)| (k.clone(), *v)).collect(),
                relations: BTreeMap::new(),
            };
            for f in formulas {
                for (p, arities) in f.predicates() {
                    interp.declare(&p, *arities.iter().next().unwrap());
                }
            }
            for ((p, tuple), i) in &g.atoms {
                if model.contains(&atom_vars[*i].positive()) {
                    interp
                        .relations
                        .entry(p.clone())
                        .or_insert(Relation {
                            arity: tuple.len(),
                            tuples: BTreeSet::new(),
                        })
                        .tuples
                        .insert(tuple.clone());
                }
            }
            return Some(interp);
        }
    }
    None
}

/// A model of the premises falsifying the goal, over domains `1..=max`.
pub fn countermodel(premises: &[Fol], goal: &Fol, max: usize) -> Option<(usize, Interpretation)> {
    let mut fs = premises.to_vec();
    fs.push(Fol::not(goal.clone()));
    (1..=max).find_map(|n| find_model(&fs, n).map(|m| (n, m)))
}

/// Exhaustive enumeration of every interpretation of the signature;
/// only feasible for a handful of ground atoms.
pub fn brute_force_model(formulas: &[Fol], n: usize) -> Option<Interpretation> {
    let mut preds: BTreeMap<String, usize> = BTreeMap::new();
    let mut consts = BTreeSet::new();
    for f in formulas {
        for (p, a) in f.predicates() {
            preds.insert(p, *a.iter().next().unwrap());
        }
        consts.extend(f.constants());
    }
    let consts: Vec<String> = consts.into_iter().collect();
    let mut slots: Vec<(String, Vec<usize>)> = Vec::new();
    for (p, &a) in &preds {
        let mut tuple = vec![0usize; a];
        loop {
            slots.push((p.clone(), tuple.clone()));
            let mut i = a;
            let mut carry = true;
            while carry && i > 0 {
                i -= 1;
                tuple[i] += 1;
                if tuple[i] == n {
                    tuple[i] = 0;
                } else {
                    carry = false;
                }
            }
            if carry {
                break;
            }
        }
    }
    assert!(slots.len() <= 20, "signature too large for enumeration");
    for assignment in const_assignments(&consts, n) {
        for mask in 0u64..(1u64 << slots.len()) {
            let mut m = Interpretation {
                constants: assignment.iter().map(|(k, v)| (k.clone(), *v)).collect(),
                relations: BTreeMap::new(),
            };
            for (p, &a) in &preds {
                m.declare(p, a);
            }
            for (bit, (p, t)) in slots.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    m.relations.get_mut(p).unwrap().tuples.insert(t.clone());
                }
            }
            if formulas
                .iter()
                .all(|f| ccgq::prove::model_check(f, n, &m).unwrap())
            {
                return Some(m);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Minimal TPTP FOF reader

pub fn read_tptp(text: &str) -> Result<Vec<(String, String, Fol)>, String> {
    let mut out = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'))
    {
        let inner = line
            .strip_prefix("fof(")
            .and_then(|l| l.strip_suffix(")."))
            .ok_or_else(|| format!("not a fof line: {line}"))?;
        let mut parts = inner.splitn(3, ',');
        let name = parts.next().ok_or("missing name")?.trim().to_string();
        let role = parts.next().ok_or("missing role")?.trim().to_string();
        let body = parts.next().ok_or("missing formula")?;
        let toks = tptp_tokens(body)?;
        let mut p = TptpParser {
            toks,
            i: 0,
            bound: Vec::new(),
        };
        let f = p.formula()?;
        if p.i != p.toks.len() {
            return Err(format!("trailing tokens in {line}"));
        }
        out.push((name, role, f));
    }
    Ok(out)
}

fn tptp_tokens(s: &str) -> Result<Vec<String>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '=' && cs.get(i + 1) == Some(&'>') {
            out.push("=>".into());
            i += 2;
        } else if "()[],:&|~!?=".contains(c) {
            out.push(c.to_string());
            i += 1;
        } else if c == '$' || c.is_alphanumeric() || c == '_' {
            let st = i;
            i += 1;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(cs[st..i].iter().collect());
        } else if c == '\'' {
            let mut w = String::from("'");
            i += 1;
            while i < cs.len() && cs[i] != '\'' {
                if cs[i] == '\\' {
                    w.push(cs[i]);
                    i += 1;
                }
                w.push(cs[i]);
                i += 1;
            }
            w.push('\'');
            i += 1;
            out.push(w);
        } else {
            return Err(format!("unexpected {c}"));
        }
    }
    Ok(out)
}

struct TptpParser {
    toks: Vec<String>,
    i: usize,
    bound: Vec<String>,
}

impl TptpParser {
    fn peek(&self) -> Option<&str> {
        self.toks.get(self.i).map(String::as_str)
    }
    fn eat(&mut self, t: &str) -> Result<(), String> {
        if self.peek() == Some(t) {
            self.i += 1;
            Ok(())
        } else {
            Err(format!("expected {t}, found {:?}", self.peek()))
        }
    }
    fn formula(&mut self) -> Result<Fol, String> {
        let a = self.unary()?;
        let op = self.peek().map(str::to_string);
        match op.as_deref() {
            Some("&") | Some("|") | Some("=>") => {
                self.i += 1;
                let b = self.unary()?;
                Ok(match op.as_deref() {
                    Some("&") => Fol::and(a, b),
                    Some("|") => Fol::or(a, b),
                    _ => Fol::imp(a, b),
                })
            }
            _ => Ok(a),
        }
    }
    fn unary(&mut self) -> Result<Fol, String> {
        match self.peek() {
            Some("~") => {
                self.i += 1;
                Ok(Fol::not(self.unary()?))
            }
            Some("!") | Some("?") => {
                let q = self.peek().unwrap().to_string();
                self.i += 1;
                self.eat("[")?;
                let v = self.toks[self.i].clone();
                self.i += 1;
                self.eat("]")?;
                self.eat(":")?;
                self.bound.push(v.clone());
                let body = self.unary()?;
                self.bound.pop();
                Ok(if q == "!" {
                    Fol::forall(&v, body)
                } else {
                    Fol::exists(&v, body)
                })
            }
            Some("(") => {
                self.i += 1;
                let f = self.formula()?;
                self.eat(")")?;
                Ok(f)
            }
            Some("$true") => {
                self.i += 1;
                Ok(Fol::Top)
            }
            Some("$false") => {
                self.i += 1;
                Ok(Fol::Bottom)
            }
            Some(_) => {
                let head = self.toks[self.i].clone();
                self.i += 1;
                if self.peek() == Some("=") {
                    self.i += 1;
                    let rhs = self.toks[self.i].clone();
                    self.i += 1;
                    return Ok(Fol::Eq(self.term(head), self.term(rhs)));
                }
                let mut args = Vec::new();
                if self.peek() == Some("(") {
                    self.i += 1;
                    loop {
                        let a = self.toks[self.i].clone();
                        self.i += 1;
                        args.push(self.term(a));
                        if self.peek() == Some(",") {
                            self.i += 1;
                        } else {
                            self.eat(")")?;
                            break;
                        }
                    }
                }
                Ok(Fol::Atom(head, args))
            }
            None => Err("unexpected end".into()),
        }
    }
    fn term(&self, name: String) -> FolTerm {
        if self.bound.contains(&name) {
            FolTerm::Var(name)
        } else {
            FolTerm::Const(name)
        }
    }
}

// ---------------------------------------------------------------------------
// Random well-typed terms

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn pred_ty(args: &[SemType]) -> SemType {
    SemType::curried(args, SemType::PROP)
}

/// Variables of sort `ty` not shadowed by a later binding.
fn visible(ctx: &[(String, SemType)], ty: &SemType) -> Vec<Term> {
    ctx.iter()
        .enumerate()
        .filter(|(i, (n, t))| t == ty && !ctx[i + 1..].iter().any(|(m, _)| m == n))
        .map(|(_, (n, t))| Term::var(n, t.clone()))
        .collect()
}

/// Generates terms over a small signature: unary predicates on Ent and
/// Ev, the relation `Subj`, individual constants and typed variables.
pub struct TermGen {
    pub rng: StdRng,
    counter: usize,
}

impl TermGen {
    pub fn new(seed: u64) -> TermGen {
        TermGen {
            rng: rng(seed),
            counter: 0,
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        // Reuse a small pool of names so shadowing and capture both occur.
        let names = ["x", "y", "z", "e", "u"];
        if self.rng.gen_bool(0.7) {
            names[self.rng.gen_range(0..names.len())].to_string()
        } else {
            format!("{base}{}", self.counter)
        }
    }

    fn small_type(&mut self) -> SemType {
        match self.rng.gen_range(0..4) {
            0 => SemType::ENT,
            1 => SemType::EV,
            2 => SemType::pred(SemType::ENT),
            _ => SemType::PROP,
        }
    }

    /// A term of type `ty` whose free variables come from `ctx`.
    pub fn term(&mut self, ty: &SemType, ctx: &mut Vec<(String, SemType)>, depth: u32) -> Term {
        if depth > 0 && self.rng.gen_bool(0.3) {
            // A redex: (λv:A.body) arg
            let a = self.small_type();
            let v = self.fresh("r");
            ctx.push((v.clone(), a.clone()));
            let body = self.term(ty, ctx, depth - 1);
            ctx.pop();
            let arg = self.term(&a, ctx, depth - 1);
            return Term::app(Term::lam(&v, a, body), arg);
        }
        match ty {
            SemType::Arrow(a, b) => {
                let vars = visible(ctx, ty);
                if !vars.is_empty() && (depth == 0 || self.rng.gen_bool(0.3)) {
                    return vars[self.rng.gen_range(0..vars.len())].clone();
                }
                if **a == SemType::ENT && **b == SemType::PROP && self.rng.gen_bool(0.3) {
                    let p = ["Man", "Tenor", "Student"][self.rng.gen_range(0..3)];
                    return Term::constant(p, ty.clone());
                }
                let v = self.fresh("l");
                ctx.push((v.clone(), (**a).clone()));
                let body = self.term(b, ctx, depth.saturating_sub(1));
                ctx.pop();
                Term::lam(&v, (**a).clone(), body)
            }
            SemType::Base(Sort::Prop) => self.prop(ctx, depth),
            SemType::Base(s) => {
                let vars = visible(ctx, ty);
                if !vars.is_empty() && self.rng.gen_bool(0.8) {
                    return vars[self.rng.gen_range(0..vars.len())].clone();
                }
                let name = match s {
                    Sort::Ent => ["john", "mary"][self.rng.gen_range(0..2)],
                    Sort::Ev => "ev0",
                    Sort::Time => "yesterday",
                    _ => "somewhere",
                };
                Term::constant(name, ty.clone())
            }
        }
    }

    fn prop(&mut self, ctx: &mut Vec<(String, SemType)>, depth: u32) -> Term {
        let choice = if depth == 0 {
            self.rng.gen_range(0..3)
        } else {
            self.rng.gen_range(0..11)
        };
        match choice {
            0 => Term::Top,
            1 => {
                let x = self.term(&SemType::ENT, ctx, 0);
                let p = ["Man", "Tenor", "Student"][self.rng.gen_range(0..3)];
                Term::app(Term::constant(p, pred_ty(&[SemType::ENT])), x)
            }
            2 => {
                let e = self.term(&SemType::EV, ctx, 0);
                let x = self.term(&SemType::ENT, ctx, 0);
                Term::apps(
                    Term::constant("Subj", pred_ty(&[SemType::EV, SemType::ENT])),
                    [e, x],
                )
            }
            3 => Term::and(self.prop(ctx, depth - 1), self.prop(ctx, depth - 1)),
            4 => Term::or(self.prop(ctx, depth - 1), self.prop(ctx, depth - 1)),
            5 => Term::imp(self.prop(ctx, depth - 1), self.prop(ctx, depth - 1)),
            6 => Term::not(self.prop(ctx, depth - 1)),
            7 | 8 => {
                let sort = if self.rng.gen_bool(0.5) {
                    Sort::Ent
                } else {
                    Sort::Ev
                };
                let v = self.fresh("q");
                ctx.push((v.clone(), SemType::Base(sort)));
                let body = self.prop(ctx, depth - 1);
                ctx.pop();
                if choice == 7 {
                    Term::exists(&v, sort, body)
                } else {
                    Term::forall(&v, sort, body)
                }
            }
            9 => {
                let a = self.term(&SemType::ENT, ctx, depth - 1);
                let b = self.term(&SemType::ENT, ctx, depth - 1);
                Term::eq(a, b)
            }
            _ => {
                let f = self.term(&pred_ty(&[SemType::ENT]), ctx, depth - 1);
                let x = self.term(&SemType::ENT, ctx, depth - 1);
                Term::app(f, x)
            }
        }
    }
}

/// A random category built from the atoms and slashes of the grammar.
pub fn random_category(r: &mut StdRng, depth: u32) -> Category {
    if depth == 0 || r.gen_bool(0.35) {
        let features = [
            Feature::Dcl,
            Feature::Wq,
            Feature::Q,
            Feature::B,
            Feature::Pss,
            Feature::None,
        ];
        return match r.gen_range(0..5) {
            0 => Category::n(),
            1 => Category::np(),
            2 => Category::pp(),
            3 => Category::s(features[r.gen_range(0..features.len())]),
            _ => Category::s_bar(features[r.gen_range(0..3)]),
        };
    }
    let slash = [Slash::Forward, Slash::Backward, Slash::Either][r.gen_range(0..3)];
    Category::functor(
        random_category(r, depth - 1),
        slash,
        random_category(r, depth - 1),
    )
}

pub fn is_atom_kind(c: &Category, k: AtomKind) -> bool {
    matches!(c, Category::Atom { kind, .. } if *kind == k)
}

/// A random closed first-order formula over a tiny signature.
pub fn random_fol(r: &mut StdRng, depth: u32, bound: &mut Vec<String>) -> Fol {
    let term = |r: &mut StdRng, bound: &Vec<String>| {
        if !bound.is_empty() && r.gen_bool(0.75) {
            FolTerm::Var(bound[r.gen_range(0..bound.len())].clone())
        } else {
            FolTerm::Const(["a", "b"][r.gen_range(0..2)].to_string())
        }
    };
    let choice = if depth == 0 {
        r.gen_range(0..3)
    } else {
        r.gen_range(0..9)
    };
    match choice {
        0 => Fol::atom(["P", "Q"][r.gen_range(0..2)], &[term(r, bound)]),
        1 => Fol::atom("R", &[term(r, bound), term(r, bound)]),
        2 => Fol::Eq(term(r, bound), term(r, bound)),
        3 => Fol::and(
            random_fol(r, depth - 1, bound),
            random_fol(r, depth - 1, bound),
        ),
        4 => Fol::or(
            random_fol(r, depth - 1, bound),
            random_fol(r, depth - 1, bound),
        ),
        5 => Fol::imp(
            random_fol(r, depth - 1, bound),
            random_fol(r, depth - 1, bound),
        ),
        6 => Fol::not(random_fol(r, depth - 1, bound)),
        _ => {
            let v = ["x", "y"][r.gen_range(0..2)].to_string();
            bound.push(v.clone());
            let body = random_fol(r, depth - 1, bound);
            bound.pop();
            if choice == 7 {
                Fol::exists(&v, body)
            } else {
                Fol::forall(&v, body)
            }
        }
    }
}
