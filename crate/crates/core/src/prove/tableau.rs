//! Ground analytic tableau with equality on constants.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::lower::{print_fol, Fol, FolTerm};

/// Resource bounds for one proof attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProofBudget {
    /// γ-instantiations allowed along any single branch.
    pub max_quantifier_instantiations: usize,
    /// Nested branch splits allowed along any single branch.
    pub max_branch_depth: usize,
    pub timeout_ms: u64,
}

impl Default for ProofBudget {
    fn default() -> Self {
        ProofBudget {
            max_quantifier_instantiations: 200,
            max_branch_depth: 40,
            timeout_ms: 2000,
        }
    }
}

impl ProofBudget {
    /// The share each of two competing attempts receives.
    pub fn halved(&self) -> ProofBudget {
        ProofBudget {
            max_quantifier_instantiations: (self.max_quantifier_instantiations / 2).max(1),
            max_branch_depth: self.max_branch_depth,
            timeout_ms: (self.timeout_ms / 2).max(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofStatus {
    Proved,
    GaveUp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GiveUpReason {
    /// An open branch had nothing left to expand.
    Saturated,
    InstantiationLimit,
    DepthLimit,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofOutcome {
    pub status: ProofStatus,
    pub reason: Option<GiveUpReason>,
    /// γ-instantiations performed over all rounds.
    pub instantiations: usize,
    pub branches: usize,
    pub rounds: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ProofOutcome {
    pub fn proved(&self) -> bool {
        self.status == ProofStatus::Proved
    }
}

const MAX_STEPS_PER_ROUND: usize = 2_000_000;
const TRACE_CAP: usize = 5000;

/// Negation normal form: no `→`, negation only on atoms and equations.
pub fn nnf(f: &Fol) -> Fol {
    to_nnf(f, true)
}

fn to_nnf(f: &Fol, pos: bool) -> Fol {
    match f {
        Fol::Atom(..) | Fol::Eq(..) => {
            if pos {
                f.clone()
            } else {
                Fol::not(f.clone())
            }
        }
        Fol::Top => {
            if pos {
                Fol::Top
            } else {
                Fol::Bottom
            }
        }
        Fol::Bottom => {
            if pos {
                Fol::Bottom
            } else {
                Fol::Top
            }
        }
        Fol::Not(a) => to_nnf(a, !pos),
        Fol::And(a, b) if pos => Fol::and(to_nnf(a, true), to_nnf(b, true)),
        Fol::And(a, b) => Fol::or(to_nnf(a, false), to_nnf(b, false)),
        Fol::Or(a, b) if pos => Fol::or(to_nnf(a, true), to_nnf(b, true)),
        Fol::Or(a, b) => Fol::and(to_nnf(a, false), to_nnf(b, false)),
        Fol::Imp(a, b) if pos => Fol::or(to_nnf(a, false), to_nnf(b, true)),
        Fol::Imp(a, b) => Fol::and(to_nnf(a, true), to_nnf(b, false)),
        Fol::Exists(v, b) if pos => Fol::exists(v, to_nnf(b, true)),
        Fol::Exists(v, b) => Fol::forall(v, to_nnf(b, false)),
        Fol::Forall(v, b) if pos => Fol::forall(v, to_nnf(b, true)),
        Fol::Forall(v, b) => Fol::exists(v, to_nnf(b, false)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Lit {
    pos: bool,
    /// `None` for an equation.
    pred: Option<String>,
    args: Vec<FolTerm>,
}

fn as_lit(f: &Fol) -> Option<Lit> {
    match f {
        Fol::Atom(p, args) => Some(Lit {
            pos: true,
            pred: Some(p.clone()),
            args: args.clone(),
        }),
        Fol::Eq(a, b) => Some(Lit {
            pos: true,
            pred: None,
            args: vec![a.clone(), b.clone()],
        }),
        Fol::Not(inner) => as_lit(inner).map(|mut l| {
            l.pos = !l.pos;
            l
        }),
        _ => None,
    }
}

#[derive(Debug, Clone)]
struct Gamma {
    /// The block of leading universal variables.
    vars: Vec<String>,
    body: Fol,
    used: HashSet<Vec<String>>,
}

impl Gamma {
    fn new(var: String, body: Fol) -> Gamma {
        let mut vars = vec![var];
        let mut body = body;
        while let Fol::Forall(v, inner) = body {
            vars.push(v);
            body = *inner;
        }
        Gamma {
            vars,
            body,
            used: HashSet::new(),
        }
    }

    fn instance(&self, tuple: &[String]) -> Fol {
        // A repeated name is bound by its innermost occurrence only.
        let mut f = self.body.clone();
        for (i, (v, c)) in self.vars.iter().zip(tuple).enumerate() {
            if !self.vars[i + 1..].contains(v) {
                f = f.subst(v, &FolTerm::Const(c.clone()));
            }
        }
        f
    }
}

#[derive(Debug, Clone, Default)]
struct Branch {
    lits: Vec<Lit>,
    todo: Vec<Fol>,
    gammas: Vec<Gamma>,
    consts: Vec<String>,
    rep: HashMap<String, String>,
    inst: usize,
    gamma_steps: usize,
    depth: usize,
}

impl Branch {
    fn find<'a>(&'a self, c: &'a str) -> &'a str {
        self.rep.get(c).map(String::as_str).unwrap_or(c)
    }

    fn same(&self, a: &FolTerm, b: &FolTerm) -> bool {
        match (a, b) {
            (FolTerm::Const(x), FolTerm::Const(y)) => self.find(x) == self.find(y),
            _ => a == b,
        }
    }

    fn add_const(&mut self, c: &str) {
        if !self.consts.iter().any(|k| k == c) {
            self.consts.push(c.to_string());
        }
    }

    fn complementary(&self, l: &Lit, m: &Lit) -> bool {
        l.pos != m.pos
            && l.pred == m.pred
            && l.args.len() == m.args.len()
            && l.args.iter().zip(&m.args).all(|(a, b)| self.same(a, b))
    }

    fn holds(&self, l: &Lit) -> bool {
        if l.pred.is_none() && l.pos && self.same(&l.args[0], &l.args[1]) {
            return true;
        }
        self.lits.iter().any(|m| {
            m.pos == l.pos
                && m.pred == l.pred
                && m.args.len() == l.args.len()
                && m.args.iter().zip(&l.args).all(|(a, b)| self.same(a, b))
        })
    }

    fn contradicted(&self, l: &Lit) -> bool {
        if l.pred.is_none() && !l.pos && self.same(&l.args[0], &l.args[1]) {
            return true;
        }
        if l.pred.is_none() && l.pos {
            let (a, c) = (&l.args[0], &l.args[1]);
            return self.lits.iter().any(|m| {
                m.pred.is_none()
                    && !m.pos
                    && ((self.same(&m.args[0], a) && self.same(&m.args[1], c))
                        || (self.same(&m.args[0], c) && self.same(&m.args[1], a)))
            });
        }
        self.lits.iter().any(|m| self.complementary(l, m))
    }

    fn is_closed(&self) -> bool {
        self.lits
            .iter()
            .any(|l| l.pred.is_none() && !l.pos && self.same(&l.args[0], &l.args[1]))
            || self.lits.iter().enumerate().any(|(i, l)| {
                l.pred.is_some() && self.lits[i + 1..].iter().any(|m| self.complementary(l, m))
            })
    }

    /// Adds a literal; returns true when the branch closes.
    fn add_lit(&mut self, l: Lit) -> bool {
        if l.pred.is_none() && l.pos {
            if let (FolTerm::Const(a), FolTerm::Const(b)) = (&l.args[0], &l.args[1]) {
                let ra = self.find(a).to_string();
                let rb = self.find(b).to_string();
                self.lits.push(l);
                if ra != rb {
                    for c in self.consts.clone() {
                        if self.find(&c) == rb {
                            self.rep.insert(c, ra.clone());
                        }
                    }
                    return self.is_closed();
                }
                return false;
            }
        }
        let closes = self.contradicted(&l);
        self.lits.push(l);
        closes
    }
}

fn disjuncts(f: Fol, out: &mut Vec<Fol>) {
    match f {
        Fol::Or(a, b) => {
            disjuncts(*a, out);
            disjuncts(*b, out);
        }
        other => out.push(other),
    }
}

enum Split {
    Done(bool),
    Continue(Branch),
}

struct Search<'a> {
    limit: usize,
    depth_limit: usize,
    deadline: Instant,
    steps: usize,
    instantiations: usize,
    branches: usize,
    fresh: usize,
    reason: Option<GiveUpReason>,
    trace: Option<&'a mut Vec<String>>,
}

impl Search<'_> {
    fn note(&mut self, line: impl FnOnce() -> String) {
        if let Some(t) = self.trace.as_deref_mut() {
            if t.len() < TRACE_CAP {
                t.push(line());
            }
        }
    }

    fn give_up(&mut self, r: GiveUpReason) -> bool {
        // Keep the most informative reason: limits outrank saturation.
        let better = match (self.reason, r) {
            (None, _) => true,
            (Some(GiveUpReason::Saturated), _) => true,
            (Some(GiveUpReason::Timeout), _) => false,
            (_, GiveUpReason::Timeout) => true,
            _ => false,
        };
        if better {
            self.reason = Some(r);
        }
        false
    }

    fn fresh_const(&mut self, b: &Branch) -> String {
        loop {
            self.fresh += 1;
            let c = format!("sk{}", self.fresh);
            if !b.consts.contains(&c) {
                return c;
            }
        }
    }

    /// Returns true when every branch below `b` closes.
    fn run(&mut self, mut b: Branch) -> bool {
        loop {
            self.steps += 1;
            if self.steps > MAX_STEPS_PER_ROUND
                || (self.steps % 256 == 0 && Instant::now() >= self.deadline)
            {
                return self.give_up(GiveUpReason::Timeout);
            }
            if let Some(i) = b.todo.iter().position(|f| !matches!(f, Fol::Or(..))) {
                let f = b.todo.remove(i);
                match f {
                    Fol::Top => {}
                    Fol::Bottom => return true,
                    Fol::And(x, y) => {
                        b.todo.push(*x);
                        b.todo.push(*y);
                    }
                    Fol::Exists(v, body) => {
                        let c = self.fresh_const(&b);
                        self.note(|| format!("{}δ {v} := {c}", "  ".repeat(b.depth)));
                        b.add_const(&c);
                        b.todo.push(body.subst(&v, &FolTerm::Const(c)));
                    }
                    Fol::Forall(var, body) => b.gammas.push(Gamma::new(var, *body)),
                    other => {
                        let l = as_lit(&other).expect("NNF leaves are literals");
                        for t in &l.args {
                            if let FolTerm::Const(c) = t {
                                b.add_const(c);
                            }
                        }
                        if b.add_lit(l) {
                            self.note(|| {
                                format!("{}closed by {}", "  ".repeat(b.depth), print_fol(&other))
                            });
                            return true;
                        }
                    }
                }
                continue;
            }
            if b.todo.iter().any(|f| matches!(f, Fol::Or(..))) {
                match self.split(b) {
                    Split::Done(closed) => return closed,
                    Split::Continue(next) => {
                        b = next;
                        if !b.todo.is_empty() {
                            continue;
                        }
                    }
                }
            }
            if !self.gamma(&mut b) {
                return false;
            }
        }
    }

    fn split(&mut self, mut b: Branch) -> Split {
        let mut reduced: Vec<Vec<Fol>> = Vec::new();
        for f in std::mem::take(&mut b.todo) {
            let mut ds = Vec::new();
            disjuncts(f, &mut ds);
            let mut live = Vec::new();
            let mut satisfied = false;
            for d in ds {
                match (&d, as_lit(&d)) {
                    (Fol::Bottom, _) => {}
                    (Fol::Top, _) => satisfied = true,
                    (_, Some(l)) if b.contradicted(&l) => {}
                    (_, Some(l)) if b.holds(&l) => satisfied = true,
                    _ => live.push(d),
                }
            }
            if satisfied {
                continue;
            }
            if live.is_empty() {
                return Split::Done(true);
            }
            reduced.push(live);
        }
        let pick = reduced
            .iter()
            .enumerate()
            .min_by_key(|(_, l)| l.len())
            .map(|(i, l)| (i, l.len()));
        let Some((pick, len)) = pick else {
            return Split::Continue(b);
        };
        let mut chosen = Vec::new();
        for (i, l) in reduced.into_iter().enumerate() {
            if i == pick {
                chosen = l;
            } else {
                b.todo
                    .push(l.into_iter().reduce(Fol::or).expect("non-empty"));
            }
        }
        if len == 1 {
            b.todo.push(chosen.pop().expect("one disjunct"));
            return Split::Continue(b);
        }
        if b.depth >= self.depth_limit {
            return Split::Done(self.give_up(GiveUpReason::DepthLimit));
        }
        for d in chosen {
            let mut nb = b.clone();
            nb.depth += 1;
            self.branches += 1;
            self.note(|| format!("{}β {}", "  ".repeat(b.depth), print_fol(&d)));
            nb.todo.push(d);
            if !self.run(nb) {
                return Split::Done(false);
            }
        }
        Split::Done(true)
    }

    /// Performs one γ-instantiation of a whole universal block; false when
    /// the branch stays open.
    fn gamma(&mut self, b: &mut Branch) -> bool {
        if b.gammas.is_empty() {
            return self.give_up(GiveUpReason::Saturated);
        }
        if b.consts.is_empty() {
            let c = self.fresh_const(b);
            b.add_const(&c);
        }
        b.gamma_steps += 1;
        let fair_turn = b.gamma_steps % FAIR_PERIOD == 0;
        let mut best: Option<(Candidate, usize, Vec<String>)> = None;
        if !fair_turn {
            for gi in 0..b.gammas.len() {
                for tuple in matched_tuples(b, gi) {
                    if b.gammas[gi].used.contains(&tuple) {
                        continue;
                    }
                    let Some(c) = assess(b, &b.gammas[gi].instance(&tuple)) else {
                        b.gammas[gi].used.insert(tuple);
                        continue;
                    };
                    if best.as_ref().map_or(true, |(old, _, _)| c.better_than(old)) {
                        best = Some((c, gi, tuple));
                    }
                }
            }
        }
        let pick = match best {
            Some((c, gi, t)) if c.matched > 0 => Some((gi, t)),
            _ => self.fair_candidate(b),
        };
        let Some((gi, tuple)) = pick else {
            return self.give_up(GiveUpReason::Saturated);
        };
        let cost = b.gammas[gi].vars.len();
        if b.inst + cost > self.limit {
            return self.give_up(GiveUpReason::InstantiationLimit);
        }
        b.inst += cost;
        self.instantiations += cost;
        let g = &mut b.gammas[gi];
        let inst = g.instance(&tuple);
        let vars = g.vars.join(" ");
        g.used.insert(tuple.clone());
        self.note(|| format!("{}γ {vars} := {}", "  ".repeat(b.depth), tuple.join(" ")));
        b.todo.push(inst);
        true
    }

    /// The least-used block's first unused tuple, enumerated by growing
    /// constant index so every tuple is reached eventually.
    fn fair_candidate(&mut self, b: &mut Branch) -> Option<(usize, Vec<String>)> {
        let mut order: Vec<usize> = (0..b.gammas.len()).collect();
        order.sort_by_key(|&gi| (b.gammas[gi].used.len(), gi));
        for gi in order {
            let n = b.gammas[gi].vars.len();
            let k = b.consts.len();
            let mut scanned = 0usize;
            for bound in 0..k {
                let mut idx = vec![0usize; n];
                loop {
                    if idx.iter().any(|&i| i == bound) {
                        let tuple: Vec<String> = idx.iter().map(|&i| b.consts[i].clone()).collect();
                        if !b.gammas[gi].used.contains(&tuple) {
                            if assess(b, &b.gammas[gi].instance(&tuple)).is_some() {
                                return Some((gi, tuple));
                            }
                            b.gammas[gi].used.insert(tuple);
                        }
                        scanned += 1;
                        if scanned > FAIR_SCAN_CAP {
                            break;
                        }
                    }
                    let mut p = n;
                    let mut carry = true;
                    while carry && p > 0 {
                        p -= 1;
                        if idx[p] < bound {
                            idx[p] += 1;
                            carry = false;
                        } else {
                            idx[p] = 0;
                        }
                    }
                    if carry {
                        break;
                    }
                }
                if scanned > FAIR_SCAN_CAP {
                    break;
                }
            }
        }
        None
    }
}

const FAIR_SCAN_CAP: usize = 20_000;
/// Every this many γ-steps, the fair choice overrides the guided one.
const FAIR_PERIOD: usize = 5;
const MATCH_NODE_CAP: usize = 4_000;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    /// Disjuncts left after dropping those the branch refutes.
    residual: usize,
    matched: usize,
}

impl Candidate {
    fn better_than(&self, o: &Candidate) -> bool {
        (self.residual, std::cmp::Reverse(self.matched))
            < (o.residual, std::cmp::Reverse(o.matched))
    }
}

/// `None` when the instance is already true on the branch.
fn assess(b: &Branch, inst: &Fol) -> Option<Candidate> {
    let mut ds = Vec::new();
    disjuncts(inst.clone(), &mut ds);
    let mut residual = 0;
    let mut matched = 0;
    for d in &ds {
        match (d, as_lit(d)) {
            (Fol::Top, _) => return None,
            (Fol::Bottom, _) => matched += 1,
            (_, Some(l)) if b.holds(&l) => return None,
            (_, Some(l)) if b.contradicted(&l) => matched += 1,
            _ => residual += 1,
        }
    }
    Some(Candidate { residual, matched })
}

/// Substitutions for a block obtained by matching its literal disjuncts
/// against complementary branch literals. Unbound variables take the
/// first constant.
fn matched_tuples(b: &Branch, gi: usize) -> Vec<Vec<String>> {
    let g = &b.gammas[gi];
    let mut ds = Vec::new();
    disjuncts(g.body.clone(), &mut ds);
    let lits: Vec<Lit> = ds
        .iter()
        .filter_map(as_lit)
        .filter(|l| l.pred.is_some())
        .collect();
    let mut out: Vec<Vec<String>> = Vec::new();
    let mut binding: HashMap<String, String> = HashMap::new();
    let mut nodes = 0;
    match_rec(b, &g.vars, &lits, 0, &mut binding, &mut out, &mut nodes);
    out
}

fn match_rec(
    b: &Branch,
    vars: &[String],
    lits: &[Lit],
    i: usize,
    binding: &mut HashMap<String, String>,
    out: &mut Vec<Vec<String>>,
    nodes: &mut usize,
) {
    *nodes += 1;
    if *nodes > MATCH_NODE_CAP {
        return;
    }
    if i == lits.len() {
        if binding.is_empty() {
            return;
        }
        let tuple: Vec<String> = vars
            .iter()
            .map(|v| {
                binding
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| b.consts[0].clone())
            })
            .collect();
        if !out.contains(&tuple) {
            out.push(tuple);
        }
        return;
    }
    let l = &lits[i];
    for m in &b.lits {
        if m.pos == l.pos || m.pred != l.pred || m.args.len() != l.args.len() {
            continue;
        }
        let mut added = Vec::new();
        let mut ok = true;
        for (a, t) in l.args.iter().zip(&m.args) {
            let FolTerm::Const(tc) = t else {
                ok = false;
                break;
            };
            match a {
                FolTerm::Var(v) if vars.contains(v) => match binding.get(v) {
                    Some(c) => {
                        if b.find(c) != b.find(tc) {
                            ok = false;
                            break;
                        }
                    }
                    None => {
                        binding.insert(v.clone(), tc.clone());
                        added.push(v.clone());
                    }
                },
                other => {
                    if !b.same(other, t) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            match_rec(b, vars, lits, i + 1, binding, out, nodes);
        }
        for v in added {
            binding.remove(&v);
        }
    }
    match_rec(b, vars, lits, i + 1, binding, out, nodes);
}

fn initial_branch(formulas: &[Fol]) -> Branch {
    let mut b = Branch::default();
    for f in formulas {
        for c in f.constants() {
            b.add_const(&c);
        }
        b.todo.push(nnf(f));
    }
    b
}

fn round_limits(max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 8.min(max).max(1);
    while k < max {
        out.push(k);
        k *= 2;
    }
    out.push(max.max(1));
    out
}

/// A refutation attempt for a formula set, run by rounds of growing
/// instantiation limits.
pub(crate) struct Attempt {
    formulas: Vec<Fol>,
    limits: Vec<usize>,
    depth_limit: usize,
    time_left: Duration,
    pub(crate) outcome: ProofOutcome,
    pub(crate) finished: bool,
}

impl Attempt {
    pub(crate) fn new(formulas: Vec<Fol>, budget: &ProofBudget) -> Attempt {
        Attempt {
            formulas,
            limits: round_limits(budget.max_quantifier_instantiations),
            depth_limit: budget.max_branch_depth,
            time_left: Duration::from_millis(budget.timeout_ms),
            outcome: ProofOutcome {
                status: ProofStatus::GaveUp,
                reason: None,
                instantiations: 0,
                branches: 0,
                rounds: 0,
                elapsed: Duration::ZERO,
            },
            finished: false,
        }
    }

    /// Runs the next round. Returns true once the attempt is over.
    pub(crate) fn step(&mut self, trace: Option<&mut Vec<String>>) -> bool {
        if self.finished {
            return true;
        }
        let Some(&limit) = self.limits.get(self.outcome.rounds) else {
            self.finished = true;
            return true;
        };
        let start = Instant::now();
        let mut s = Search {
            limit,
            depth_limit: self.depth_limit,
            deadline: start + self.time_left,
            steps: 0,
            instantiations: 0,
            branches: 1,
            fresh: 0,
            reason: None,
            trace,
        };
        s.note(|| format!("round {} (limit {limit})", self.outcome.rounds + 1));
        let closed = s.run(initial_branch(&self.formulas));
        let spent = start.elapsed();
        self.time_left = self.time_left.saturating_sub(spent);
        self.outcome.elapsed += spent;
        self.outcome.rounds += 1;
        self.outcome.instantiations += s.instantiations;
        self.outcome.branches += s.branches;
        if closed {
            self.outcome.status = ProofStatus::Proved;
            self.outcome.reason = None;
            self.finished = true;
        } else {
            self.outcome.reason = s.reason.or(Some(GiveUpReason::Saturated));
            let out_of_time = self.time_left.is_zero() || s.reason == Some(GiveUpReason::Timeout);
            let saturated = s.reason == Some(GiveUpReason::Saturated);
            let last = self.outcome.rounds >= self.limits.len();
            self.finished = out_of_time || saturated || last;
        }
        self.finished
    }
}

/// Proves `premises ⊨ goal` by closing a tableau for the premises and
/// the negated goal.
pub fn prove(premises: &[Fol], goal: &Fol, budget: &ProofBudget) -> ProofOutcome {
    refute(&with_negated(premises, goal), budget)
}

/// Like [`prove`], also returning a step-by-step trace of every round.
pub fn prove_traced(
    premises: &[Fol],
    goal: &Fol,
    budget: &ProofBudget,
) -> (ProofOutcome, Vec<String>) {
    let mut a = Attempt::new(with_negated(premises, goal), budget);
    let mut trace = Vec::new();
    while !a.step(Some(&mut trace)) {}
    (a.outcome, trace)
}

/// Shows that the formulas are jointly unsatisfiable.
pub fn refute(formulas: &[Fol], budget: &ProofBudget) -> ProofOutcome {
    let mut a = Attempt::new(formulas.to_vec(), budget);
    while !a.step(None) {}
    a.outcome
}

fn with_negated(premises: &[Fol], goal: &Fol) -> Vec<Fol> {
    let mut fs = premises.to_vec();
    fs.push(Fol::not(goal.clone()));
    fs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lower::parse_fol;

    fn p(s: &str) -> Fol {
        parse_fol(s).unwrap()
    }

    fn b() -> ProofBudget {
        ProofBudget::default()
    }

    #[test]
    fn excluded_middle() {
        assert!(prove(&[], &p("P | ~P"), &b()).proved());
    }

    #[test]
    fn distinct_atoms_give_up() {
        let o = prove(&[p("P")], &p("Q"), &b());
        assert_eq!(o.status, ProofStatus::GaveUp);
        assert_eq!(o.reason, Some(GiveUpReason::Saturated));
    }

    #[test]
    fn universal_with_witness() {
        let prem = [p("forall x. (Man(x) -> Want(x))"), p("Man(a)")];
        assert!(prove(&prem, &p("exists x. Want(x)"), &b()).proved());
    }

    #[test]
    fn equality_congruence() {
        let prem = [p("P(a)"), p("a = b"), p("b = c")];
        assert!(prove(&prem, &p("P(c)"), &b()).proved());
        assert!(prove(&[p("a = b")], &p("b = a"), &b()).proved());
        assert!(!prove(&[p("P(a)")], &p("P(b)"), &b()).proved());
    }

    #[test]
    fn name_uniqueness_merges_witnesses() {
        let prem = [
            p("exists x. (Bill(x) & Smokes(x))"),
            p("exists x. (Bill(x) & Student(x))"),
            p("forall x. forall y. (Bill(x) & Bill(y) -> x = y)"),
        ];
        assert!(prove(&prem, &p("exists x. (Student(x) & Smokes(x))"), &b()).proved());
        assert!(!prove(&prem[..2], &p("exists x. (Student(x) & Smokes(x))"), &b()).proved());
    }

    #[test]
    fn infinite_search_stops_within_budget() {
        let prem = [p("forall x. exists y. R(x, y)"), p("R(a, a)")];
        let small = ProofBudget {
            max_quantifier_instantiations: 20,
            max_branch_depth: 40,
            timeout_ms: 1000,
        };
        let o = prove(&prem, &p("Q"), &small);
        assert_eq!(o.status, ProofStatus::GaveUp);
        assert_eq!(o.reason, Some(GiveUpReason::InstantiationLimit));
    }

    #[test]
    fn trace_records_steps() {
        let (o, t) = prove_traced(
            &[p("forall x. (A(x) -> B(x))"), p("A(c)")],
            &p("B(c)"),
            &b(),
        );
        assert!(o.proved());
        assert!(t.iter().any(|l| l.contains("γ x := c")), "{t:?}");
        let (o, _) = prove_traced(
            &[p("forall x. forall y. (R(x, y) -> S(y, x))"), p("R(a, b)")],
            &p("S(b, a)"),
            &b(),
        );
        assert!(o.proved());
    }

    #[test]
    fn nnf_pushes_negation() {
        assert_eq!(
            print_fol(&nnf(&p("~(forall x. (A(x) -> B(x)))"))),
            "exists x. (A(x) & ~B(x))"
        );
    }
}
