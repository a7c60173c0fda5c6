//! End-to-end runs over QSEM problems.

mod fracas;
mod qsem;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::category::{Category, Feature};
use crate::compose::{compose, compose_answer};
use crate::derive::{parse_with, tokenize, DerivationTree, ParseOptions};
use crate::lexicon::Lexicon;
use crate::lower::{
    check_arities, lower_statement, name_predicates, name_uniqueness_axiom, parse_fol, print_fol,
    question_body, Fol, QuestionBody,
};
use crate::prove::{decide, Answer, ProofBudget, Verdict};

pub use fracas::{load_fracas_xml, parse_fracas_xml, FracasError};
pub use qsem::{
    bundled_problems, load_qsem, parse_qsem, print_qsem, QType, QsemDiagnostic, QsemError,
    QsemProblem, BUNDLED_QSEM,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Parse,
    Compose,
    Lower,
    Prove,
    Done,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::Compose => "compose",
            Stage::Lower => "lower",
            Stage::Prove => "prove",
            Stage::Done => "done",
        }
    }
}

/// One step of a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageEvent {
    pub stage: Stage,
    /// `P1`, `AUX1`, `Q`, or `problem`.
    pub item: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProblemRun {
    pub id: String,
    pub qtype: QType,
    pub gold: Option<Answer>,
    pub predicted: Answer,
    /// The stage that failed, or `Done`.
    pub stage: Stage,
    pub trace: Vec<StageEvent>,
    pub verdict: Option<Verdict>,
    /// The sequent handed to the prover, when lowering succeeded.
    pub lowered: Option<LoweredProblem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoweredProblem {
    /// Lowered premises, auxiliary premises and name axioms, in that order.
    pub premises: Vec<Fol>,
    pub body: QuestionBody,
}

impl ProblemRun {
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        for e in &self.trace {
            out.push_str(&format!(
                "{:<8} {:<7} {:<4} {}\n",
                e.stage.name(),
                e.item,
                if e.ok { "ok" } else { "FAIL" },
                e.detail
            ));
        }
        out
    }
}

/// Parses with the first preferred derivation; failures are `Err(detail)`.
fn first_parse(
    text: &str,
    lexicon: &Lexicon,
    goals: &[Category],
) -> Result<(DerivationTree, Vec<String>), String> {
    let tokens = tokenize(text);
    let opts = ParseOptions::default();
    match parse_with(&tokens, lexicon, goals, &opts) {
        Ok(mut r) if !r.trees.is_empty() => Ok((r.trees.swap_remove(0), r.synthesized)),
        Ok(_) => Err("no derivation".into()),
        Err(e) => Err(e.to_string()),
    }
}

struct Run {
    trace: Vec<StageEvent>,
}

impl Run {
    fn event(&mut self, stage: Stage, item: &str, ok: bool, detail: impl Into<String>) {
        self.trace.push(StageEvent {
            stage,
            item: item.to_string(),
            ok,
            detail: detail.into(),
        });
    }
}

/// Runs one problem through parse, compose, lower and decide. Any failure
/// ends the run with an unknown verdict and the failing stage recorded.
pub fn run_problem(p: &QsemProblem, lexicon: &Lexicon, budget: &ProofBudget) -> ProblemRun {
    let mut run = Run { trace: Vec::new() };
    let (stage, verdict, lowered) = match lower_problem(p, lexicon, &mut run) {
        Ok(l) => {
            let v = decide(&l.premises, &l.body, budget);
            let detail = match &v.provenance.closed {
                Some(s) => format!("{} ({s})", v.answer),
                None => format!(
                    "{} (gave up: {} / {})",
                    v.answer,
                    reason_name(v.provenance.yes_attempt.reason),
                    reason_name(v.provenance.no_attempt.reason)
                ),
            };
            run.event(Stage::Prove, "problem", true, detail);
            (Stage::Done, Some(v), Some(l))
        }
        Err(stage) => (stage, None, None),
    };
    ProblemRun {
        id: p.id.clone(),
        qtype: p.qtype,
        gold: p.gold,
        predicted: verdict
            .as_ref()
            .map(|v| v.answer)
            .unwrap_or(Answer::Unknown),
        stage,
        trace: run.trace,
        verdict,
        lowered,
    }
}

fn reason_name(r: Option<crate::prove::GiveUpReason>) -> String {
    r.and_then(|r| serde_json::to_value(r).ok())
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_else(|| "-".into())
}

/// Parses, composes and lowers every sentence of a problem without
/// running the prover.
pub fn lower_problem_quiet(
    p: &QsemProblem,
    lexicon: &Lexicon,
) -> Result<LoweredProblem, Vec<StageEvent>> {
    let mut run = Run { trace: Vec::new() };
    lower_problem(p, lexicon, &mut run).map_err(|_| run.trace)
}

fn lower_problem(
    p: &QsemProblem,
    lexicon: &Lexicon,
    run: &mut Run,
) -> Result<LoweredProblem, Stage> {
    let dcl = [Category::s_bar(Feature::Dcl)];
    let question_goals = [Category::s_bar(Feature::Wq), Category::s_bar(Feature::Pol)];
    let mut premises: Vec<Fol> = Vec::new();
    let mut names = BTreeSet::new();
    for (i, text) in p.premises.iter().enumerate() {
        let item = format!("P{}", i + 1);
        let tree = match first_parse(text, lexicon, &dcl) {
            Ok((tree, synth)) => {
                let note = if synth.is_empty() {
                    String::new()
                } else {
                    format!(" synthesized: {}", synth.join(" "))
                };
                run.event(
                    Stage::Parse,
                    &item,
                    true,
                    format!("{}{note}", tree.bracketed()),
                );
                tree
            }
            Err(e) => {
                run.event(Stage::Parse, &item, false, e);
                return Err(Stage::Parse);
            }
        };
        names.extend(name_predicates(&tree));
        let term = match compose_answer(&tree) {
            Ok(t) => {
                run.event(Stage::Compose, &item, true, t.to_string());
                t
            }
            Err(e) => {
                run.event(Stage::Compose, &item, false, e.to_string());
                return Err(Stage::Compose);
            }
        };
        match lower_statement(&term) {
            Ok(f) => {
                run.event(Stage::Lower, &item, true, print_fol(&f));
                premises.push(f);
            }
            Err(e) => {
                run.event(Stage::Lower, &item, false, e.to_string());
                return Err(Stage::Lower);
            }
        }
    }
    for (i, text) in p.aux_premises.iter().enumerate() {
        let item = format!("AUX{}", i + 1);
        match parse_fol(text) {
            Ok(f) if f.is_closed() => {
                run.event(Stage::Lower, &item, true, print_fol(&f));
                premises.push(f);
            }
            Ok(_) => {
                run.event(
                    Stage::Lower,
                    &item,
                    false,
                    "auxiliary premise is not closed",
                );
                return Err(Stage::Lower);
            }
            Err(e) => {
                run.event(Stage::Lower, &item, false, e.to_string());
                return Err(Stage::Lower);
            }
        }
    }
    let tree = match first_parse(&p.question, lexicon, &question_goals) {
        Ok((tree, _)) => {
            run.event(Stage::Parse, "Q", true, tree.bracketed());
            tree
        }
        Err(e) => {
            run.event(Stage::Parse, "Q", false, e);
            return Err(Stage::Parse);
        }
    };
    names.extend(name_predicates(&tree));
    let term = match compose(&tree) {
        Ok(t) => {
            run.event(Stage::Compose, "Q", true, t.to_string());
            t
        }
        Err(e) => {
            run.event(Stage::Compose, "Q", false, e.to_string());
            return Err(Stage::Compose);
        }
    };
    let body: QuestionBody = match question_body(&term) {
        Ok(b) => {
            run.event(
                Stage::Lower,
                "Q",
                true,
                format!("{}: {}", b.kind.name(), print_fol(&b.body)),
            );
            b
        }
        Err(e) => {
            run.event(Stage::Lower, "Q", false, e.to_string());
            return Err(Stage::Lower);
        }
    };
    for n in &names {
        premises.push(name_uniqueness_axiom(n));
    }
    let mut all = premises.clone();
    all.push(body.body.clone());
    if let Err(e) = check_arities(&all) {
        run.event(Stage::Lower, "problem", false, e.to_string());
        return Err(Stage::Lower);
    }
    Ok(LoweredProblem { premises, body })
}

/// One bucket per outcome; every problem lands in exactly one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub correct: usize,
    pub incorrect: usize,
    pub parse_fail: usize,
    pub compose_fail: usize,
    pub gave_up: usize,
    pub unlabeled: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.correct
            + self.incorrect
            + self.parse_fail
            + self.compose_fail
            + self.gave_up
            + self.unlabeled
    }

    pub fn labeled(&self) -> usize {
        self.total() - self.unlabeled
    }

    fn add(&mut self, o: Outcome) {
        match o {
            Outcome::Correct => self.correct += 1,
            Outcome::Incorrect => self.incorrect += 1,
            Outcome::ParseFail => self.parse_fail += 1,
            Outcome::ComposeFail => self.compose_fail += 1,
            Outcome::GaveUp => self.gave_up += 1,
            Outcome::Unlabeled => self.unlabeled += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Correct,
    Incorrect,
    ParseFail,
    ComposeFail,
    GaveUp,
    Unlabeled,
}

pub fn outcome(run: &ProblemRun) -> Outcome {
    let Some(gold) = run.gold else {
        return Outcome::Unlabeled;
    };
    match run.stage {
        Stage::Parse => Outcome::ParseFail,
        Stage::Compose | Stage::Lower => Outcome::ComposeFail,
        _ if run.predicted == gold => Outcome::Correct,
        _ if run.predicted == Answer::Unknown => Outcome::GaveUp,
        _ => Outcome::Incorrect,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub qtype: QType,
    pub gold: Option<Answer>,
    pub predicted: Answer,
    pub stage: Stage,
    pub outcome: Outcome,
    pub closed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub per_qtype: BTreeMap<QType, Counts>,
    pub overall: Counts,
    /// Correct over labeled problems; `None` when nothing is labeled.
    pub accuracy: Option<f64>,
    pub rows: Vec<ReportRow>,
}

fn id_key(id: &str) -> (u64, String) {
    let digits: String = id.chars().take_while(char::is_ascii_digit).collect();
    (digits.parse().unwrap_or(u64::MAX), id.to_string())
}

/// Runs every problem (optionally of one type) in parallel; rows come
/// back ordered by id.
pub fn evaluate(
    problems: &[QsemProblem],
    lexicon: &Lexicon,
    budget: &ProofBudget,
    filter: Option<QType>,
) -> (EvalReport, Vec<ProblemRun>) {
    let mut runs: Vec<ProblemRun> = problems
        .par_iter()
        .filter(|p| filter.map_or(true, |q| p.qtype == q))
        .map(|p| run_problem(p, lexicon, budget))
        .collect();
    runs.sort_by(|a, b| id_key(&a.id).cmp(&id_key(&b.id)));
    (report(&runs), runs)
}

pub fn report(runs: &[ProblemRun]) -> EvalReport {
    let mut per_qtype: BTreeMap<QType, Counts> = BTreeMap::new();
    let mut overall = Counts::default();
    let mut rows = Vec::new();
    for r in runs {
        let o = outcome(r);
        overall.add(o);
        per_qtype.entry(r.qtype).or_default().add(o);
        rows.push(ReportRow {
            id: r.id.clone(),
            qtype: r.qtype,
            gold: r.gold,
            predicted: r.predicted,
            stage: r.stage,
            outcome: o,
            closed: r.verdict.as_ref().and_then(|v| v.provenance.closed.clone()),
        });
    }
    let accuracy =
        (overall.labeled() > 0).then(|| overall.correct as f64 / overall.labeled() as f64);
    EvalReport {
        per_qtype,
        overall,
        accuracy,
        rows,
    }
}

impl EvalReport {
    pub fn accuracy_text(&self) -> String {
        match self.accuracy {
            Some(a) => format!(
                "{:.3} ({}/{})",
                a,
                self.overall.correct,
                self.overall.labeled()
            ),
            None => "n/a".to_string(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<6} {:<7} {:<8} {:<9} {:<8} {}\n",
            "id", "type", "gold", "predicted", "stage", "outcome"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<6} {:<7} {:<8} {:<9} {:<8} {:?}\n",
                r.id,
                r.qtype.name(),
                r.gold.map(Answer::label).unwrap_or("-"),
                r.predicted.label(),
                r.stage.name(),
                r.outcome
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "{:<7} {:>7} {:>9} {:>10} {:>12} {:>7} {:>9}\n",
            "type", "correct", "incorrect", "parse_fail", "compose_fail", "gave_up", "unlabeled"
        ));
        let line = |name: &str, c: &Counts| {
            format!(
                "{:<7} {:>7} {:>9} {:>10} {:>12} {:>7} {:>9}\n",
                name, c.correct, c.incorrect, c.parse_fail, c.compose_fail, c.gave_up, c.unlabeled
            )
        };
        for (q, c) in &self.per_qtype {
            out.push_str(&line(q.name(), c));
        }
        out.push_str(&line("all", &self.overall));
        out.push_str(&format!("accuracy: {}\n", self.accuracy_text()));
        out
    }

    pub fn render_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if self.accuracy.is_none() {
            v["accuracy"] = serde_json::Value::String("n/a".into());
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}
