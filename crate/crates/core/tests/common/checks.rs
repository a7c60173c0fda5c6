//! Checks shared by the test files and the acceptance runner.

use ccgq::harness::{
    bundled_problems, lower_problem_quiet, run_problem, ProblemRun, QType, QsemProblem, Stage,
};
use ccgq::lexicon::Lexicon;
use ccgq::lower::{print_fol, Fol, QuestionBody, QuestionKind};
use ccgq::prove::{decide, prove, Answer, ProofBudget};

use super::{countermodel, random_fol, rng};

pub fn small_budget() -> ProofBudget {
    ProofBudget {
        max_quantifier_instantiations: 60,
        max_branch_depth: 20,
        timeout_ms: 500,
    }
}

/// A random problem over the tiny signature: up to three premises and a goal.
pub fn random_problem(seed: u64) -> (Vec<Fol>, Fol) {
    use rand::Rng;
    let mut r = rng(seed);
    let n = r.gen_range(0..=3);
    let premises = (0..n)
        .map(|_| random_fol(&mut r, 3, &mut Vec::new()))
        .collect();
    (premises, random_fol(&mut r, 3, &mut Vec::new()))
}

/// Proofs must not have countermodels over domains up to `max`.
pub fn check_proof_sound(
    premises: &[Fol],
    goal: &Fol,
    budget: &ProofBudget,
    max: usize,
) -> Result<bool, String> {
    let out = prove(premises, goal, budget);
    if !out.proved() {
        return Ok(false);
    }
    match countermodel(premises, goal, max) {
        None => Ok(true),
        Some((n, m)) => Err(format!(
            "proved {} from [{}] but a countermodel of size {n} exists: {m:?}",
            print_fol(goal),
            premises
                .iter()
                .map(print_fol)
                .collect::<Vec<_>>()
                .join("; ")
        )),
    }
}

/// A Yes verdict needs premises ⊨ body, a No verdict premises ⊨ ¬body.
pub fn check_verdict_sound(
    premises: &[Fol],
    q: &QuestionBody,
    budget: &ProofBudget,
    max: usize,
) -> Result<Answer, String> {
    let v = decide(premises, q, budget);
    let goal = match v.answer {
        Answer::Yes => q.body.clone(),
        Answer::No => Fol::not(q.body.clone()),
        Answer::Unknown => return Ok(Answer::Unknown),
    };
    match countermodel(premises, &goal, max) {
        None => Ok(v.answer),
        Some((n, _)) => Err(format!(
            "answered {} for {} with a countermodel of size {n}",
            v.answer.label(),
            print_fol(&q.body)
        )),
    }
}

pub fn polar(body: Fol) -> QuestionBody {
    QuestionBody {
        kind: QuestionKind::Polar,
        body,
    }
}

/// Runs the random and bundled soundness checks; returns the number of
/// checked non-trivial answers.
pub fn soundness_suite(cases: u64, max: usize) -> Result<usize, String> {
    let budget = small_budget();
    let mut decided = 0;
    for seed in 0..cases {
        let (premises, goal) = random_problem(seed);
        if check_proof_sound(&premises, &goal, &budget, max)? {
            decided += 1;
        }
        if check_verdict_sound(&premises, &polar(goal), &budget, max)? != Answer::Unknown {
            decided += 1;
        }
    }
    let lex = Lexicon::bundled();
    for p in bundled_problems() {
        if let Ok(l) = lower_problem_quiet(&p, &lex) {
            if check_verdict_sound(&l.premises, &l.body, &ProofBudget::default(), max)?
                != Answer::Unknown
            {
                decided += 1;
            }
        }
    }
    Ok(decided)
}

/// Word-salad problems drawn from the lexicon's word forms. Even cases
/// fuzz the premise, odd cases the question.
pub fn fuzz_problems(count: usize, seed: u64) -> Vec<QsemProblem> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let lex = Lexicon::bundled();
    let mut forms: Vec<String> = lex.entries().iter().map(|e| e.form.clone()).collect();
    forms.sort();
    forms.dedup();
    forms.extend(["Mary", "Smith", "zorblax", "ran"].map(String::from));
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=7);
            let words: Vec<&str> = (0..n)
                .map(|_| forms.choose(&mut r).unwrap().as_str())
                .collect();
            let mut salad = words.join(" ");
            if let Some(f) = salad.get_mut(0..1) {
                f.make_ascii_uppercase();
            }
            let (premise, question) = if i % 2 == 0 {
                (format!("{salad}."), "Did John meet Mary?".to_string())
            } else {
                ("John met Mary.".to_string(), format!("{salad}?"))
            };
            QsemProblem {
                id: format!("{i}"),
                premises: vec![premise],
                aux_premises: Vec::new(),
                qtype: QType::of_question(&question),
                question,
                gold: None,
            }
        })
        .collect()
}

/// Failed runs are unknown and end in a failed event; finished runs carry
/// the verdict they report.
pub fn check_run_shape(run: &ProblemRun) -> Result<(), String> {
    let last = run.trace.last().ok_or("empty trace")?;
    if run.stage == Stage::Done {
        let v = run.verdict.as_ref().ok_or("finished run without verdict")?;
        if v.answer != run.predicted {
            return Err(format!(
                "problem {}: reported {:?}, verdict {:?}",
                run.id, run.predicted, v.answer
            ));
        }
        if run.trace.iter().any(|e| !e.ok) {
            return Err(format!("problem {}: finished with a failed event", run.id));
        }
    } else {
        if run.predicted != Answer::Unknown {
            return Err(format!(
                "problem {}: failed at {} but answered {:?}",
                run.id,
                run.stage.name(),
                run.predicted
            ));
        }
        if last.ok || last.stage != run.stage {
            return Err(format!(
                "problem {}: last event {:?} does not record the failure at {}",
                run.id,
                last,
                run.stage.name()
            ));
        }
    }
    Ok(())
}

/// Runs the fuzz corpus, catching panics; returns how many runs finished.
pub fn fuzz_suite(count: usize, seed: u64) -> Result<usize, String> {
    let lex = Lexicon::bundled();
    let budget = small_budget();
    let mut done = 0;
    for p in fuzz_problems(count, seed) {
        let run = std::panic::catch_unwind(|| run_problem(&p, &lex, &budget)).map_err(|_| {
            format!(
                "panic on premise {:?} question {:?}",
                p.premises[0], p.question
            )
        })?;
        check_run_shape(&run)?;
        if run.stage == Stage::Done {
            done += 1;
        }
    }
    Ok(done)
}
