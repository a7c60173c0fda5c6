//! Bounded proof search and yes/no/unknown verdicts.

mod model;
mod tableau;

use serde::Serialize;

use crate::lower::{Fol, QuestionBody};

pub use model::{model_check, Interpretation, ModelError, Relation, MAX_DOMAIN};
pub use tableau::{
    nnf, prove, prove_traced, refute, GiveUpReason, ProofBudget, ProofOutcome, ProofStatus,
};

use tableau::Attempt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn label(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        }
    }

    pub fn from_label(s: &str) -> Option<Answer> {
        match s.trim().to_lowercase().as_str() {
            "yes" => Some(Answer::Yes),
            "no" => Some(Answer::No),
            "unknown" => Some(Answer::Unknown),
            _ => None,
        }
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which sequent closed, and what the search cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// `premises ⊢ body` or `premises ⊢ ¬body`; absent for unknown.
    pub closed: Option<String>,
    pub yes_attempt: ProofOutcome,
    pub no_attempt: ProofOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub provenance: Provenance,
}

/// Yes when the premises entail the body, no when they entail its
/// negation, unknown otherwise. The two searches split the budget and
/// alternate round by round.
pub fn decide(premises: &[Fol], q: &QuestionBody, budget: &ProofBudget) -> Verdict {
    let share = budget.halved();
    let mut yes_set = premises.to_vec();
    yes_set.push(Fol::not(q.body.clone()));
    let mut no_set = premises.to_vec();
    no_set.push(q.body.clone());
    let mut yes = Attempt::new(yes_set, &share);
    let mut no = Attempt::new(no_set, &share);
    let answer = loop {
        yes.step(None);
        if yes.outcome.proved() {
            break Answer::Yes;
        }
        no.step(None);
        if no.outcome.proved() {
            break Answer::No;
        }
        if yes.finished && no.finished {
            break Answer::Unknown;
        }
    };
    let closed = match answer {
        Answer::Yes => Some("premises ⊢ body".to_string()),
        Answer::No => Some("premises ⊢ ¬body".to_string()),
        Answer::Unknown => None,
    };
    Verdict {
        answer,
        provenance: Provenance {
            closed,
            yes_attempt: yes.outcome,
            no_attempt: no.outcome,
        },
    }
}
