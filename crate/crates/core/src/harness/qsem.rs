//! The line-oriented QSEM problem format.
//!
//! Records are separated by blank lines. Each holds `id:`, one or more
//! `P:` premises, optional `AUX:` first-order premises, `Q:`, `type:` and
//! `label:` (`yes`, `no`, `unknown`, or `-` when unlabeled). Lines starting
//! with `#` are comments.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::lower::parse_fol;
use crate::prove::Answer;

pub const BUNDLED_QSEM: &str = include_str!("../../data/qsem.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QType {
    Polar,
    Who,
    What,
    Which,
    When,
    Where,
}

impl QType {
    pub const ALL: [QType; 6] = [
        QType::Polar,
        QType::Who,
        QType::What,
        QType::Which,
        QType::When,
        QType::Where,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QType::Polar => "polar",
            QType::Who => "who",
            QType::What => "what",
            QType::Which => "which",
            QType::When => "when",
            QType::Where => "where",
        }
    }

    pub fn from_name(s: &str) -> Option<QType> {
        QType::ALL
            .into_iter()
            .find(|q| q.name() == s.trim().to_lowercase())
    }

    /// The type signalled by the question's first word.
    pub fn of_question(question: &str) -> QType {
        let first: String = question
            .split_whitespace()
            .next()
            .unwrap_or("")
            .chars()
            .filter(|c| c.is_alphanumeric())
            .collect::<String>()
            .to_lowercase();
        match first.as_str() {
            "who" | "whom" => QType::Who,
            "what" => QType::What,
            "which" => QType::Which,
            "when" => QType::When,
            "where" => QType::Where,
            _ => QType::Polar,
        }
    }
}

impl fmt::Display for QType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QsemProblem {
    pub id: String,
    pub premises: Vec<String>,
    pub aux_premises: Vec<String>,
    pub question: String,
    pub qtype: QType,
    /// `None` for problems bundled without a gold label.
    pub gold: Option<Answer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {message}", id.as_ref().map(|i| format!(" (problem {i})")).unwrap_or_default())]
pub struct QsemDiagnostic {
    pub line: usize,
    pub id: Option<String>,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum QsemError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{} invalid record(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<QsemDiagnostic>),
}

#[derive(Default)]
struct Draft {
    start: usize,
    id: Option<String>,
    premises: Vec<String>,
    aux: Vec<String>,
    question: Option<String>,
    qtype: Option<String>,
    label: Option<String>,
    errors: Vec<(usize, String)>,
}

impl Draft {
    fn is_empty(&self) -> bool {
        self.id.is_none()
            && self.premises.is_empty()
            && self.aux.is_empty()
            && self.question.is_none()
            && self.qtype.is_none()
            && self.label.is_none()
            && self.errors.is_empty()
    }

    fn finish(self, out: &mut Vec<QsemProblem>, diags: &mut Vec<QsemDiagnostic>) {
        let id = self.id.clone();
        let mut errs = self.errors;
        let need = |name: &str, v: &Option<String>, errs: &mut Vec<(usize, String)>| {
            if v.is_none() {
                errs.push((self.start, format!("missing {name}")));
            }
        };
        need("id", &self.id, &mut errs);
        need("Q", &self.question, &mut errs);
        need("type", &self.qtype, &mut errs);
        need("label", &self.label, &mut errs);
        if self.premises.is_empty() {
            errs.push((self.start, "no premises".into()));
        }
        let qtype = self.qtype.as_deref().and_then(|t| {
            let q = QType::from_name(t);
            if q.is_none() {
                errs.push((self.start, format!("unknown question type {t}")));
            }
            q
        });
        if let (Some(q), Some(text)) = (qtype, &self.question) {
            if QType::of_question(text) != q {
                errs.push((
                    self.start,
                    format!("type {q} does not match the question's first word"),
                ));
            }
        }
        let gold = match self.label.as_deref() {
            Some("-") | None => None,
            Some(l) => {
                let a = Answer::from_label(l);
                if a.is_none() {
                    errs.push((self.start, format!("unknown label {l}")));
                }
                a
            }
        };
        for a in &self.aux {
            match parse_fol(a) {
                Ok(f) if f.is_closed() => {}
                Ok(_) => errs.push((self.start, format!("AUX premise is not closed: {a}"))),
                Err(e) => errs.push((self.start, format!("AUX premise: {e}"))),
            }
        }
        if !errs.is_empty() {
            diags.extend(errs.into_iter().map(|(line, message)| QsemDiagnostic {
                line,
                id: id.clone(),
                message,
            }));
            return;
        }
        out.push(QsemProblem {
            id: self.id.expect("checked"),
            premises: self.premises,
            aux_premises: self.aux,
            question: self.question.expect("checked"),
            qtype: qtype.expect("checked"),
            gold,
        });
    }
}

pub fn parse_qsem(text: &str) -> Result<Vec<QsemProblem>, QsemError> {
    let mut out = Vec::new();
    let mut diags = Vec::new();
    let mut draft = Draft::default();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !draft.is_empty() {
                std::mem::take(&mut draft).finish(&mut out, &mut diags);
            }
            continue;
        }
        if draft.is_empty() {
            draft.start = n;
        }
        let Some((key, value)) = line.split_once(':') else {
            draft
                .errors
                .push((n, format!("expected `key: value`, found {line:?}")));
            continue;
        };
        let value = value.trim().to_string();
        let dup = |slot: &Option<String>| slot.is_some();
        match key.trim() {
            "id" if dup(&draft.id) => draft.errors.push((n, "second id in one record".into())),
            "id" => draft.id = Some(value),
            "P" => draft.premises.push(value),
            "AUX" => draft.aux.push(value),
            "Q" if dup(&draft.question) => draft
                .errors
                .push((n, "second question in one record".into())),
            "Q" => draft.question = Some(value),
            "type" => draft.qtype = Some(value),
            "label" => draft.label = Some(value),
            other => draft.errors.push((n, format!("unknown field {other}"))),
        }
    }
    if !draft.is_empty() {
        draft.finish(&mut out, &mut diags);
    }
    let mut seen = BTreeSet::new();
    for p in &out {
        if !seen.insert(p.id.clone()) {
            diags.push(QsemDiagnostic {
                line: 0,
                id: Some(p.id.clone()),
                message: "duplicate id".into(),
            });
        }
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(QsemError::Invalid(diags))
    }
}

pub fn load_qsem(path: &Path) -> Result<Vec<QsemProblem>, QsemError> {
    let text = std::fs::read_to_string(path).map_err(|e| QsemError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_qsem(&text)
}

pub fn print_qsem(problems: &[QsemProblem]) -> String {
    let mut out = String::new();
    for (i, p) in problems.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("id: {}\n", p.id));
        for s in &p.premises {
            out.push_str(&format!("P: {s}\n"));
        }
        for s in &p.aux_premises {
            out.push_str(&format!("AUX: {s}\n"));
        }
        out.push_str(&format!("Q: {}\n", p.question));
        out.push_str(&format!("type: {}\n", p.qtype));
        out.push_str(&format!(
            "label: {}\n",
            p.gold.map(Answer::label).unwrap_or("-")
        ));
    }
    out
}

pub fn bundled_problems() -> Vec<QsemProblem> {
    parse_qsem(BUNDLED_QSEM).expect("bundled QSEM file is valid")
}
