//! Import of FraCaS-style XML problem files.

use std::path::Path;

use thiserror::Error;

use super::qsem::{QType, QsemProblem};
use crate::prove::Answer;

#[derive(Debug, Error)]
pub enum FracasError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed XML: {0}")]
    Xml(#[from] roxmltree::Error),
    #[error("problem {id}: {message}")]
    Problem { id: String, message: String },
}

fn text_of(node: roxmltree::Node) -> String {
    node.descendants()
        .filter(|n| n.is_text())
        .filter_map(|n| n.text())
        .collect::<String>()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reads `<problem id=… fracas_answer=…>` elements with `<p>` premises and
/// a `<q>` question. Answers other than yes/no/unknown import unlabeled.
pub fn parse_fracas_xml(xml: &str) -> Result<Vec<QsemProblem>, FracasError> {
    let doc = roxmltree::Document::parse(xml)?;
    let mut out = Vec::new();
    for prob in doc.descendants().filter(|n| n.has_tag_name("problem")) {
        let id = prob.attribute("id").unwrap_or_default().trim().to_string();
        let fail = |message: &str| FracasError::Problem {
            id: id.clone(),
            message: message.to_string(),
        };
        if id.is_empty() {
            return Err(fail("missing id attribute"));
        }
        let premises: Vec<String> = prob
            .children()
            .filter(|n| n.has_tag_name("p"))
            .map(text_of)
            .collect();
        if premises.is_empty() {
            return Err(fail("no premises"));
        }
        let question = prob
            .children()
            .find(|n| n.has_tag_name("q"))
            .map(text_of)
            .ok_or_else(|| fail("no question"))?;
        let gold = prob
            .attribute("fracas_answer")
            .or_else(|| prob.attribute("answer"))
            .and_then(Answer::from_label);
        out.push(QsemProblem {
            id,
            premises,
            aux_premises: Vec::new(),
            qtype: QType::of_question(&question),
            question,
            gold,
        });
    }
    Ok(out)
}

pub fn load_fracas_xml(path: &Path) -> Result<Vec<QsemProblem>, FracasError> {
    let text = std::fs::read_to_string(path).map_err(|e| FracasError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_fracas_xml(&text)
}
