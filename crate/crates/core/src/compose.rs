//! Semantic composition over derivation trees.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::category::{sem_type_of, Category, Feature, SemType, Sort};
use crate::derive::{BinaryRule, DerivationTree, UnaryRule};
use crate::hol::{beta_normalize, fresh_name, parse_hol, print_hol, type_check, SemTag, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("sort error at {path}: {message}")]
    TypeMismatch { path: String, message: String },
    #[error("root category {0} is not a declarative sentence")]
    NotDeclarative(String),
}

/// How proper-name leaves are lifted by TR.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NameMode {
    /// `λF1 F2.∃x.(John(x) ∧ F1(x) ∧ F2(x))`
    #[default]
    Predicate,
    /// `λF1 F2.(F1(john) ∧ F2(john))`
    Constant,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComposeOptions {
    pub names: NameMode,
}

/// One row of the per-node composition table.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeRow {
    pub path: String,
    pub span: (usize, usize),
    pub category: Category,
    pub rule: String,
    pub term: Term,
}

pub fn compose(tree: &DerivationTree) -> Result<Term, ComposeError> {
    compose_with(tree, ComposeOptions::default())
}

pub fn compose_with(tree: &DerivationTree, opts: ComposeOptions) -> Result<Term, ComposeError> {
    Ok(compose_node(tree, opts, "root", 0, &mut None)?.0)
}

/// Composition of a premise or answer: the root must be `S̄_dcl`.
pub fn compose_answer(tree: &DerivationTree) -> Result<Term, ComposeError> {
    compose_answer_with(tree, ComposeOptions::default())
}

pub fn compose_answer_with(
    tree: &DerivationTree,
    opts: ComposeOptions,
) -> Result<Term, ComposeError> {
    if *tree.category() != Category::s_bar(Feature::Dcl) {
        return Err(ComposeError::NotDeclarative(tree.category().to_string()));
    }
    compose_with(tree, opts)
}

/// Every node's normalized term, in preorder.
pub fn compose_table(
    tree: &DerivationTree,
    opts: ComposeOptions,
) -> Result<Vec<NodeRow>, ComposeError> {
    let mut rows = Some(Vec::new());
    compose_node(tree, opts, "root", 0, &mut rows)?;
    let mut rows = rows.unwrap_or_default();
    rows.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(rows)
}

pub fn render_table(rows: &[NodeRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let depth = r.path.matches('/').count();
        out.push_str(&format!(
            "{}{:<4} {:>2}-{:<2} {:<24} {}\n",
            "  ".repeat(depth),
            r.rule,
            r.span.0,
            r.span.1,
            r.category.to_string(),
            print_hol(&r.term)
        ));
    }
    out
}

fn predicate_lift() -> Term {
    parse_hol("λN:(Ent->Prop) F1:(Ent->Prop) F2:(Ent->Prop).∃x:Ent.(N(x) ∧ F1(x) ∧ F2(x))")
        .expect("lift template")
}

fn constant_lift(name: &str) -> Term {
    let text = format!("λF1:(Ent->Prop) F2:(Ent->Prop).(F1({name}) ∧ F2({name}))");
    parse_hol(&text).expect("constant lift")
}

/// Lowercase individual constant standing for a proper name.
pub fn name_constant(lemma: &str) -> String {
    let c: String = lemma.chars().filter(|c| c.is_alphanumeric()).collect();
    c.to_lowercase()
}

fn closing_continuation() -> Term {
    Term::lam("v", SemType::EV, Term::Top)
}

fn compose_node(
    tree: &DerivationTree,
    opts: ComposeOptions,
    path: &str,
    start: usize,
    rows: &mut Option<Vec<NodeRow>>,
) -> Result<(Term, usize), ComposeError> {
    let (raw, end, rule) = match tree {
        DerivationTree::Leaf { entry, .. } => {
            (entry.template.clone(), start + 1, "lex".to_string())
        }
        DerivationTree::Unary { rule, child, .. } => {
            let (c, end) = compose_node(child, opts, &format!("{path}/0"), start, rows)?;
            let t = match rule {
                UnaryRule::TR => match (&**child, opts.names) {
                    (DerivationTree::Leaf { entry, .. }, NameMode::Constant)
                        if entry.semtag == SemTag::PN =>
                    {
                        constant_lift(&name_constant(&entry.lemma))
                    }
                    _ => Term::app(predicate_lift(), c),
                },
                UnaryRule::QC => Term::app(c, closing_continuation()),
                UnaryRule::QI => Term::question(c),
            };
            (t, end, rule.symbol().to_string())
        }
        DerivationTree::Binary {
            rule, left, right, ..
        } => {
            let (l, mid) = compose_node(left, opts, &format!("{path}/0"), start, rows)?;
            let (r, end) = compose_node(right, opts, &format!("{path}/1"), mid, rows)?;
            let t = match rule {
                BinaryRule::FA => Term::app(l, r),
                BinaryRule::BA => Term::app(r, l),
                BinaryRule::FC => compose_functions(&l, &r, right.category()),
                BinaryRule::BC => compose_functions(&r, &l, left.category()),
            };
            (t, end, rule.symbol().to_string())
        }
    };
    let term = beta_normalize(&raw);
    let expected = sem_type_of(tree.category());
    match type_check(&term) {
        Ok(ty) if ty == expected => {}
        Ok(ty) => {
            return Err(ComposeError::TypeMismatch {
                path: path.to_string(),
                message: format!("{} has sort {ty}, expected {expected}", tree.category()),
            })
        }
        Err(e) => {
            return Err(ComposeError::TypeMismatch {
                path: path.to_string(),
                message: e.to_string(),
            })
        }
    }
    if let Some(rows) = rows {
        rows.push(NodeRow {
            path: path.to_string(),
            span: (start, end),
            category: tree.category().clone(),
            rule,
            term: term.clone(),
        });
    }
    Ok((term, end))
}

/// `λz.f(g(z))`, with `z` sorted by the argument of `g`'s category.
fn compose_functions(f: &Term, g: &Term, g_cat: &Category) -> Term {
    let z_ty = match g_cat {
        Category::Functor { arg, .. } => sem_type_of(arg),
        _ => SemType::Base(Sort::Ent),
    };
    let mut avoid: BTreeSet<String> = f.all_names();
    avoid.extend(g.all_names());
    let z = fresh_name("z", &avoid);
    let zv = Term::var(&z, z_ty.clone());
    Term::lam(&z, z_ty, Term::app(f.clone(), Term::app(g.clone(), zv)))
}

/// Pre-normalization display string: leaves as `lemma_TAG`, binary nodes as
/// `(left right)` in surface order; unary nodes are transparent.
pub fn display_string(tree: &DerivationTree) -> String {
    match tree {
        DerivationTree::Leaf { entry, .. } => {
            let lemma: String = entry
                .lemma
                .chars()
                .filter(|c| c.is_alphanumeric() || *c == '_')
                .collect();
            format!("{}_{}", lemma, entry.semtag.display_class())
        }
        DerivationTree::Unary { child, .. } => display_string(child),
        DerivationTree::Binary { left, right, .. } => {
            format!("({} {})", display_string(left), display_string(right))
        }
    }
}

/// The display string read back as a term.
pub fn display_term(tree: &DerivationTree) -> Term {
    parse_hol(&display_string(tree)).expect("display strings are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::{default_goals, parse, tokenize};
    use crate::hol::alpha_eq;
    use crate::lexicon::Lexicon;

    fn first_tree(s: &str) -> DerivationTree {
        parse(&tokenize(s), &Lexicon::bundled(), &default_goals())
            .unwrap()
            .remove(0)
    }

    fn expect(text: &str) -> Term {
        parse_hol(text).unwrap()
    }

    #[test]
    fn who_smokes() {
        let t = compose(&first_tree("Who smokes?")).unwrap();
        assert!(
            alpha_eq(&t, &expect("Q(λx:Ent.∃e:Ev.(Smoke(e) ∧ Subj(e, x)))")),
            "{t}"
        );
    }

    #[test]
    fn polar_constant_mode() {
        let tree = first_tree("Does John like Smith?");
        let t = compose_with(
            &tree,
            ComposeOptions {
                names: NameMode::Constant,
            },
        )
        .unwrap();
        let want = expect("?(∃e:Ev.(Like(e) ∧ Subj(e, john) ∧ Obj(e, smith)))");
        assert!(alpha_eq(&t, &want), "{t}");
    }

    #[test]
    fn declarative_answers() {
        let t = compose_answer(&first_tree("John smokes.")).unwrap();
        let want = expect("∃x:Ent.∃e:Ev.(John(x) ∧ Smoke(e) ∧ Subj(e, x))");
        assert!(alpha_eq(&t, &want), "{t}");
        let t = compose_answer(&first_tree("John met Mary yesterday.")).unwrap();
        let want = expect(
            "∃x:Ent.∃y:Ent.∃e:Ev.(John(x) ∧ Mary(y) ∧ Meet(e) ∧ Subj(e, x) ∧ Obj(e, y) ∧ TimeOf(e, yesterday:Time))",
        );
        assert!(alpha_eq(&t, &want), "{t}");
        let t = compose_answer(&first_tree("John met Mary.")).unwrap();
        let want =
            expect("∃x:Ent.∃y:Ent.∃e:Ev.(John(x) ∧ Mary(y) ∧ Meet(e) ∧ Subj(e, x) ∧ Obj(e, y))");
        assert!(alpha_eq(&t, &want), "{t}");
    }

    #[test]
    fn answer_requires_declarative() {
        assert!(matches!(
            compose_answer(&first_tree("Who smokes?")),
            Err(ComposeError::NotDeclarative(_))
        ));
    }

    #[test]
    fn which_question_display() {
        let tree = first_tree("Which delegate finished the report?");
        assert_eq!(
            display_string(&tree),
            "((which_WDT delegate_NN) (finish_TV (the_DT report_NN)))"
        );
    }

    #[test]
    fn table_has_a_row_per_node() {
        let tree = first_tree("Who smokes?");
        let rows = compose_table(&tree, ComposeOptions::default()).unwrap();
        assert_eq!(rows.len(), tree.size());
        assert_eq!(rows[0].rule, "QC");
        assert_eq!(rows[0].span, (0, 2));
        assert!(render_table(&rows).contains("λK.Q("));
    }
}
