mod common;

use ccgq::category::{parse_category, print_category, sem_type_of, SemType};
use ccgq::compose::{compose, compose_answer, compose_table, ComposeOptions};
use ccgq::derive::{default_goals, parse, tokenize, validate, BinaryRule, DerivationTree};
use ccgq::harness::{bundled_problems, evaluate, lower_problem_quiet, BUNDLED_QSEM};
use ccgq::hol::{alpha_eq, beta_normalize, type_check, Term};
use ccgq::lexicon::{assign_semtag, Lexicon, BUNDLED_LEXICON};
use ccgq::lower::{expand_operators, sort_erasure_violations};
use ccgq::prove::{decide, refute, Answer, ProofBudget};
use common::*;
use sha2::{Digest, Sha256};

fn all_trees() -> Vec<(String, DerivationTree)> {
    let lex = Lexicon::bundled();
    let mut out = Vec::new();
    for s in bundled_sentences() {
        if let Ok(trees) = parse(&tokenize(&s), &lex, &default_goals()) {
            out.extend(trees.into_iter().map(|t| (s.clone(), t)));
        }
    }
    out
}

#[test]
fn lexicon_categories_print_and_parse_back() {
    for line in BUNDLED_LEXICON
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
    {
        let text = line.split('\t').nth(1).unwrap().trim();
        let c = parse_category(text).unwrap();
        assert_eq!(print_category(&c), text);
        assert_eq!(parse_category(&print_category(&c)).unwrap(), c);
    }
}

#[test]
fn functor_sorts_are_built_from_their_parts() {
    let mut r = rng(5);
    for _ in 0..500 {
        let c = random_category(&mut r, 4);
        if let ccgq::category::Category::Functor { result, arg, .. } = &c {
            assert_eq!(
                sem_type_of(&c),
                SemType::arrow(sem_type_of(arg), sem_type_of(result))
            );
        }
    }
}

#[test]
fn templates_have_the_sort_of_their_category() {
    for e in Lexicon::bundled().entries() {
        assert_eq!(
            type_check(&e.template).unwrap(),
            sem_type_of(&e.category),
            "{} {}",
            e.form,
            e.category
        );
    }
}

#[test]
fn lookup_is_stable() {
    let lex = Lexicon::bundled();
    for e in lex.entries() {
        assert_eq!(lex.lookup(&e.form), lex.lookup(&e.form));
    }
}

#[test]
fn overrides_take_precedence() {
    let lex = Lexicon::bundled();
    for ((lemma, hint), tag) in &lex.overrides {
        for cat in ["PP/NP", "((S\\NP)\\(S\\NP))/NP", "N", "NP/N"] {
            let c = parse_category(cat).unwrap();
            for pos in ["IN", "NN", "VB"] {
                assert_eq!(
                    assign_semtag(&c, pos, lemma, Some(hint), &lex.overrides).ok(),
                    Some(*tag)
                );
            }
        }
    }
}

#[test]
fn parsed_trees_revalidate() {
    for (s, t) in all_trees() {
        validate(&t).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

fn check_coherence(t: &DerivationTree) {
    if let DerivationTree::Binary {
        rule, left, right, ..
    } = t
    {
        let (l, r) = (compose(left).unwrap(), compose(right).unwrap());
        let arg_ty = |c: &ccgq::category::Category| match c {
            ccgq::category::Category::Functor { arg, .. } => sem_type_of(arg),
            _ => unreachable!(),
        };
        let comp = |f: &Term, g: &Term, ty: SemType| {
            Term::lam(
                "zz",
                ty.clone(),
                Term::app(f.clone(), Term::app(g.clone(), Term::var("zz", ty))),
            )
        };
        let want = match rule {
            BinaryRule::FA => Term::app(l, r),
            BinaryRule::BA => Term::app(r, l),
            BinaryRule::FC => comp(&l, &r, arg_ty(right.category())),
            BinaryRule::BC => comp(&r, &l, arg_ty(left.category())),
        };
        assert!(alpha_eq(&compose(t).unwrap(), &beta_normalize(&want)));
        check_coherence(left);
        check_coherence(right);
    }
    if let DerivationTree::Unary { child, .. } = t {
        check_coherence(child);
    }
}

#[test]
fn node_semantics_follow_the_rules() {
    for (_, t) in all_trees() {
        check_coherence(&t);
    }
}

#[test]
fn every_node_has_its_category_sort() {
    for (s, t) in all_trees() {
        let rows = compose_table(&t, ComposeOptions::default()).unwrap();
        assert_eq!(rows.len(), t.size());
        for row in rows {
            assert_eq!(
                type_check(&row.term).unwrap(),
                sem_type_of(&row.category),
                "{s} at {}",
                row.path
            );
        }
        assert_eq!(compose(&t), compose(&t));
    }
}

#[test]
fn expansion_keeps_propositions_propositional() {
    for (_, t) in all_trees() {
        let term = compose(&t).unwrap();
        if type_check(&term).unwrap() == SemType::PROP {
            assert_eq!(type_check(&expand_operators(&term)).unwrap(), SemType::PROP);
        }
    }
    let mut g = TermGen::new(9);
    for _ in 0..200 {
        let p = g.term(&SemType::PROP, &mut Vec::new(), 3);
        assert_eq!(
            type_check(&expand_operators(&Term::question(p.clone()))).unwrap(),
            SemType::PROP
        );
        let f = Term::lam("w", SemType::ENT, p);
        assert_eq!(
            type_check(&expand_operators(&Term::wh(f))).unwrap(),
            SemType::PROP
        );
    }
}

#[test]
fn bundled_terms_erase_sorts_safely() {
    let lex = Lexicon::bundled();
    for p in bundled_problems() {
        for s in p.premises.iter() {
            if let Ok(trees) = parse(
                &tokenize(s),
                &lex,
                &[ccgq::category::Category::s_bar(
                    ccgq::category::Feature::Dcl,
                )],
            ) {
                let t = compose_answer(&trees[0]).unwrap();
                assert!(sort_erasure_violations(&t).is_empty(), "{s}");
            }
        }
    }
}

#[test]
fn yes_verdicts_make_the_negated_body_inconsistent() {
    let lex = Lexicon::bundled();
    let b = ProofBudget::default();
    let mut seen = 0;
    for p in bundled_problems() {
        let Ok(l) = lower_problem_quiet(&p, &lex) else {
            continue;
        };
        let v = decide(&l.premises, &l.body, &b);
        let extra = match v.answer {
            Answer::Yes => ccgq::lower::Fol::not(l.body.body.clone()),
            Answer::No => l.body.body.clone(),
            Answer::Unknown => continue,
        };
        let mut fs = l.premises.clone();
        fs.push(extra);
        assert!(refute(&fs, &b).proved(), "problem {}", p.id);
        seen += 1;
    }
    assert!(seen >= 6);
}

#[test]
fn evaluation_is_deterministic() {
    let lex = Lexicon::bundled();
    let b = ProofBudget::default();
    let (a, _) = evaluate(&bundled_problems(), &lex, &b, None);
    let (c, _) = evaluate(&bundled_problems(), &lex, &b, None);
    assert_eq!(a.render_text(), c.render_text());
    assert_eq!(a.render_json(), c.render_json());
}

#[test]
fn bundled_suite_is_untouched() {
    let digest = Sha256::digest(BUNDLED_QSEM.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(
        hex,
        "081f1da00d9a8f667e4ce286642c969eef932dc28525769847daabea0e24228a"
    );
    let labels: Vec<(String, Option<Answer>)> = bundled_problems()
        .into_iter()
        .map(|p| (p.id, p.gold))
        .collect();
    let want = [
        ("6", Some(Answer::Yes)),
        ("35", Some(Answer::No)),
        ("40", Some(Answer::Yes)),
        ("41", Some(Answer::Yes)),
        ("44", Some(Answer::No)),
        ("48", Some(Answer::Yes)),
        ("49", Some(Answer::Yes)),
        ("72", Some(Answer::Unknown)),
        ("115", Some(Answer::Yes)),
        ("129", None),
    ];
    assert_eq!(labels, want.map(|(i, a)| (i.to_string(), a)).to_vec());
}

#[test]
fn symphony_hall_trace() {
    let lex = Lexicon::bundled();
    let p = bundled_problems()
        .into_iter()
        .find(|p| p.id == "129")
        .unwrap();
    let run = ccgq::harness::run_problem(&p, &lex, &ProofBudget::default());
    let stages: Vec<(String, String, bool)> = run
        .trace
        .iter()
        .map(|e| (e.stage.name().to_string(), e.item.clone(), e.ok))
        .collect();
    let want = [
        ("parse", "P1", true),
        ("compose", "P1", true),
        ("lower", "P1", true),
        ("parse", "Q", true),
        ("compose", "Q", true),
        ("lower", "Q", true),
    ];
    for w in want {
        assert!(
            stages.contains(&(w.0.to_string(), w.1.to_string(), w.2)),
            "missing {w:?} in {stages:?}"
        );
    }
    assert_eq!(run.stage, ccgq::harness::Stage::Done);
    let fol = run.lowered.unwrap().body.body;
    assert!(fol.predicates().contains_key("LocOf"));
}
