mod common;

use ccgq::lower::{parse_fol, Fol};
use ccgq::prove::model_check;
use common::*;

#[test]
fn sat_search_agrees_with_enumeration() {
    let mut r = rng(7);
    for _ in 0..150 {
        let f = random_fol(&mut r, 3, &mut Vec::new());
        let preds = f.predicates();
        let slots: usize = preds
            .values()
            .map(|a| 2usize.pow(*a.iter().next().unwrap() as u32))
            .sum();
        if slots > 12 {
            continue;
        }
        let fs = vec![f.clone()];
        let sat = find_model(&fs, 2);
        let brute = brute_force_model(&fs, 2);
        assert_eq!(
            sat.is_some(),
            brute.is_some(),
            "{}",
            ccgq::lower::print_fol(&f)
        );
        if let Some(m) = sat {
            assert!(model_check(&f, 2, &m).unwrap());
        }
    }
}

#[test]
fn sat_models_satisfy_their_input() {
    let mut r = rng(11);
    for _ in 0..200 {
        let fs: Vec<Fol> = (0..3)
            .map(|_| random_fol(&mut r, 3, &mut Vec::new()))
            .collect();
        for n in 1..=3 {
            if let Some(m) = find_model(&fs, n) {
                for f in &fs {
                    assert!(model_check(f, n, &m).unwrap());
                }
            }
        }
    }
}

#[test]
fn countermodel_for_invalid_and_none_for_valid() {
    let p = parse_fol("exists x. P(x)").unwrap();
    let g = parse_fol("forall x. P(x)").unwrap();
    let (n, _) = countermodel(std::slice::from_ref(&p), &g, 3).expect("invalid");
    assert_eq!(n, 2);
    assert!(countermodel(std::slice::from_ref(&g), &p, 3).is_none());
}

#[test]
fn tptp_reader_handles_quoting() {
    let text = "fof(premise_1, axiom, ! [VX] : ('John'(VX) => c_john = VX)).\nfof(goal, conjecture, $true).\n";
    let items = read_tptp(text).unwrap();
    assert_eq!(items.len(), 2);
    assert_eq!(items[0].1, "axiom");
    assert_eq!(items[1].2, Fol::Top);
}

#[test]
fn enumerator_finds_who_smokes() {
    let lex = ccgq::lexicon::Lexicon::bundled();
    let goals = ccgq::derive::default_goals();
    let trees = brute_force_derivations("Who smokes?", &lex, &goals);
    assert!(!trees.is_empty());
}
