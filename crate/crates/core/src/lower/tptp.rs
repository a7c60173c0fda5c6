//! TPTP first-order form export.

use super::fol::{Fol, FolTerm};

fn plain_lower_word(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(f) if f.is_ascii_lowercase())
        && c.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\\', "\\\\").replace('\'', "\\'"))
}

fn predicate_symbol(p: &str) -> String {
    let lower = p.to_lowercase();
    if plain_lower_word(&lower) {
        lower
    } else {
        quote(&lower)
    }
}

fn constant_symbol(c: &str) -> String {
    let s = format!("c_{}", c.to_lowercase());
    if plain_lower_word(&s) {
        s
    } else {
        quote(&s)
    }
}

fn variable_symbol(v: &str) -> String {
    let clean: String = v
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("V{clean}")
}

fn mangle_term(t: &FolTerm) -> FolTerm {
    match t {
        FolTerm::Var(v) => FolTerm::Var(variable_symbol(v)),
        FolTerm::Const(c) => FolTerm::Const(constant_symbol(c)),
    }
}

/// The formula with every symbol renamed the way [`to_tptp`] writes it.
pub fn mangle(f: &Fol) -> Fol {
    match f {
        Fol::Atom(p, args) => {
            Fol::Atom(predicate_symbol(p), args.iter().map(mangle_term).collect())
        }
        Fol::Eq(a, b) => Fol::Eq(mangle_term(a), mangle_term(b)),
        Fol::And(a, b) => Fol::and(mangle(a), mangle(b)),
        Fol::Or(a, b) => Fol::or(mangle(a), mangle(b)),
        Fol::Imp(a, b) => Fol::imp(mangle(a), mangle(b)),
        Fol::Not(a) => Fol::not(mangle(a)),
        Fol::Top => Fol::Top,
        Fol::Bottom => Fol::Bottom,
        Fol::Exists(v, b) => Fol::exists(&variable_symbol(v), mangle(b)),
        Fol::Forall(v, b) => Fol::forall(&variable_symbol(v), mangle(b)),
    }
}

fn write(f: &Fol, out: &mut String) {
    match f {
        Fol::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                let a: Vec<&str> = args.iter().map(FolTerm::name).collect();
                out.push('(');
                out.push_str(&a.join(","));
                out.push(')');
            }
        }
        Fol::Eq(a, b) => {
            out.push_str(&format!("{} = {}", a.name(), b.name()));
        }
        Fol::And(a, b) | Fol::Or(a, b) | Fol::Imp(a, b) => {
            let op = match f {
                Fol::And(..) => " & ",
                Fol::Or(..) => " | ",
                _ => " => ",
            };
            out.push('(');
            write(a, out);
            out.push_str(op);
            write(b, out);
            out.push(')');
        }
        Fol::Not(a) => {
            out.push_str("~ (");
            write(a, out);
            out.push(')');
        }
        Fol::Top => out.push_str("$true"),
        Fol::Bottom => out.push_str("$false"),
        Fol::Exists(v, b) | Fol::Forall(v, b) => {
            out.push_str(if matches!(f, Fol::Exists(..)) {
                "? ["
            } else {
                "! ["
            });
            out.push_str(v);
            out.push_str("] : (");
            write(b, out);
            out.push(')');
        }
    }
}

/// A formula in TPTP syntax; symbols are mangled first.
pub fn tptp_formula(f: &Fol) -> String {
    let mut s = String::new();
    write(&mangle(f), &mut s);
    s
}

/// A FOF problem: one axiom per premise and one conjecture.
pub fn to_tptp(premises: &[Fol], goal: &Fol) -> String {
    let mut out = String::new();
    for (i, p) in premises.iter().enumerate() {
        out.push_str(&format!(
            "fof(premise_{}, axiom, {}).\n",
            i + 1,
            tptp_formula(p)
        ));
    }
    out.push_str(&format!("fof(goal, conjecture, {}).\n", tptp_formula(goal)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lower::parse_fol;

    #[test]
    fn axiom_equals_conjecture() {
        let f = parse_fol("exists e. Smoke(e)").unwrap();
        assert_eq!(
            to_tptp(&[f.clone()], &f),
            "fof(premise_1, axiom, ? [Ve] : (smoke(Ve))).\nfof(goal, conjecture, ? [Ve] : (smoke(Ve))).\n"
        );
    }

    #[test]
    fn symbols_are_mangled() {
        let f = parse_fol("exists x. (1693(x) & Like(x, smith) & ~(x = smith))").unwrap();
        assert_eq!(
            tptp_formula(&f),
            "? [Vx] : (('1693'(Vx) & (like(Vx,c_smith) & ~ (Vx = c_smith))))"
        );
    }
}
