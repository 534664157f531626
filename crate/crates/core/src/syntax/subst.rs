use std::collections::BTreeSet;

use super::{Formula, Term};

/// First name of the form `base`, `base'`, `base''`, ... not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

pub(crate) fn subst_term(t: &Term, v: &str, by: &Term) -> Term {
    match t {
        Term::Var(w) if w == v => by.clone(),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| subst_term(a, v, by)).collect(),
        ),
    }
}

pub(crate) fn substitute(f: &Formula, v: &str, t: &Term) -> Formula {
    if !f.has_free(v) {
        return f.clone();
    }
    match f {
        Formula::Top | Formula::Bottom => f.clone(),
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, v, t), subst_term(b, v, t)),
        Formula::Pred(p, args) => Formula::Pred(
            p.clone(),
            args.iter().map(|a| subst_term(a, v, t)).collect(),
        ),
        Formula::And(a, b) => Formula::and(substitute(a, v, t), substitute(b, v, t)),
        Formula::Or(a, b) => Formula::or(substitute(a, v, t), substitute(b, v, t)),
        Formula::Implies(a, b) => Formula::implies(substitute(a, v, t), substitute(b, v, t)),
        Formula::Not(a) => Formula::not(substitute(a, v, t)),
        Formula::Forall(w, body) | Formula::Exists(w, body) => {
            let (w, body) = if t.contains_var(w) {
                let mut avoid = t.free_vars();
                avoid.extend(body.all_vars());
                avoid.insert(v.to_string());
                let fresh = fresh_name(w, &avoid);
                let renamed = substitute(body, w, &Term::Var(fresh.clone()));
                (fresh, renamed)
            } else {
                (w.clone(), (**body).clone())
            };
            let body = substitute(&body, v, t);
            match f {
                Formula::Forall(..) => Formula::forall(w, body),
                _ => Formula::exists(w, body),
            }
        }
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha(a, b, &mut Vec::new())
}

fn alpha(a: &Formula, b: &Formula, binders: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Formula::Top, Formula::Top) | (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
            alpha_term(a1, b1, binders) && alpha_term(a2, b2, binders)
        }
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, binders))
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => {
            alpha(a1, b1, binders) && alpha(a2, b2, binders)
        }
        (Formula::Not(x), Formula::Not(y)) => alpha(x, y, binders),
        (Formula::Forall(v, x), Formula::Forall(w, y))
        | (Formula::Exists(v, x), Formula::Exists(w, y)) => {
            binders.push((v.clone(), w.clone()));
            let ok = alpha(x, y, binders);
            binders.pop();
            ok
        }
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, binders: &[(String, String)]) -> bool {
    match (a, b) {
        (Term::Var(v), Term::Var(w)) => {
            let left = binders.iter().rposition(|(x, _)| x == v);
            let right = binders.iter().rposition(|(_, y)| y == w);
            match (left, right) {
                (Some(i), Some(j)) => i == j,
                (None, None) => v == w,
                _ => false,
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, binders))
        }
        _ => false,
    }
}

/// Find a term `t` with `pattern[v := t] == target`.
///
/// Returns `Some(None)` when `v` does not occur free in `pattern` and the two
/// formulas are already identical, `Some(Some(t))` for a unique witness and
/// `None` when no such term exists.
pub(crate) fn match_instance(pattern: &Formula, v: &str, target: &Formula) -> Option<Option<Term>> {
    let mut found: Option<Term> = None;
    if !collect_instance(pattern, v, target, &mut found, &mut Vec::new()) {
        return None;
    }
    match found {
        None => (pattern == target).then_some(None),
        Some(t) => (substitute(pattern, v, &t) == *target).then_some(Some(t)),
    }
}

fn collect_instance(
    p: &Formula,
    v: &str,
    q: &Formula,
    found: &mut Option<Term>,
    shadow: &mut Vec<String>,
) -> bool {
    let shadowed = shadow.iter().any(|s| s == v);
    match (p, q) {
        (Formula::Top, Formula::Top) | (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
            term_instance(a1, v, b1, found, shadowed) && term_instance(a2, v, b2, found, shadowed)
        }
        (Formula::Pred(f, xs), Formula::Pred(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(x, y)| term_instance(x, v, y, found, shadowed))
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => {
            collect_instance(a1, v, b1, found, shadow) && collect_instance(a2, v, b2, found, shadow)
        }
        (Formula::Not(a), Formula::Not(b)) => collect_instance(a, v, b, found, shadow),
        // bound names may differ after capture-avoiding renaming; the final
        // substitute-and-compare in `match_instance` settles those cases
        (Formula::Forall(x, a), Formula::Forall(_, b))
        | (Formula::Exists(x, a), Formula::Exists(_, b)) => {
            shadow.push(x.clone());
            let ok = collect_instance(a, v, b, found, shadow);
            shadow.pop();
            ok
        }
        _ => false,
    }
}

fn term_instance(p: &Term, v: &str, q: &Term, found: &mut Option<Term>, shadowed: bool) -> bool {
    match p {
        Term::Var(w) if w == v && !shadowed => match found {
            Some(t) => t == q,
            None => {
                *found = Some(q.clone());
                true
            }
        },
        Term::Var(_) => true,
        Term::App(f, xs) => match q {
            Term::App(g, ys) if f == g && xs.len() == ys.len() => xs
                .iter()
                .zip(ys)
                .all(|(x, y)| term_instance(x, v, y, found, shadowed)),
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let g = f("exists y. y = x");
        assert_eq!(g.substitute("x", &Term::zero()), f("exists y. y = 0"));
        assert_eq!(g.substitute("x", &Term::var("y")), f("exists y'. y' = y"));
        assert_eq!(
            f("x = x").substitute("x", &Term::numeral(1)),
            f("S(0) = S(0)")
        );
    }

    #[test]
    fn bound_occurrences_untouched() {
        let g = f("forall x. x = y");
        assert_eq!(g.substitute("x", &Term::zero()), g);
    }

    #[test]
    fn alpha_equivalence() {
        assert!(alpha_eq(&f("forall x. x = z"), &f("forall y. y = z")));
        assert!(!alpha_eq(&f("forall x. x = z"), &f("forall z. z = z")));
        assert!(!alpha_eq(&f("forall x. x = y"), &f("forall y. y = x")));
    }

    #[test]
    fn instance_matching() {
        let pat = f("forall y. x + y = y + x");
        let tgt = f("forall y. S(0) + y = y + S(0)");
        assert_eq!(
            match_instance(&pat, "x", &tgt),
            Some(Some(Term::numeral(1)))
        );
        assert_eq!(
            match_instance(&pat, "x", &f("forall y. 0 + y = y + S(0)")),
            None
        );
        let closed = f("0 = 0");
        assert_eq!(match_instance(&closed, "x", &closed), Some(None));
    }

    #[test]
    fn fresh_names_prime() {
        let avoid: BTreeSet<String> = ["y".to_string(), "y'".to_string()].into();
        assert_eq!(fresh_name("y", &avoid), "y''");
        assert_eq!(fresh_name("z", &avoid), "z");
    }
}
