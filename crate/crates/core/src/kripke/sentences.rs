//! Exhaustive enumeration of small sentences, the corpus for the property
//! suites.
//!
//! Size is the number of connectives, quantifiers included. Terms are the
//! constants of the language, the given element constants and the bound
//! variables `x0`, `x1`, ... in scope; function symbols of positive arity
//! are not applied.

use std::collections::HashMap;

use super::structure::{elem_name, Elem, Language};
use crate::syntax::{Formula, Term};

/// `⊥`, every predicate atom over `terms` and `s = t` for each pair of
/// distinct terms, listed once.
pub fn atoms(lang: &Language, terms: &[Term]) -> Vec<Formula> {
    let mut out = vec![Formula::Bottom];
    for (p, arity) in lang.predicates() {
        let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
        for _ in 0..*arity {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    terms.iter().map(move |x| {
                        let mut t = t.clone();
                        t.push(x.clone());
                        t
                    })
                })
                .collect();
        }
        out.extend(
            tuples
                .into_iter()
                .map(|args| Formula::pred(p.clone(), args)),
        );
    }
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            out.push(Formula::eq(a.clone(), b.clone()));
        }
    }
    out
}

/// Every sentence with at most `max` connectives.
pub fn sentences(lang: &Language, max: usize) -> Vec<Formula> {
    sentences_with_params(lang, max, &[])
}

/// As [`sentences`], with the given elements available as constants.
pub fn sentences_with_params(lang: &Language, max: usize, params: &[Elem]) -> Vec<Formula> {
    let mut base: Vec<Term> = lang
        .functions()
        .iter()
        .filter(|(_, a)| *a == 0)
        .map(|(c, _)| Term::constant(c.clone()))
        .collect();
    base.extend(params.iter().map(|&e| Term::constant(elem_name(e))));
    let mut g = Generator {
        lang,
        base,
        memo: HashMap::new(),
    };
    (0..=max).flat_map(|n| g.exact(n, 0)).collect()
}

struct Generator<'a> {
    lang: &'a Language,
    base: Vec<Term>,
    memo: HashMap<(usize, usize), Vec<Formula>>,
}

fn var(i: usize) -> String {
    format!("x{i}")
}

impl Generator<'_> {
    /// Formulas with exactly `n` connectives whose free variables are among
    /// the first `scope` bound variables.
    fn exact(&mut self, n: usize, scope: usize) -> Vec<Formula> {
        if let Some(v) = self.memo.get(&(n, scope)) {
            return v.clone();
        }
        let out = if n == 0 {
            let mut terms = self.base.clone();
            terms.extend((0..scope).map(|i| Term::var(var(i))));
            atoms(self.lang, &terms)
        } else {
            let mut out: Vec<Formula> = self
                .exact(n - 1, scope)
                .into_iter()
                .map(Formula::not)
                .collect();
            for i in 0..n {
                let left = self.exact(i, scope);
                let right = self.exact(n - 1 - i, scope);
                for a in &left {
                    for b in &right {
                        out.push(Formula::and(a.clone(), b.clone()));
                        out.push(Formula::or(a.clone(), b.clone()));
                        out.push(Formula::implies(a.clone(), b.clone()));
                    }
                }
            }
            for body in self.exact(n - 1, scope + 1) {
                out.push(Formula::forall(var(scope), body.clone()));
                out.push(Formula::exists(var(scope), body));
            }
            out
        };
        self.memo.insert((n, scope), out.clone());
        out
    }
}
