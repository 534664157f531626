//! Kleene realizability.
//!
//! [`r_translate`] turns `x r φ` into an ordinary formula in which `j1`,
//! `j2`, `T` and `U` are signature symbols. [`bounded_check_realizes`]
//! evaluates that formula over the standard model with bounded universal
//! search and fuel-bounded machine runs.

use std::collections::BTreeSet;

use crate::syntax::{fresh_name, Formula, Term, KLEENE_T, PAIR_FST, PAIR_SND, RESULT};

mod check;

pub use check::{bounded_check_realizes, Checker, Failure, Refutation, Truth, Verdict};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("realizer variable `{0}` occurs free in the formula")]
    RealizerFree(String),
}

/// `x r φ`.
pub fn r_translate(x: &str, phi: &Formula) -> Result<Formula, RealizeError> {
    if phi.has_free(x) {
        return Err(RealizeError::RealizerFree(x.to_string()));
    }
    Ok(realizes(&Term::var(x), phi))
}

fn fst(t: &Term) -> Term {
    Term::app(PAIR_FST, vec![t.clone()])
}

fn snd(t: &Term) -> Term {
    Term::app(PAIR_SND, vec![t.clone()])
}

/// `t r φ` for a realizer term `t`.
pub fn realizes(t: &Term, phi: &Formula) -> Formula {
    match phi {
        Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => phi.clone(),
        Formula::And(a, b) => Formula::and(realizes(&fst(t), a), realizes(&snd(t), b)),
        Formula::Or(a, b) => {
            let left = Formula::eq(fst(t), Term::zero());
            Formula::or(
                Formula::and(left.clone(), realizes(&snd(t), a)),
                Formula::and(Formula::not(left), realizes(&snd(t), b)),
            )
        }
        Formula::Implies(a, b) => implication(t, a, b),
        // ¬ψ is realized as ψ → ⊥
        Formula::Not(a) => implication(t, a, &Formula::Bottom),
        Formula::Exists(y, body) => realizes(&snd(t), &body.substitute(y, &fst(t))),
        Formula::Forall(y, body) => {
            let mut avoid = phi.all_vars();
            avoid.extend(t.free_vars());
            let (y, body) = if t.contains_var(y) {
                let fresh = fresh_name(y, &avoid);
                let body = body.substitute(y, &Term::var(&fresh));
                (fresh, body)
            } else {
                (y.clone(), (**body).clone())
            };
            avoid.insert(y.clone());
            let u = fresh_name("u", &avoid);
            Formula::forall(&y, run_then(t, &Term::var(&y), &u, &body))
        }
    }
}

/// `∀y(y r ψ → ∃u(T(t, y, u) ∧ U(u) r η))`.
fn implication(t: &Term, a: &Formula, b: &Formula) -> Formula {
    let mut avoid: BTreeSet<String> = a.all_vars();
    avoid.extend(b.all_vars());
    avoid.extend(t.free_vars());
    let y = fresh_name("y", &avoid);
    avoid.insert(y.clone());
    let u = fresh_name("u", &avoid);
    let yv = Term::var(&y);
    Formula::forall(
        &y,
        Formula::implies(realizes(&yv, a), run_then(t, &yv, &u, b)),
    )
}

/// `∃u(T(t, y, u) ∧ U(u) r η)`.
fn run_then(t: &Term, y: &Term, u: &str, eta: &Formula) -> Formula {
    let uv = Term::var(u);
    Formula::exists(
        u,
        Formula::and(
            Formula::pred(KLEENE_T, vec![t.clone(), y.clone(), uv.clone()]),
            realizes(&Term::app(RESULT, vec![uv]), eta),
        ),
    )
}
