//! Instantiators for the axiom schemata of arithmetic.

use std::collections::BTreeSet;

use super::{classify, fresh_name, Formula, SyntaxError, Term, KLEENE_T, RESULT};

/// Universal closure over the free variables, in name order with the first
/// name outermost.
pub fn forall_closure(f: Formula) -> Formula {
    close_except(f, &BTreeSet::new())
}

fn close_except(f: Formula, keep: &BTreeSet<String>) -> Formula {
    let vars: Vec<String> = f
        .free_vars()
        .into_iter()
        .filter(|v| !keep.contains(v))
        .collect();
    vars.into_iter()
        .rev()
        .fold(f, |acc, v| Formula::forall(v, acc))
}

/// `∀ȳ (φ(0) ∧ ∀x(φ(x) → φ(S x)) → ∀x φ(x))`.
pub fn instantiate_induction(phi: &Formula, x: &str) -> Formula {
    let xv = Term::var(x);
    let base = phi.substitute(x, &Term::zero());
    let step = Formula::forall(
        x,
        Formula::implies(phi.clone(), phi.substitute(x, &Term::succ(xv))),
    );
    let conclusion = Formula::forall(x, phi.clone());
    forall_closure(Formula::implies(Formula::and(base, step), conclusion))
}

/// `∀v̄(∀x(φ → ∃y ψ) → ∃z ∀x(φ → ∃u(T(z, x, u) ∧ ψ[y := U(u)])))`.
///
/// `φ` must be almost negative. The witnesses `z` and `u` are named apart
/// from every variable of `φ` and `ψ`.
pub fn instantiate_ect0(
    phi: &Formula,
    psi: &Formula,
    x: &str,
    y: &str,
) -> Result<Formula, SyntaxError> {
    if !classify(phi).is_almost_negative {
        return Err(SyntaxError::NotAlmostNegative(phi.to_string()));
    }
    let mut avoid = phi.all_vars();
    avoid.extend(psi.all_vars());
    avoid.insert(x.to_string());
    avoid.insert(y.to_string());
    let z = fresh_name("z", &avoid);
    avoid.insert(z.clone());
    let u = fresh_name("u", &avoid);

    let hyp = Formula::forall(
        x,
        Formula::implies(phi.clone(), Formula::exists(y, psi.clone())),
    );
    let run = Formula::pred(KLEENE_T, vec![Term::var(&z), Term::var(x), Term::var(&u)]);
    let output = Term::app(RESULT, vec![Term::var(&u)]);
    let concl = Formula::exists(
        &z,
        Formula::forall(
            x,
            Formula::implies(
                phi.clone(),
                Formula::exists(&u, Formula::and(run, psi.substitute(y, &output))),
            ),
        ),
    );
    Ok(forall_closure(Formula::implies(hyp, concl)))
}

/// Markov's principle `∀ȳ(∀x(φ ∨ ¬φ) ∧ ¬¬∃x φ → ∃x φ)`.
pub fn instantiate_mp(phi: &Formula, x: &str) -> Formula {
    let decidable = Formula::forall(x, Formula::or(phi.clone(), Formula::not(phi.clone())));
    let exists = Formula::exists(x, phi.clone());
    forall_closure(Formula::implies(
        Formula::and(decidable, Formula::not(Formula::not(exists.clone()))),
        exists,
    ))
}

/// `H(x)`: the machine coded by `x` halts on input `x`, as `∃w T(x, x, w)`.
pub fn halts_on_self(x: &str) -> Formula {
    let w = fresh_name("w", &[x.to_string()].into());
    Formula::exists(
        &w,
        Formula::pred(KLEENE_T, vec![Term::var(x), Term::var(x), Term::var(&w)]),
    )
}

/// The instance of extended Church's thesis with `φ := ⊤` and
/// `ψ := (y = 0 ∧ H(x)) ∨ (¬ y = 0 ∧ ¬H(x))`.
pub fn theta_instance() -> Formula {
    let y_zero = Formula::eq(Term::var("y"), Term::zero());
    let psi = Formula::or(
        Formula::and(y_zero.clone(), halts_on_self("x")),
        Formula::and(Formula::not(y_zero), Formula::not(halts_on_self("x"))),
    );
    instantiate_ect0(&Formula::Top, &psi, "x", "y").expect("top is almost negative")
}
