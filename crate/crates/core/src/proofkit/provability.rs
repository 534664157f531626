//! `Pr_T`, `Con(T)` and the existence property as formulas over a proof
//! predicate whose meaning is the proof-code checker.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{check_proof_code, AxiomRecognizer, Theory};
use crate::coding::{godel_decode, Godel};
use crate::syntax::subst::match_instance;
use crate::syntax::{Formula, PredicateOracle, Signature, Term};

/// `ExSent(x)`: `x` codes a sentence `∃v φ`.
pub const EXISTS_SENTENCE: &str = "ExSent";
/// `Sub(x, y, z)`: `x` codes `∃v φ` and `z` codes `φ(ȳ)`.
pub const SUBSTITUTION: &str = "Sub";

/// Numerals up to this value are written in unary.
const UNARY_LIMIT: u64 = 64;

/// A closed term denoting `n`, of size logarithmic in `n` once `n` is past
/// the unary range: `2·⌊n/2⌋` plus the low bit.
pub fn binary_numeral(n: &BigUint) -> Term {
    if let Some(k) = n.to_u64().filter(|&k| k <= UNARY_LIMIT) {
        return Term::numeral(k);
    }
    let half = binary_numeral(&(n >> 1u32));
    let even = Term::mul(Term::numeral(2), half);
    if n.bit(0) {
        Term::succ(even)
    } else {
        even
    }
}

/// Name of the proof predicate of the recognizer's theory.
pub fn proof_predicate(rec: &AxiomRecognizer) -> &'static str {
    match rec.theory() {
        Theory::Q => "Proof_Q",
        Theory::IPra => "Proof_iPRA",
        Theory::Ha => "Proof_HA",
        Theory::HaEct0 => "Proof_HA_ECT0",
        Theory::Custom => "Proof_T",
    }
}

/// The recognizer's signature extended by the proof predicate, `ExSent` and
/// `Sub`.
pub fn provability_signature(rec: &AxiomRecognizer) -> Signature {
    let mut sig = rec.signature().clone();
    for (name, arity) in [
        (proof_predicate(rec), 2),
        (EXISTS_SENTENCE, 1),
        (SUBSTITUTION, 3),
    ] {
        if sig.predicate_arity(name).is_none() {
            sig.add_predicate(name, arity)
                .expect("provability predicates clash with the signature");
        }
    }
    sig
}

fn proof_atom(rec: &AxiomRecognizer, x: Term, y: Term) -> Formula {
    Formula::pred(proof_predicate(rec), vec![x, y])
}

/// `∃x Proof_T(x, ⌜φ⌝)` for the formula with code `code`.
pub fn pr_formula(rec: &AxiomRecognizer, code: &BigUint) -> Formula {
    Formula::exists("x", proof_atom(rec, Term::var("x"), binary_numeral(code)))
}

/// `¬Pr_T(⌜⊥⌝)`.
pub fn con_formula(rec: &AxiomRecognizer) -> Formula {
    Formula::not(pr_formula(rec, &Formula::Bottom.godel_number()))
}

/// The existence property of `T` in prenex form:
/// `∀x ∀w ∃y ∃z ∃v ((ExSent(x) ∧ Proof(w, x)) → (Sub(x, y, z) ∧ Proof(v, z)))`.
pub fn ep_formula(rec: &AxiomRecognizer) -> Formula {
    let v = Term::var;
    let premise = Formula::and(
        Formula::pred(EXISTS_SENTENCE, vec![v("x")]),
        proof_atom(rec, v("w"), v("x")),
    );
    let conclusion = Formula::and(
        Formula::pred(SUBSTITUTION, vec![v("x"), v("y"), v("z")]),
        proof_atom(rec, v("v"), v("z")),
    );
    let mut f = Formula::implies(premise, conclusion);
    for q in ["v", "z", "y"] {
        f = Formula::exists(q, f);
    }
    Formula::forall("x", Formula::forall("w", f))
}

/// Meaning of the predicates added by [`provability_signature`].
pub struct ProvabilityOracle<'a> {
    pub rec: &'a AxiomRecognizer,
}

impl<'a> ProvabilityOracle<'a> {
    pub fn new(rec: &'a AxiomRecognizer) -> Self {
        ProvabilityOracle { rec }
    }
}

fn exists_sentence(x: &BigUint) -> Option<(String, Formula)> {
    match godel_decode(x).ok()? {
        Formula::Exists(v, body) if body.free_vars().iter().all(|u| *u == v) => Some((v, *body)),
        _ => None,
    }
}

fn substitution(x: &BigUint, y: &BigUint, z: &BigUint) -> bool {
    let Some((v, body)) = exists_sentence(x) else {
        return false;
    };
    let Ok(target) = godel_decode(z) else {
        return false;
    };
    match match_instance(&body, &v, &target) {
        Some(Some(t)) => t.as_numeral().is_some_and(|n| BigUint::from(n) == *y),
        // the bound variable is vacuous; any witness will do
        Some(None) => true,
        None => false,
    }
}

impl PredicateOracle for ProvabilityOracle<'_> {
    fn eval_pred(&self, name: &str, args: &[BigUint]) -> Option<bool> {
        match (name, args) {
            (p, [x, y]) if p == proof_predicate(self.rec) => Some(check_proof_code(x, y, self.rec)),
            (EXISTS_SENTENCE, [x]) => Some(exists_sentence(x).is_some()),
            (SUBSTITUTION, [x, y, z]) => Some(substitution(x, y, z)),
            _ => None,
        }
    }
}
