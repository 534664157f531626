//! `x = ⟨⟨w₁, ⌜φ₁⌝⟩, …, ⟨wₙ, ⌜φₙ⌝⟩⟩`, with `⟨…⟩` the packed sequence code.
//!
//! An axiom line is the pair `⟨index + 1, ⌜φ⌝⟩`. A rule line carries a third
//! entry `⟨rule, k, p₁, …, pₖ, ⌜h₁⌝, …⟩`: the rule tag, the number of
//! premises, the 0-based premise lines and the hypotheses of its sequent.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{check_proof, AxiomRecognizer, Justification, ProofLine, ProofObject, Rule, Sequent};
use crate::coding::{godel_decode, pack, unpack, Godel};

pub fn proof_code(p: &ProofObject) -> BigUint {
    let entries: Vec<BigUint> = p
        .lines
        .iter()
        .map(|line| {
            let phi = line.sequent.conclusion.godel_number();
            match &line.justification {
                Justification::Axiom(_) => pack(&[line.w(), phi]),
                Justification::Rule(rule, premises) => {
                    let mut meta = vec![BigUint::from(rule.tag()), BigUint::from(premises.len())];
                    meta.extend(premises.iter().map(|&j| BigUint::from(j)));
                    meta.extend(line.sequent.hypotheses.iter().map(Godel::godel_number));
                    pack(&[BigUint::zero(), phi, pack(&meta)])
                }
            }
        })
        .collect();
    pack(&entries)
}

/// The proof a code describes, if it is well formed.
pub fn decode_proof_code(x: &BigUint) -> Option<ProofObject> {
    let lines = unpack(x)?
        .iter()
        .map(|entry| {
            let parts = unpack(entry)?;
            let conclusion = godel_decode(parts.get(1)?).ok()?;
            match parts.as_slice() {
                [w, _] if !w.is_zero() => Some(ProofLine {
                    sequent: Sequent::closed(conclusion),
                    justification: Justification::Axiom(w - 1u32),
                }),
                [w, _, meta] if w.is_zero() => {
                    let meta = unpack(meta)?;
                    let rule = Rule::from_tag(meta.first()?.to_u64()?)?;
                    let k = meta.get(1)?.to_usize()?;
                    let premises = meta
                        .get(2..2 + k)?
                        .iter()
                        .map(|n| n.to_usize())
                        .collect::<Option<Vec<_>>>()?;
                    let hypotheses = meta[2 + k..]
                        .iter()
                        .map(|n| godel_decode(n).ok())
                        .collect::<Option<Vec<_>>>()?;
                    Some(ProofLine::rule(
                        rule,
                        premises,
                        Sequent::new(hypotheses, conclusion),
                    ))
                }
                _ => None,
            }
        })
        .collect::<Option<Vec<_>>>()?;
    let p = ProofObject::new(lines);
    // only canonical codes describe proofs
    (proof_code(&p) == *x).then_some(p)
}

/// `Proof_T(x, y)`: `x` codes a correct proof whose last formula has code `y`.
pub fn check_proof_code(x: &BigUint, y: &BigUint, rec: &AxiomRecognizer) -> bool {
    let Some(p) = decode_proof_code(x) else {
        return false;
    };
    check_proof(&p, rec).is_ok() && p.conclusion().map(Godel::godel_number).as_ref() == Some(y)
}
