mod common;

use common::proofs::{corpus, ha};
use common::{random_formula, random_term, rng, term_reference};
use heyting::proofkit::{
    check_proof, compose_mp, decode_proof_code, parse_proof, print_proof, proof_code,
    prove_equation, ProofError,
};
use heyting::syntax::{Formula, Term};
use proptest::prelude::*;

#[test]
fn corpus_checks() {
    let rec = ha();
    let c = corpus();
    assert_eq!(c.len(), 20);
    for (name, p) in &c {
        assert_eq!(check_proof(p, &rec), Ok(()), "{name}");
    }
}

#[test]
fn corpus_survives_text_and_codes() {
    for (name, p) in &corpus() {
        let text = print_proof(p);
        assert_eq!(&parse_proof(&text).unwrap(), p, "{name}");
        assert_eq!(
            decode_proof_code(&proof_code(p)).as_ref(),
            Some(p),
            "{name}"
        );
    }
}

fn value(t: &Term) -> u128 {
    term_reference(t, &Default::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn changed_conclusions_are_rejected(which in any::<prop::sample::Index>(), line in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let rec = ha();
        let c = corpus();
        let (name, p) = &c[which.index(c.len())];
        let mut bad = p.clone();
        let l = line.index(bad.len());
        let replacement = random_formula(&mut rng(seed), 2);
        let seq = &mut bad.lines[l].sequent;
        prop_assume!(replacement != seq.conclusion && !seq.hypotheses.contains(&replacement));
        seq.conclusion = replacement;
        prop_assert!(check_proof(&bad, &rec).is_err(), "{} line {}", name, l + 1);
    }

    #[test]
    fn closed_equations_are_proved_exactly_when_true(seed in any::<u64>()) {
        let rec = ha();
        let mut r = rng(seed);
        let (t, s) = (random_term(&mut r, &[], 2), random_term(&mut r, &[], 2));
        match prove_equation(&rec, &t, &s) {
            Ok(p) => {
                prop_assert_eq!(value(&t), value(&s));
                prop_assert_eq!(p.conclusion(), Some(&Formula::eq(t, s)));
                prop_assert_eq!(check_proof(&p, &rec), Ok(()));
            }
            Err(ProofError::False(_)) => prop_assert_ne!(value(&t), value(&s)),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn composition_needs_a_matching_antecedent(i in 0usize..20, j in 0usize..20) {
        let rec = ha();
        let c = corpus();
        let (p, q) = (&c[i].1, &c[j].1);
        let fits = matches!(q.conclusion(), Some(Formula::Implies(a, _)) if Some(&**a) == p.conclusion());
        match compose_mp(p, q) {
            Ok(r) => {
                prop_assert!(fits);
                prop_assert_eq!(check_proof(&r, &rec), Ok(()));
            }
            Err(ProofError::Mismatch { .. }) => prop_assert!(!fits),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
