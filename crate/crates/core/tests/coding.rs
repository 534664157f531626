mod common;

use heyting::coding::{
    decode_at, decode_seq, encode_seq, godel_decode, godel_decode_term, name_code, name_decode,
    nth_prime, numeral_subst_code, pack, pack_u64, pair, pair_u64, try_encode_seq, unpack, unpair,
    valuation, Godel,
};
use heyting::syntax::Term;
use heyting::BigUint;
use proptest::prelude::*;

use common::*;

#[test]
fn primes_match_a_sieve() {
    let sieve = first_primes(500);
    for (i, &p) in sieve.iter().enumerate() {
        assert_eq!(nth_prime(i), p);
    }
}

proptest! {
    #[test]
    fn pairing_matches_the_reference(x in 0u64..200, y in 0u64..1_000_000) {
        let n = pair(x, y);
        prop_assert_eq!(&n, &pair_reference(x, y));
        prop_assert_eq!(unpair(&n), (BigUint::from(x), BigUint::from(y)));
        if let Some(m) = pair_u64(x, y) {
            prop_assert_eq!(BigUint::from(m), n);
        }
    }

    #[test]
    fn unpairing_is_onto(n in 0u64..u64::MAX - 1) {
        let (x, y) = unpair_reference(n);
        prop_assert_eq!(unpair(&BigUint::from(n)), (BigUint::from(x), BigUint::from(y)));
        prop_assert_eq!(pair(x, y), BigUint::from(n));
    }

    #[test]
    fn sequence_codes_factor_as_prime_powers(elems in prop::collection::vec(0u64..12, 0..8)) {
        let code = encode_seq(&elems);
        let factors = prime_exponents(&code);
        let primes = first_primes(elems.len());
        prop_assert_eq!(factors.len(), elems.len());
        for (i, &a) in elems.iter().enumerate() {
            prop_assert_eq!(factors.get(&primes[i]).copied(), Some(a + 1));
            prop_assert_eq!(valuation(&code, primes[i]), a + 1);
            prop_assert_eq!(decode_at(&code, i), BigUint::from(a));
        }
        prop_assert_eq!(decode_seq(&code), Some(elems));
    }

    #[test]
    fn non_codes_are_rejected(elems in prop::collection::vec(0u64..6, 1..6), gap in 1usize..4) {
        // skipping a prime leaves a hole that no sequence code has
        let mut code = try_encode_seq(&elems).unwrap();
        code *= BigUint::from(nth_prime(elems.len() + gap));
        prop_assert_eq!(decode_seq(&code), None);
    }

    #[test]
    fn pack_matches_the_reference(elems in prop::collection::vec(0u64..100_000, 0..10)) {
        let big: Vec<BigUint> = elems.iter().map(|&a| BigUint::from(a)).collect();
        let code = pack_u64(&elems);
        prop_assert_eq!(&code, &pack_reference(&big));
        prop_assert_eq!(&code, &pack(&big));
        prop_assert_eq!(unpack(&code), Some(big));
    }

    #[test]
    fn formula_codes_match_the_reference(seed in any::<u64>()) {
        let phi = random_formula(&mut rng(seed), 4);
        let code = phi.godel_number();
        prop_assert_eq!(&code, &formula_code_reference(&phi));
        prop_assert_eq!(godel_decode(&code).unwrap(), phi);
    }

    #[test]
    fn term_codes_match_the_reference(seed in any::<u64>()) {
        let t = random_term(&mut rng(seed), &["x", "y"], 4);
        let code = t.godel_number();
        prop_assert_eq!(&code, &term_code_reference(&t));
        prop_assert_eq!(godel_decode_term(&code).unwrap(), t);
    }

    #[test]
    fn names_round_trip(name in "[a-zA-Z_][a-zA-Z0-9_']{0,12}") {
        prop_assert_eq!(name_decode(&name_code(&name)).unwrap(), name);
    }

    // each successor doubles the length of a numeral's code, so numerals stay small
    #[test]
    fn numeral_substitution_commutes_with_coding(seed in any::<u64>(), c in 0u64..6) {
        let phi = random_formula(&mut rng(seed), 3);
        let code = phi.godel_number();
        match numeral_subst_code(&code, c, "x") {
            Ok(sub) => {
                prop_assert!(phi.has_free("x"));
                prop_assert_eq!(sub, phi.substitute("x", &Term::numeral(c)).godel_number());
            }
            Err(_) => prop_assert!(!phi.has_free("x")),
        }
    }
}
