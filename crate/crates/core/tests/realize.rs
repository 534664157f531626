mod common;

use heyting::machine::{assemble, execute, Execution, Instruction, Program};
use heyting::realize::{bounded_check_realizes, r_translate, realizes, Verdict};
use heyting::syntax::{alpha_eq, parse_formula, Formula, Term};
use heyting::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

use common::*;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn program(ins: Vec<Instruction>) -> BigUint {
    assemble(&Program::new(ins).unwrap()).unwrap()
}

/// Outputs `j(y + 1, 0)`, a realizer of `forall y. exists z. z = S(y)`.
fn successor_realizer() -> BigUint {
    use Instruction::*;
    program(vec![
        Inc(1),
        Inc(1),
        DecJz(0, 10),
        DecJz(1, 6),
        Inc(2),
        DecJz(3, 3),
        DecJz(2, 2),
        Inc(1),
        Inc(1),
        DecJz(3, 6),
        DecJz(1, 14),
        DecJz(1, 14),
        Inc(0),
        DecJz(3, 11),
        Halt,
    ])
}

/// A closed conjunction of equations between numerals.
fn closed_conjunction(rng: &mut StdRng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::eq(random_term(rng, &[], 2), random_term(rng, &[], 2));
    }
    Formula::and(
        closed_conjunction(rng, depth - 1),
        closed_conjunction(rng, depth - 1),
    )
}

fn truth(phi: &Formula) -> bool {
    qf_reference(phi, &Default::default())
}

#[test]
fn successor_realizer_with_enough_fuel() {
    let e = successor_realizer();
    let phi = f("forall y. exists z. z = S(y)");
    let Execution::Halted(run) = execute(&e, &BigUint::from(19u32), u64::MAX).unwrap() else {
        panic!("the realizer halts");
    };
    assert!(run.steps > 10_000_000);
    assert_eq!(run.output, (1 << 20) - 1);
    let verdict = bounded_check_realizes(&e, &phi, 20_000_000, 20);
    assert!(verdict.is_verified(), "{verdict}");
}

#[test]
fn running_out_of_fuel_is_not_a_refutation() {
    let e = successor_realizer();
    let phi = f("forall y. exists z. z = S(y)");
    let verdict = bounded_check_realizes(&e, &phi, 1_000_000, 20);
    assert!(matches!(verdict, Verdict::Unknown(_)));
    assert!(bounded_check_realizes(&e, &phi, 1_000_000, 15).is_verified());
}

#[test]
fn a_wrong_realizer_is_refuted() {
    // the identity outputs y, and j1(y) = S(y) fails at y = 0
    let id = program(vec![Instruction::Halt]);
    let verdict = bounded_check_realizes(&id, &f("forall y. exists z. z = S(y)"), 1000, 5);
    assert!(verdict.is_refuted(), "{verdict}");
}

proptest! {
    #[test]
    fn conjunctions_of_atoms_are_realized_by_anything_iff_true(seed in any::<u64>(), n in 0u64..1000) {
        let phi = closed_conjunction(&mut rng(seed), 3);
        let v = bounded_check_realizes(&BigUint::from(n), &phi, 100, 5);
        prop_assert_eq!(v.is_verified(), truth(&phi));
        prop_assert_eq!(v.is_refuted(), !truth(&phi));
    }

    #[test]
    fn disjunctions_follow_the_left_component(seed in any::<u64>(), n in 0u64..1000) {
        let mut r = rng(seed);
        let (a, b) = (closed_conjunction(&mut r, 2), closed_conjunction(&mut r, 2));
        let (left, _) = unpair_reference(n);
        let want = if left == 0 { truth(&a) } else { truth(&b) };
        let v = bounded_check_realizes(&BigUint::from(n), &Formula::or(a, b), 100, 5);
        prop_assert_eq!(v.is_verified(), want);
    }

    #[test]
    fn the_identity_realizes_true_implications(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (closed_conjunction(&mut r, 2), closed_conjunction(&mut r, 2));
        let id = program(vec![Instruction::Halt]);
        let want = !truth(&a) || truth(&b);
        let v = bounded_check_realizes(&id, &Formula::implies(a, b), 100, 5);
        prop_assert_eq!(v.is_verified(), want);
        prop_assert_eq!(v.is_refuted(), !want);
    }

    #[test]
    fn translations_only_add_the_realizer(seed in any::<u64>()) {
        let phi = random_formula(&mut rng(seed), 4);
        match r_translate("x", &phi) {
            Ok(t) => {
                let mut allowed = phi.free_vars();
                allowed.insert("x".into());
                prop_assert!(t.free_vars().is_subset(&allowed));
            }
            Err(_) => prop_assert!(phi.has_free("x")),
        }
    }

    #[test]
    fn translation_commutes_with_numeral_substitution(seed in any::<u64>(), n in 0u64..5) {
        let phi = forall_free(random_formula(&mut rng(seed), 3));
        if let Ok(t) = r_translate("x", &phi) {
            let direct = realizes(&Term::numeral(n), &phi);
            prop_assert!(alpha_eq(&t.substitute("x", &Term::numeral(n)), &direct));
        }
    }
}

/// Binds the free variables other than `x` so the realizer is the only one.
fn forall_free(phi: Formula) -> Formula {
    phi.free_vars()
        .into_iter()
        .filter(|v| v != "x")
        .fold(phi, |acc, v| Formula::forall(v, acc))
}
