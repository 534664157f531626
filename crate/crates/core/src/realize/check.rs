use std::fmt;

use num_bigint::BigUint;

use super::r_translate;
use crate::machine::{self, Execution, MachineError};
use crate::syntax::{fresh_name, Env, Evaluator, Formula, Signature, Term, Value, KLEENE_T};

/// Three-valued truth with an exactness flag.
///
/// `exact` is false when the value rests on bounded search: a universal
/// statement checked below the bound, or an existential one with no witness
/// below it.
#[derive(Clone, Debug)]
pub enum Truth {
    True { exact: bool },
    False { exact: bool, refutation: Refutation },
    Unknown(String),
}

/// Why a formula failed: the universal choices that led there and the
/// false parts reached.
#[derive(Clone, Debug, Default)]
pub struct Refutation {
    pub counterexample: Vec<(String, BigUint)>,
    pub failures: Vec<Failure>,
}

/// A subformula instance that is false under its assignment.
#[derive(Clone, Debug)]
pub struct Failure {
    pub instance: Formula,
    pub assignment: Env,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple: Vec<String> = self
            .counterexample
            .iter()
            .map(|(v, n)| format!("{v} = {n}"))
            .collect();
        write!(f, "counterexample [{}]", tuple.join(", "))?;
        for fail in &self.failures {
            write!(f, "; false: {}", fail.instance)?;
            let vals: Vec<String> = fail
                .assignment
                .iter()
                .map(|(v, val)| match val {
                    Value::Nat(n) => format!("{v} = {n}"),
                    Value::Run(c) => format!("{v} = run of {} on {}", c.program, c.input),
                })
                .collect();
            if !vals.is_empty() {
                write!(f, " under {}", vals.join(", "))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    VerifiedBounded { quant_bound: u64, fuel: u64 },
    Refuted(Refutation),
    Unknown(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::VerifiedBounded { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::VerifiedBounded { quant_bound, fuel } => {
                write!(f, "verified below {quant_bound} with fuel {fuel}")
            }
            Verdict::Refuted(r) => write!(f, "refuted: {r}"),
            Verdict::Unknown(why) => write!(f, "unknown: {why}"),
        }
    }
}

/// Evaluates formulas over the standard model, searching quantifiers below
/// `quant_bound` and running machines for at most `fuel` steps.
///
/// `∃u(T(e, y, u) ∧ ψ)` is decided by running `e` on `y`: `T` is
/// deterministic, so the halting run is the only candidate for `u`.
#[derive(Clone, Copy)]
pub struct Checker<'a> {
    eval: Evaluator<'a>,
    pub fuel: u64,
    pub quant_bound: u64,
}

fn fail(f: &Formula, env: &Env) -> Truth {
    let free = f.free_vars();
    let mut assignment: Env = Vec::new();
    for (v, val) in env.iter().rev() {
        if free.contains(v) && !assignment.iter().any(|(w, _)| w == v) {
            assignment.push((v.clone(), val.clone()));
        }
    }
    assignment.reverse();
    Truth::False {
        exact: true,
        refutation: Refutation {
            counterexample: Vec::new(),
            failures: vec![Failure {
                instance: f.clone(),
                assignment,
            }],
        },
    }
}

impl<'a> Checker<'a> {
    pub fn new(sig: &'a Signature, fuel: u64, quant_bound: u64) -> Self {
        Checker {
            eval: Evaluator::new(sig),
            fuel,
            quant_bound,
        }
    }

    pub fn with_evaluator(eval: Evaluator<'a>, fuel: u64, quant_bound: u64) -> Self {
        Checker {
            eval,
            fuel,
            quant_bound,
        }
    }

    pub fn truth(&self, f: &Formula, env: &mut Env) -> Truth {
        if f.is_quantifier_free() {
            return match self.eval.qf(f, env) {
                Ok(true) => Truth::True { exact: true },
                Ok(false) => fail(f, env),
                Err(e) => Truth::Unknown(e.to_string()),
            };
        }
        match f {
            Formula::And(a, b) => {
                let left = self.truth(a, env);
                if matches!(left, Truth::False { exact: true, .. }) {
                    return left;
                }
                and(left, self.truth(b, env))
            }
            Formula::Or(a, b) => {
                let left = self.truth(a, env);
                if matches!(left, Truth::True { exact: true }) {
                    return left;
                }
                or(left, self.truth(b, env))
            }
            Formula::Implies(a, b) => {
                let left = self.truth(a, env);
                if matches!(left, Truth::False { exact: true, .. }) {
                    return Truth::True { exact: true };
                }
                or(not(left, a, env), self.truth(b, env))
            }
            Formula::Not(a) => {
                let inner = self.truth(a, env);
                not(inner, a, env)
            }
            Formula::Forall(v, body) => self.forall(v, body, env),
            Formula::Exists(u, body) => match self.run_pattern(u, body) {
                Some((e, y, rest)) => self.run_then(f, u, e, y, rest, env),
                None => self.exists(u, body, env),
            },
            _ => unreachable!("quantifier-free formulas are handled above"),
        }
    }

    fn forall(&self, v: &str, body: &Formula, env: &mut Env) -> Truth {
        let mut unknown = None;
        let mut bounded_false = None;
        for a in 0..self.quant_bound {
            env.push((v.to_string(), Value::from(a)));
            let t = self.truth(body, env);
            env.pop();
            match t {
                Truth::True { .. } => {}
                Truth::False {
                    exact: true,
                    mut refutation,
                } => {
                    refutation
                        .counterexample
                        .insert(0, (v.to_string(), BigUint::from(a)));
                    return Truth::False {
                        exact: true,
                        refutation,
                    };
                }
                Truth::False { .. } => {
                    bounded_false.get_or_insert(t);
                }
                Truth::Unknown(_) => {
                    unknown.get_or_insert(t);
                }
            }
        }
        unknown
            .or(bounded_false)
            .unwrap_or(Truth::True { exact: false })
    }

    fn exists(&self, v: &str, body: &Formula, env: &mut Env) -> Truth {
        let mut unknown = None;
        let mut bounded_true = None;
        for a in 0..self.quant_bound {
            env.push((v.to_string(), Value::from(a)));
            let t = self.truth(body, env);
            env.pop();
            match t {
                Truth::True { exact: true } => return t,
                Truth::True { .. } => {
                    bounded_true.get_or_insert(t);
                }
                Truth::False { .. } => {}
                Truth::Unknown(_) => {
                    unknown.get_or_insert(t);
                }
            }
        }
        bounded_true.or(unknown).unwrap_or(Truth::False {
            exact: false,
            refutation: Refutation::default(),
        })
    }

    /// `∃u(T(e, y, u) ∧ rest)` with `u` not occurring in `e` or `y`.
    fn run_pattern<'f>(
        &self,
        u: &str,
        body: &'f Formula,
    ) -> Option<(&'f Term, &'f Term, &'f Formula)> {
        let Formula::And(t, rest) = body else {
            return None;
        };
        match &**t {
            Formula::Pred(p, args)
                if p == KLEENE_T
                    && args.len() == 3
                    && args[2] == Term::var(u)
                    && !args[0].contains_var(u)
                    && !args[1].contains_var(u) =>
            {
                Some((&args[0], &args[1], rest))
            }
            _ => None,
        }
    }

    fn run_then(
        &self,
        whole: &Formula,
        u: &str,
        e: &Term,
        y: &Term,
        rest: &Formula,
        env: &mut Env,
    ) -> Truth {
        let (e, y) = match (self.eval.nat(e, env), self.eval.nat(y, env)) {
            (Ok(e), Ok(y)) => (e, y),
            (Err(err), _) | (_, Err(err)) => return Truth::Unknown(err.to_string()),
        };
        match machine::execute(&e, &y, self.fuel) {
            Ok(Execution::Halted(c)) => {
                env.push((u.to_string(), Value::Run(c)));
                let t = self.truth(rest, env);
                env.pop();
                t
            }
            Ok(Execution::OutOfFuel) => Truth::Unknown(format!(
                "program {e} on input {y} did not halt within {} steps",
                self.fuel
            )),
            // not a program: no computation, so no u with T(e, y, u)
            Err(MachineError::InvalidCode(_)) => fail(whole, env),
            Err(err) => Truth::Unknown(err.to_string()),
        }
    }
}

fn and(a: Truth, b: Truth) -> Truth {
    match (a, b) {
        (_, b @ Truth::False { exact: true, .. }) => b,
        (a @ Truth::False { exact: true, .. }, _) => a,
        (a @ Truth::Unknown(_), _) => a,
        (_, b @ Truth::Unknown(_)) => b,
        (a @ Truth::False { .. }, _) => a,
        (_, b @ Truth::False { .. }) => b,
        (Truth::True { exact: x }, Truth::True { exact: y }) => Truth::True { exact: x && y },
    }
}

fn or(a: Truth, b: Truth) -> Truth {
    match (a, b) {
        (a @ Truth::True { exact: true }, _) => a,
        (_, b @ Truth::True { exact: true }) => b,
        (a @ Truth::Unknown(_), _) => a,
        (_, b @ Truth::Unknown(_)) => b,
        (a @ Truth::True { .. }, _) => a,
        (_, b @ Truth::True { .. }) => b,
        (
            Truth::False {
                exact: x,
                refutation: mut r,
            },
            Truth::False {
                exact: y,
                refutation: s,
            },
        ) => {
            r.counterexample.extend(s.counterexample);
            r.failures.extend(s.failures);
            Truth::False {
                exact: x && y,
                refutation: r,
            }
        }
    }
}

fn not(t: Truth, inner: &Formula, env: &Env) -> Truth {
    match t {
        Truth::True { exact: true } => fail(&Formula::not(inner.clone()), env),
        Truth::True { exact: false } => Truth::False {
            exact: false,
            refutation: Refutation::default(),
        },
        Truth::False { exact, .. } => Truth::True { exact },
        u @ Truth::Unknown(_) => u,
    }
}

/// Whether `n` realizes the sentence `phi`, as far as bounded search and
/// `fuel` can tell.
pub fn bounded_check_realizes(n: &BigUint, phi: &Formula, fuel: u64, quant_bound: u64) -> Verdict {
    Checker::new(&Signature::arithmetic(), fuel, quant_bound).realizes(n, phi)
}

impl Checker<'_> {
    pub fn realizes(&self, n: &BigUint, phi: &Formula) -> Verdict {
        if !phi.is_sentence() {
            return Verdict::Unknown(format!("`{phi}` is not a sentence"));
        }
        let x = fresh_name("x", &phi.all_vars());
        let translated = r_translate(&x, phi).expect("x is fresh");
        let mut env = vec![(x, Value::Nat(n.clone()))];
        match self.truth(&translated, &mut env) {
            Truth::True { .. } => Verdict::VerifiedBounded {
                quant_bound: self.quant_bound,
                fuel: self.fuel,
            },
            Truth::False {
                exact: true,
                refutation,
            } => Verdict::Refuted(refutation),
            Truth::False { .. } => {
                Verdict::Unknown(format!("no witness found below {}", self.quant_bound))
            }
            Truth::Unknown(why) => Verdict::Unknown(why),
        }
    }

    /// Re-evaluate a failure on its own: quantifier-free instances directly,
    /// others through this checker. True when the instance is still false.
    pub fn recheck(&self, failure: &Failure) -> bool {
        let mut env = failure.assignment.clone();
        if failure.instance.is_quantifier_free() {
            return self.eval.qf(&failure.instance, &env) == Ok(false);
        }
        matches!(
            self.truth(&failure.instance, &mut env),
            Truth::False { exact: true, .. }
        )
    }
}
