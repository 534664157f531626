//! Evaluation over the standard model of arithmetic.
//!
//! Core symbols are computed natively; user symbols are unfolded through
//! their primitive recursive definitions. The coding symbols delegate to
//! [`crate::coding`] and `T`/`U` to [`crate::machine`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{
    Formula, PrBody, Signature, SyntaxError, Term, ADD, DECODE, KLEENE_T, MUL, PAIR, PAIR_FST,
    PAIR_SND, RESULT, SUCC, ZERO,
};
use crate::coding;
use crate::machine::{self, Computation};

/// Extra predicates whose meaning is supplied from outside the signature,
/// such as a proof predicate wired to a proof checker.
pub trait PredicateOracle: Sync {
    fn eval_pred(&self, name: &str, args: &[BigUint]) -> Option<bool>;
}

/// A value of the standard model.
///
/// `Run` stands for the code of a halting computation without materialising
/// it: trace codes of all but the shortest runs are far too large to write
/// down, while `T` and `U` only ever need the run itself.
#[derive(Clone, Debug)]
pub enum Value {
    Nat(BigUint),
    Run(Arc<Computation>),
}

impl Value {
    pub fn nat(n: impl Into<BigUint>) -> Value {
        Value::Nat(n.into())
    }

    /// The number this value denotes. For a run this is its trace code,
    /// which can be astronomically large.
    pub fn to_nat(&self) -> Result<BigUint, SyntaxError> {
        match self {
            Value::Nat(n) => Ok(n.clone()),
            Value::Run(c) => c
                .trace_code()
                .ok_or_else(|| SyntaxError::TooLarge("trace code".into())),
        }
    }

    fn same(&self, other: &Value) -> Result<bool, SyntaxError> {
        match (self, other) {
            (Value::Nat(a), Value::Nat(b)) => Ok(a == b),
            (Value::Run(a), Value::Run(b)) => Ok(a.program == b.program && a.input == b.input),
            _ => Ok(self.to_nat()? == other.to_nat()?),
        }
    }
}

pub type Env = Vec<(String, Value)>;

fn lookup<'e>(env: &'e Env, v: &str) -> Option<&'e Value> {
    env.iter().rev().find(|(n, _)| n == v).map(|(_, val)| val)
}

fn small(n: &BigUint, what: &str) -> Result<usize, SyntaxError> {
    n.to_usize()
        .filter(|&k| k <= (1 << 32))
        .ok_or_else(|| SyntaxError::TooLarge(what.to_string()))
}

#[derive(Clone, Copy)]
pub struct Evaluator<'a> {
    sig: &'a Signature,
    oracle: Option<&'a dyn PredicateOracle>,
    unfold: bool,
}

impl<'a> Evaluator<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Evaluator {
            sig,
            oracle: None,
            unfold: false,
        }
    }

    /// Unfold the prelude functions (`pred`, `monus`, `sg`, ...) through
    /// their definitions instead of computing them directly.
    pub fn unfolding(mut self) -> Self {
        self.unfold = true;
        self
    }

    pub fn with_oracle(mut self, oracle: &'a dyn PredicateOracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn signature(&self) -> &'a Signature {
        self.sig
    }

    pub fn term(&self, t: &Term, env: &Env) -> Result<Value, SyntaxError> {
        match t {
            Term::Var(v) => lookup(env, v)
                .cloned()
                .ok_or_else(|| SyntaxError::UnboundVariable(v.clone())),
            Term::App(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.term(a, env))
                    .collect::<Result<Vec<_>, _>>()?;
                self.apply(f, vals)
            }
        }
    }

    pub fn nat(&self, t: &Term, env: &Env) -> Result<BigUint, SyntaxError> {
        self.term(t, env)?.to_nat()
    }

    /// Apply a function symbol to evaluated arguments.
    pub fn apply(&self, f: &str, args: Vec<Value>) -> Result<Value, SyntaxError> {
        self.check_arity(f, args.len(), false)?;
        if f == RESULT {
            return Ok(Value::Nat(match &args[0] {
                Value::Run(c) => BigUint::from(c.output),
                Value::Nat(u) => machine::u_extract(u),
            }));
        }
        let nats = args
            .iter()
            .map(Value::to_nat)
            .collect::<Result<Vec<_>, _>>()?;
        self.call(f, &nats).map(Value::Nat)
    }

    fn check_arity(&self, f: &str, found: usize, predicate: bool) -> Result<(), SyntaxError> {
        let expected = if predicate {
            self.sig.predicate_arity(f)
        } else {
            self.sig.function_arity(f)
        };
        match expected {
            Some(expected) if expected != found => Err(SyntaxError::Arity {
                name: f.to_string(),
                expected,
                found,
            }),
            Some(_) => Ok(()),
            None if predicate && self.oracle.is_some() => Ok(()),
            None => Err(SyntaxError::UnknownSymbol(f.to_string())),
        }
    }

    fn call(&self, f: &str, args: &[BigUint]) -> Result<BigUint, SyntaxError> {
        if !self.unfold && self.sig.is_arithmetic() {
            if let Some(v) = prelude_native(f, args) {
                return Ok(v);
            }
        }
        Ok(match f {
            _ if f == ZERO => BigUint::zero(),
            _ if f == SUCC => &args[0] + 1u32,
            _ if f == ADD => &args[0] + &args[1],
            _ if f == MUL => &args[0] * &args[1],
            _ if f == PAIR => coding::try_pair(&args[0], &args[1])
                .ok_or_else(|| SyntaxError::TooLarge(format!("j({}, ..)", args[0])))?,
            _ if f == PAIR_FST => coding::unpair(&args[0]).0,
            _ if f == PAIR_SND => coding::unpair(&args[0]).1,
            _ if f == DECODE => coding::decode_at(&args[0], small(&args[1], "dec index")?),
            _ => {
                let def = self
                    .sig
                    .pr_definition(f)
                    .ok_or_else(|| SyntaxError::UnknownSymbol(f.to_string()))?;
                match &def.body {
                    PrBody::Zero => BigUint::zero(),
                    PrBody::Successor => &args[0] + 1u32,
                    PrBody::Projection(i) => args[*i].clone(),
                    PrBody::Composition { outer, inners } => {
                        let mid = inners
                            .iter()
                            .map(|g| self.call(g, args))
                            .collect::<Result<Vec<_>, _>>()?;
                        self.call(outer, &mid)?
                    }
                    PrBody::Recursion { base, step } => {
                        let rounds = args[0]
                            .to_u64()
                            .filter(|&n| n <= 1 << 40)
                            .ok_or_else(|| SyntaxError::TooLarge(format!("{f} recursion depth")))?;
                        let rest = &args[1..];
                        let mut acc = self.call(base, rest)?;
                        let mut step_args = Vec::with_capacity(args.len() + 1);
                        for i in 0..rounds {
                            step_args.clear();
                            step_args.push(BigUint::from(i));
                            step_args.push(acc);
                            step_args.extend_from_slice(rest);
                            acc = self.call(step, &step_args)?;
                        }
                        acc
                    }
                }
            }
        })
    }

    /// Truth of an atomic formula.
    pub fn atom(&self, f: &Formula, env: &Env) -> Result<bool, SyntaxError> {
        match f {
            Formula::Top => Ok(true),
            Formula::Bottom => Ok(false),
            Formula::Eq(a, b) => self.term(a, env)?.same(&self.term(b, env)?),
            Formula::Pred(p, args) => {
                self.check_arity(p, args.len(), true)?;
                let vals = args
                    .iter()
                    .map(|a| self.term(a, env))
                    .collect::<Result<Vec<_>, _>>()?;
                if p == KLEENE_T {
                    return Ok(match &vals[2] {
                        Value::Run(c) => {
                            vals[0].to_nat()? == c.program && vals[1].to_nat()? == c.input
                        }
                        Value::Nat(u) => {
                            machine::t_predicate(&vals[0].to_nat()?, &vals[1].to_nat()?, u)
                        }
                    });
                }
                let nats = vals
                    .iter()
                    .map(Value::to_nat)
                    .collect::<Result<Vec<_>, _>>()?;
                self.oracle
                    .and_then(|o| o.eval_pred(p, &nats))
                    .ok_or_else(|| SyntaxError::UnknownSymbol(p.clone()))
            }
            _ => Err(SyntaxError::NotQuantifierFree(f.to_string())),
        }
    }

    /// Truth of a quantifier-free formula under `env`.
    pub fn qf(&self, f: &Formula, env: &Env) -> Result<bool, SyntaxError> {
        match f {
            Formula::And(a, b) => Ok(self.qf(a, env)? && self.qf(b, env)?),
            Formula::Or(a, b) => Ok(self.qf(a, env)? || self.qf(b, env)?),
            Formula::Implies(a, b) => Ok(!self.qf(a, env)? || self.qf(b, env)?),
            Formula::Not(a) => Ok(!self.qf(a, env)?),
            Formula::Forall(..) | Formula::Exists(..) => {
                Err(SyntaxError::NotQuantifierFree(f.to_string()))
            }
            _ => self.atom(f, env),
        }
    }
}

/// The prelude functions in closed form. The prelude names cannot be
/// redefined, so in an arithmetic signature they always mean this.
fn prelude_native(f: &str, args: &[BigUint]) -> Option<BigUint> {
    let monus = |a: &BigUint, b: &BigUint| if a > b { a - b } else { BigUint::zero() };
    Some(match f {
        "pred" => monus(&args[0], &BigUint::from(1u32)),
        "monus" => monus(&args[0], &args[1]),
        "rmonus" | "monusSwap" => monus(&args[1], &args[0]),
        "sg" => BigUint::from(u32::from(!args[0].is_zero())),
        "absdiff" => monus(&args[0], &args[1]) + monus(&args[1], &args[0]),
        "max" => args[0].clone().max(args[1].clone()),
        _ => return None,
    })
}

fn to_env(env: &BTreeMap<String, BigUint>) -> Env {
    env.iter()
        .map(|(k, v)| (k.clone(), Value::Nat(v.clone())))
        .collect()
}

/// Value of a term in the standard model under `env`.
pub fn eval_term(
    sig: &Signature,
    t: &Term,
    env: &BTreeMap<String, BigUint>,
) -> Result<BigUint, SyntaxError> {
    Evaluator::new(sig).nat(t, &to_env(env))
}

/// Truth of a quantifier-free formula in the standard model under `env`.
pub fn eval_qf(
    sig: &Signature,
    f: &Formula,
    env: &BTreeMap<String, BigUint>,
) -> Result<bool, SyntaxError> {
    Evaluator::new(sig).qf(f, &to_env(env))
}

/// Truth of a closed quantifier-free formula in the standard model.
pub fn eval_classical_qf(sig: &Signature, f: &Formula) -> Result<bool, SyntaxError> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(SyntaxError::UnboundVariable(v));
    }
    Evaluator::new(sig).qf(f, &Env::new())
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Nat(BigUint::from(n))
    }
}
