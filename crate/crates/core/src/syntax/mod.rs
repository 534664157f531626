//! Abstract syntax of first-order arithmetic formulas.
//!
//! Terms are variables or applications of a function symbol. The arithmetic
//! core symbols are `0`, `S`, `+` and `*`; numerals are iterated `S` over
//! `0`. Formulas have `~` as a primitive connective next to `/\`, `\/` and
//! `->`, and atoms are either term equalities or predicate applications.

use std::collections::BTreeSet;
use std::fmt;

mod classify;
mod eval;
mod lemmas;
mod parse;
mod print;
mod schema;
mod signature;
pub(crate) mod subst;

pub use classify::{classify, FormulaClass};
pub use eval::{eval_classical_qf, eval_qf, eval_term, Env, Evaluator, PredicateOracle, Value};
pub use lemmas::{contract_quantifiers, qf_to_atomic};
pub use parse::{parse_formula, parse_formula_with, parse_term, ParseError};
pub use schema::{
    forall_closure, halts_on_self, instantiate_ect0, instantiate_induction, instantiate_mp,
    theta_instance,
};
pub use signature::{PrBody, PrDefinition, Signature};
pub use subst::{alpha_eq, fresh_name};

/// Name of the zero constant.
pub const ZERO: &str = "0";
/// Name of the successor function.
pub const SUCC: &str = "S";
/// Name of addition.
pub const ADD: &str = "+";
/// Name of multiplication.
pub const MUL: &str = "*";
/// Pairing function `j(x, y) = 2^x (2y + 1) - 1`.
pub const PAIR: &str = "j";
/// First projection of the pairing function.
pub const PAIR_FST: &str = "j1";
/// Second projection of the pairing function.
pub const PAIR_SND: &str = "j2";
/// Sequence decoding `dec(x, i) = (x)_i`.
pub const DECODE: &str = "dec";
/// Result extraction from a computation code.
pub const RESULT: &str = "U";
/// Kleene's T-predicate.
pub const KLEENE_T: &str = "T";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}` expects {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("formula is not quantifier-free: {0}")]
    NotQuantifierFree(String),
    #[error("formula is not almost negative: {0}")]
    NotAlmostNegative(String),
    #[error("formula has no leading quantifier block: {0}")]
    NoQuantifierBlock(String),
    #[error("predicate atom `{0}` has no characteristic term")]
    PredicateAtom(String),
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("evaluation of `{0}` does not fit in memory")]
    TooLarge(String),
}

/// A first-order term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    /// A nullary application, used both for signature constants and for
    /// element parameters of a Kripke structure.
    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn zero() -> Term {
        Term::constant(ZERO)
    }

    pub fn succ(t: Term) -> Term {
        Term::App(SUCC.into(), vec![t])
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::App(ADD.into(), vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::App(MUL.into(), vec![a, b])
    }

    /// The numeral `S(S(...S(0)...))` with `n` successors.
    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::zero(), |t, _| Term::succ(t))
    }

    /// If the term is a numeral, its value.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::App(f, args) if f == ZERO && args.is_empty() => return Some(n),
                Term::App(f, args) if f == SUCC && args.len() == 1 => {
                    n += 1;
                    t = &args[0];
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, v: &str) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// Replace every variable whose name satisfies `is_const` by a nullary
    /// application of the same name.
    pub fn resolve_constants(&self, is_const: &dyn Fn(&str) -> bool) -> Term {
        match self {
            Term::Var(v) if is_const(v) => Term::constant(v.clone()),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.resolve_constants(is_const)).collect(),
            ),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

/// A first-order formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Eq(Term, Term),
    Pred(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    /// A nullary predicate atom, i.e. a propositional letter.
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Pred(name.into(), Vec::new())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..)
        )
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let terms = |ts: &[&Term], out: &mut BTreeSet<String>| {
            for t in ts {
                let mut vs = BTreeSet::new();
                t.collect_vars(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
        };
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) => terms(&[a, b], out),
            Formula::Pred(_, args) => terms(&args.iter().collect::<Vec<_>>(), out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, v: &str) -> bool {
        match self {
            Formula::Top | Formula::Bottom => false,
            Formula::Eq(a, b) => a.contains_var(v) || b.contains_var(v),
            Formula::Pred(_, args) => args.iter().any(|t| t.contains_var(v)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_free(v) || b.has_free(v)
            }
            Formula::Not(a) => a.has_free(v),
            Formula::Forall(w, a) | Formula::Exists(w, a) => w != v && a.has_free(v),
        }
    }

    /// Every variable name occurring in the formula, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::Not(a) => a.collect_all(out),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                out.insert(v.clone());
                a.collect_all(out);
            }
        }
    }

    /// Number of connective and quantifier occurrences.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }

    /// Nesting depth of connectives and quantifiers.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
        }
    }

    /// Apply `f` to every term at the atom level, leaving binders alone.
    pub fn map_terms(&self, f: &dyn Fn(&Term) -> Term) -> Formula {
        match self {
            Formula::Top | Formula::Bottom => self.clone(),
            Formula::Eq(a, b) => Formula::Eq(f(a), f(b)),
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(f).collect()),
            Formula::And(a, b) => Formula::and(a.map_terms(f), b.map_terms(f)),
            Formula::Or(a, b) => Formula::or(a.map_terms(f), b.map_terms(f)),
            Formula::Implies(a, b) => Formula::implies(a.map_terms(f), b.map_terms(f)),
            Formula::Not(a) => Formula::not(a.map_terms(f)),
            Formula::Forall(v, a) => Formula::forall(v.clone(), a.map_terms(f)),
            Formula::Exists(v, a) => Formula::exists(v.clone(), a.map_terms(f)),
        }
    }

    /// Turn free variables naming constants into nullary applications.
    ///
    /// The grammar reads a bare identifier in term position as a variable;
    /// callers that know which names denote constants (a model's signature
    /// and element ids) resolve them afterwards.
    pub fn resolve_constants(&self, is_const: &dyn Fn(&str) -> bool) -> Formula {
        self.resolve_under(is_const, &mut Vec::new())
    }

    fn resolve_under(&self, is_const: &dyn Fn(&str) -> bool, bound: &mut Vec<String>) -> Formula {
        let resolve = |t: &Term, bound: &Vec<String>| {
            t.resolve_constants(&|v: &str| is_const(v) && !bound.iter().any(|b| b == v))
        };
        match self {
            Formula::Top | Formula::Bottom => self.clone(),
            Formula::Eq(a, b) => Formula::Eq(resolve(a, bound), resolve(b, bound)),
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|t| resolve(t, bound)).collect())
            }
            Formula::And(a, b) => Formula::and(
                a.resolve_under(is_const, bound),
                b.resolve_under(is_const, bound),
            ),
            Formula::Or(a, b) => Formula::or(
                a.resolve_under(is_const, bound),
                b.resolve_under(is_const, bound),
            ),
            Formula::Implies(a, b) => Formula::implies(
                a.resolve_under(is_const, bound),
                b.resolve_under(is_const, bound),
            ),
            Formula::Not(a) => Formula::not(a.resolve_under(is_const, bound)),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                let body = a.resolve_under(is_const, bound);
                bound.pop();
                if matches!(self, Formula::Forall(..)) {
                    Formula::forall(v.clone(), body)
                } else {
                    Formula::exists(v.clone(), body)
                }
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    pub fn substitute(&self, v: &str, t: &Term) -> Formula {
        subst::substitute(self, v, t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_term(f, self, 0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_formula(f, self, 0, true)
    }
}

/// Capture-avoiding substitution; see [`Formula::substitute`].
pub fn substitute(f: &Formula, v: &str, t: &Term) -> Formula {
    subst::substitute(f, v, t)
}

/// Render a formula in the concrete grammar accepted by [`parse_formula`].
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}
