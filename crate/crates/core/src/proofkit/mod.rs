//! Natural deduction proofs, axiom recognizers, proof codes and the
//! provability formulas built on them.
//!
//! A proof is a list of lines. Each line is a sequent `Γ ⊢ φ` justified
//! either as an axiom (with empty `Γ`) or by a rule applied to earlier
//! lines. Hypotheses are sets: a premise may use fewer hypotheses than the
//! line it supports, which makes weakening implicit.

mod axioms;
mod build;
mod check;
mod code;
mod file;
mod provability;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::syntax::Formula;

pub use axioms::{axiom_check, pr_axiom, q_axiom, Axiom, AxiomRecognizer, Theory};
pub use build::{compose_mp, prove_equation, ProofBuilder};
pub use check::{check_proof, ProofFailure};
pub use code::{check_proof_code, decode_proof_code, proof_code};
pub use file::{parse_proof, print_proof};
pub use provability::{
    binary_numeral, con_formula, ep_formula, pr_formula, proof_predicate, provability_signature,
    ProvabilityOracle, EXISTS_SENTENCE, SUBSTITUTION,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error("{0}")]
    NotAnAxiom(String),
    #[error("conclusions do not match: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("the equation is false: {0}")]
    False(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub hypotheses: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(hypotheses: Vec<Formula>, conclusion: Formula) -> Sequent {
        Sequent {
            hypotheses,
            conclusion,
        }
    }

    pub fn closed(conclusion: Formula) -> Sequent {
        Sequent::new(Vec::new(), conclusion)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hypotheses.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.hypotheses.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Hyp,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    NotI,
    NotE,
    BotE,
    AllI,
    AllE,
    ExI,
    ExE,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::Hyp,
        Rule::AndI,
        Rule::AndE1,
        Rule::AndE2,
        Rule::OrI1,
        Rule::OrI2,
        Rule::OrE,
        Rule::ImpI,
        Rule::ImpE,
        Rule::NotI,
        Rule::NotE,
        Rule::BotE,
        Rule::AllI,
        Rule::AllE,
        Rule::ExI,
        Rule::ExE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Hyp => "hyp",
            Rule::AndI => "andI",
            Rule::AndE1 => "andE1",
            Rule::AndE2 => "andE2",
            Rule::OrI1 => "orI1",
            Rule::OrI2 => "orI2",
            Rule::OrE => "orE",
            Rule::ImpI => "impI",
            Rule::ImpE => "impE",
            Rule::NotI => "notI",
            Rule::NotE => "notE",
            Rule::BotE => "botE",
            Rule::AllI => "allI",
            Rule::AllE => "allE",
            Rule::ExI => "exI",
            Rule::ExE => "exE",
        }
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        match self {
            Rule::Hyp => 0,
            Rule::AndI | Rule::ImpE | Rule::NotE | Rule::ExE => 2,
            Rule::OrE => 3,
            _ => 1,
        }
    }

    /// The tag used in proof codes, counting from 1.
    pub fn tag(self) -> u64 {
        Rule::ALL.iter().position(|&r| r == self).unwrap() as u64 + 1
    }

    pub fn from_tag(tag: u64) -> Option<Rule> {
        let i = usize::try_from(tag.checked_sub(1)?).ok()?;
        Rule::ALL.get(i).copied()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Rule::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// An axiom, by index.
    Axiom(BigUint),
    /// A rule applied to earlier lines (0-based).
    Rule(Rule, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub sequent: Sequent,
    pub justification: Justification,
}

impl ProofLine {
    pub fn axiom(a: &Axiom, phi: Formula) -> ProofLine {
        ProofLine {
            sequent: Sequent::closed(phi),
            justification: Justification::Axiom(a.index()),
        }
    }

    pub fn rule(rule: Rule, premises: Vec<usize>, sequent: Sequent) -> ProofLine {
        ProofLine {
            sequent,
            justification: Justification::Rule(rule, premises),
        }
    }

    /// `0` for a rule application, the axiom index plus one otherwise.
    pub fn w(&self) -> BigUint {
        match &self.justification {
            Justification::Axiom(i) => i + 1u32,
            Justification::Rule(..) => BigUint::default(),
        }
    }

    pub fn conclusion(&self) -> &Formula {
        &self.sequent.conclusion
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofObject {
    pub lines: Vec<ProofLine>,
}

impl ProofObject {
    pub fn new(lines: Vec<ProofLine>) -> ProofObject {
        ProofObject { lines }
    }

    /// The conclusion of the last line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(ProofLine::conclusion)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}
