use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::ProofError;
use crate::coding::{godel_decode, name_code, name_decode, pack, unpack, Godel};
use crate::syntax::{
    forall_closure, fresh_name, instantiate_ect0, instantiate_induction, parse_formula, Formula,
    PrBody, Signature, Term,
};

/// The theories with built-in recognizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Robinson arithmetic.
    Q,
    /// Q, the defining equations of the primitive recursive functions and
    /// induction for atomic formulas.
    IPra,
    /// Q, the defining equations and induction for every formula.
    Ha,
    /// HA together with extended Church's thesis.
    HaEct0,
    /// Only the listed extra axioms.
    Custom,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Q => "Q",
            Theory::IPra => "iPRA",
            Theory::Ha => "HA",
            Theory::HaEct0 => "HA+ECT0",
            Theory::Custom => "custom",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "Q" => Theory::Q,
            "iPRA" => Theory::IPra,
            "HA" => Theory::Ha,
            "HA+ECT0" => Theory::HaEct0,
            "custom" => Theory::Custom,
            _ => {
                return Err(format!(
                    "unknown theory `{s}` (expected Q, iPRA, HA, HA+ECT0 or custom)"
                ))
            }
        })
    }
}

const Q_AXIOMS: [&str; 7] = [
    "forall x. ~S(x) = 0",
    "forall x. forall y. S(x) = S(y) -> x = y",
    "forall x. x = 0 \\/ exists y. x = S(y)",
    "forall x. x + 0 = x",
    "forall x. forall y. x + S(y) = S(x + y)",
    "forall x. x * 0 = 0",
    "forall x. forall y. x * S(y) = x * y + x",
];

/// `Qi` for `i` in 1..=7.
pub fn q_axiom(i: u8) -> Option<Formula> {
    let text = Q_AXIOMS.get(usize::from(i).checked_sub(1)?)?;
    Some(parse_formula(text).expect("Q axioms parse"))
}

/// An axiom described by its schema and instance data. The index of an
/// axiom is the code of this description, so checking an index against a
/// formula means regenerating the instance and comparing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    Q(u8),
    /// `∀x x = x`.
    EqRefl,
    /// `∀(a = b → (φ[z:=a] → φ[z:=b]))`, closed over its free variables.
    EqSubst {
        phi: Formula,
        var: String,
    },
    /// Defining equation `clause` of a primitive recursive definition.
    Pr {
        name: String,
        clause: u8,
    },
    Induction {
        phi: Formula,
        var: String,
    },
    Ect0 {
        phi: Formula,
        psi: Formula,
        x: String,
        y: String,
    },
    /// The `i`-th extra axiom of the recognizer.
    Extra(usize),
}

const TAG_Q: u64 = 0;
const TAG_REFL: u64 = 1;
const TAG_SUBST: u64 = 2;
const TAG_PR: u64 = 3;
const TAG_IND: u64 = 4;
const TAG_ECT0: u64 = 5;
const TAG_EXTRA: u64 = 6;

fn small(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

impl Axiom {
    pub fn index(&self) -> BigUint {
        let n = BigUint::from;
        match self {
            Axiom::Q(i) => pack(&[n(TAG_Q), n(u64::from(*i))]),
            Axiom::EqRefl => pack(&[n(TAG_REFL)]),
            Axiom::EqSubst { phi, var } => {
                pack(&[n(TAG_SUBST), phi.godel_number(), name_code(var)])
            }
            Axiom::Pr { name, clause } => {
                pack(&[n(TAG_PR), name_code(name), n(u64::from(*clause))])
            }
            Axiom::Induction { phi, var } => {
                pack(&[n(TAG_IND), phi.godel_number(), name_code(var)])
            }
            Axiom::Ect0 { phi, psi, x, y } => pack(&[
                n(TAG_ECT0),
                phi.godel_number(),
                psi.godel_number(),
                name_code(x),
                name_code(y),
            ]),
            Axiom::Extra(i) => pack(&[n(TAG_EXTRA), n(*i as u64)]),
        }
    }

    /// The axiom an index describes, if it is well formed.
    pub fn decode(index: &BigUint) -> Option<Axiom> {
        let parts = unpack(index)?;
        let (tag, rest) = parts.split_first()?;
        let name = |n: &BigUint| name_decode(n).ok().filter(|s| !s.is_empty());
        let formula = |n: &BigUint| godel_decode(n).ok();
        let a = match (small(tag)?, rest) {
            (TAG_Q, [i]) => Axiom::Q(u8::try_from(small(i)?).ok()?),
            (TAG_REFL, []) => Axiom::EqRefl,
            (TAG_SUBST, [phi, var]) => Axiom::EqSubst {
                phi: formula(phi)?,
                var: name(var)?,
            },
            (TAG_PR, [f, clause]) => Axiom::Pr {
                name: name(f)?,
                clause: u8::try_from(small(clause)?).ok()?,
            },
            (TAG_IND, [phi, var]) => Axiom::Induction {
                phi: formula(phi)?,
                var: name(var)?,
            },
            (TAG_ECT0, [phi, psi, x, y]) => Axiom::Ect0 {
                phi: formula(phi)?,
                psi: formula(psi)?,
                x: name(x)?,
                y: name(y)?,
            },
            (TAG_EXTRA, [i]) => Axiom::Extra(usize::try_from(small(i)?).ok()?),
            _ => return None,
        };
        (a.index() == *index).then_some(a)
    }

    /// Read an annotation such as `Q2`, `eq-refl`, `pr add 1`, `ind`,
    /// `ect0`, `eq-subst`, `extra 0` or a decimal index. Schema instances
    /// take their data from `phi`.
    pub fn from_annotation(text: &str, phi: &Formula) -> Result<Axiom, String> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let bad = || format!("cannot read axiom annotation `{text}`");
        let a = match words.as_slice() {
            [w] if w.bytes().all(|b| b.is_ascii_digit()) => {
                let n: BigUint = w.parse().map_err(|_| bad())?;
                return Axiom::decode(&n).ok_or_else(|| format!("`{w}` is not an axiom index"));
            }
            [q] if q.starts_with('Q') => Axiom::Q(q[1..].parse().map_err(|_| bad())?),
            ["eq-refl"] => Axiom::EqRefl,
            ["eq-subst"] => {
                decompose_subst(phi, None).ok_or("not an equality substitution instance")?
            }
            ["eq-subst", z] => {
                decompose_subst(phi, Some(z)).ok_or("not an equality substitution instance")?
            }
            ["pr", f, c] => Axiom::Pr {
                name: f.to_string(),
                clause: c.parse().map_err(|_| bad())?,
            },
            ["ind"] => decompose_induction(phi).ok_or("not an induction instance")?,
            ["ect0"] => decompose_ect0(phi).ok_or("not an ECT0 instance")?,
            ["extra", i] => Axiom::Extra(i.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(a)
    }
}

/// The annotation form accepted by [`Axiom::from_annotation`].
impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Q(i) => write!(f, "Q{i}"),
            Axiom::EqRefl => write!(f, "eq-refl"),
            Axiom::EqSubst { var, .. } => write!(f, "eq-subst {var}"),
            Axiom::Pr { name, clause } => write!(f, "pr {name} {clause}"),
            Axiom::Induction { .. } => write!(f, "ind"),
            Axiom::Ect0 { .. } => write!(f, "ect0"),
            Axiom::Extra(i) => write!(f, "extra {i}"),
        }
    }
}

fn strip_foralls(mut f: &Formula) -> &Formula {
    while let Formula::Forall(_, body) = f {
        f = body;
    }
    f
}

fn decompose_induction(phi: &Formula) -> Option<Axiom> {
    // peel the closure one binder at a time: the induction variable's own
    // ∀x φ sits in the consequent
    let mut f = phi;
    loop {
        if let Formula::Implies(_, concl) = f {
            if let Formula::Forall(x, body) = &**concl {
                let a = Axiom::Induction {
                    phi: (**body).clone(),
                    var: x.clone(),
                };
                if instantiate_induction(body, x) == *phi {
                    return Some(a);
                }
            }
        }
        match f {
            Formula::Forall(_, body) => f = body,
            _ => return None,
        }
    }
}

fn decompose_ect0(phi: &Formula) -> Option<Axiom> {
    let mut f = phi;
    loop {
        if let Formula::Implies(hyp, _) = f {
            if let Formula::Forall(x, body) = &**hyp {
                if let Formula::Implies(a, b) = &**body {
                    if let Formula::Exists(y, psi) = &**b {
                        let ax = Axiom::Ect0 {
                            phi: (**a).clone(),
                            psi: (**psi).clone(),
                            x: x.clone(),
                            y: y.clone(),
                        };
                        if instantiate_ect0(a, psi, x, y).ok().as_ref() == Some(phi) {
                            return Some(ax);
                        }
                    }
                }
            }
        }
        match f {
            Formula::Forall(_, body) => f = body,
            _ => return None,
        }
    }
}

fn decompose_subst(phi: &Formula, var: Option<&str>) -> Option<Axiom> {
    let Formula::Implies(eq, rest) = strip_foralls(phi) else {
        return None;
    };
    let (Formula::Eq(Term::Var(a), Term::Var(_)), Formula::Implies(before, _)) = (&**eq, &**rest)
    else {
        return None;
    };
    let z = match var {
        Some(z) => z.to_string(),
        None => fresh_name("z", &phi.all_vars()),
    };
    let body = before.substitute(a, &Term::var(&z));
    let ax = Axiom::EqSubst { phi: body, var: z };
    (eq_subst_instance(&ax)? == *phi).then_some(ax)
}

fn eq_subst_instance(a: &Axiom) -> Option<Formula> {
    let Axiom::EqSubst { phi, var } = a else {
        return None;
    };
    let mut avoid = phi.all_vars();
    avoid.insert(var.clone());
    let x = fresh_name("a", &avoid);
    avoid.insert(x.clone());
    let y = fresh_name("b", &avoid);
    let (tx, ty) = (Term::var(&x), Term::var(&y));
    Some(forall_closure(Formula::implies(
        Formula::eq(tx.clone(), ty.clone()),
        Formula::implies(phi.substitute(var, &tx), phi.substitute(var, &ty)),
    )))
}

/// Decides membership in the axiom set of a theory.
#[derive(Clone, Debug)]
pub struct AxiomRecognizer {
    theory: Theory,
    sig: Signature,
    extra: Vec<Formula>,
}

impl AxiomRecognizer {
    /// The recognizer over the arithmetic signature.
    pub fn new(theory: Theory) -> Self {
        Self::with_signature(theory, Signature::arithmetic())
    }

    /// A signature with further primitive recursive definitions brings
    /// their defining equations along.
    pub fn with_signature(theory: Theory, sig: Signature) -> Self {
        AxiomRecognizer {
            theory,
            sig,
            extra: Vec::new(),
        }
    }

    /// Only the listed axioms, plus the equality axioms.
    pub fn custom(extra: Vec<Formula>) -> Self {
        Self::new(Theory::Custom).with_extra(extra)
    }

    /// Add axioms on top of the theory's own.
    pub fn with_extra(mut self, extra: Vec<Formula>) -> Self {
        self.extra.extend(extra);
        self
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn extra(&self) -> &[Formula] {
        &self.extra
    }

    /// Whether the theory contains the axiom's schema.
    pub fn admits(&self, a: &Axiom) -> bool {
        use Theory::*;
        match a {
            Axiom::EqRefl | Axiom::EqSubst { .. } => true,
            Axiom::Extra(i) => *i < self.extra.len(),
            Axiom::Q(i) => self.theory != Custom && (1..=7).contains(i),
            Axiom::Pr { .. } => matches!(self.theory, IPra | Ha | HaEct0),
            Axiom::Induction { phi, .. } => match self.theory {
                IPra => phi.is_atomic(),
                Ha | HaEct0 => true,
                Q | Custom => false,
            },
            Axiom::Ect0 { .. } => self.theory == HaEct0,
        }
    }

    /// The formula an admitted axiom stands for.
    pub fn instance(&self, a: &Axiom) -> Option<Formula> {
        if !self.admits(a) {
            return None;
        }
        match a {
            Axiom::Q(i) => q_axiom(*i),
            Axiom::EqRefl => Some(parse_formula("forall x. x = x").expect("parses")),
            Axiom::EqSubst { .. } => eq_subst_instance(a),
            Axiom::Pr { name, clause } => pr_axiom(&self.sig, name, *clause),
            Axiom::Induction { phi, var } => Some(instantiate_induction(phi, var)),
            Axiom::Ect0 { phi, psi, x, y } => instantiate_ect0(phi, psi, x, y).ok(),
            Axiom::Extra(i) => self.extra.get(*i).cloned(),
        }
    }

    /// `Axiom(index, ⌜phi⌝)`.
    pub fn check(&self, index: &BigUint, phi: &Formula) -> bool {
        Axiom::decode(index)
            .and_then(|a| self.instance(&a))
            .is_some_and(|f| f == *phi)
    }

    /// An axiom of the theory whose instance is exactly `phi`.
    pub fn recognize(&self, phi: &Formula) -> Option<Axiom> {
        let mut candidates: Vec<Axiom> = (1..=7).map(Axiom::Q).collect();
        candidates.push(Axiom::EqRefl);
        for d in self.sig.pr_definitions() {
            for clause in 0..2 {
                candidates.push(Axiom::Pr {
                    name: d.name.clone(),
                    clause,
                });
            }
        }
        candidates.extend((0..self.extra.len()).map(Axiom::Extra));
        candidates.extend(decompose_induction(phi));
        candidates.extend(decompose_ect0(phi));
        candidates.extend(decompose_subst(phi, None));
        candidates
            .into_iter()
            .find(|a| self.instance(a).as_ref() == Some(phi))
    }

    pub fn require(&self, a: &Axiom) -> Result<Formula, ProofError> {
        self.instance(a).ok_or_else(|| {
            ProofError::NotAnAxiom(format!("{a} is not an axiom of {}", self.theory))
        })
    }
}

/// `Axiom(index, ⌜phi⌝)` for the recognizer's theory.
pub fn axiom_check(rec: &AxiomRecognizer, index: &BigUint, phi: &Formula) -> bool {
    rec.check(index, phi)
}

fn arg_vars(n: usize) -> Vec<Term> {
    (0..n).map(|i| Term::var(format!("x{i}"))).collect()
}

fn close(vars: &[Term], body: Formula) -> Formula {
    vars.iter().rev().fold(body, |acc, v| match v {
        Term::Var(name) => Formula::forall(name.clone(), acc),
        _ => unreachable!(),
    })
}

/// Defining equation `clause` of the definition of `name`: one equation per
/// definition, two (base then step) for recursion. Variables are `x0`,
/// `x1`, ... with `x0` outermost.
pub fn pr_axiom(sig: &Signature, name: &str, clause: u8) -> Option<Formula> {
    let d = sig.pr_definition(name)?;
    let xs = arg_vars(d.arity);
    let lhs = Term::app(name, xs.clone());
    let app = |g: &str, args: Vec<Term>| Term::app(g, args);
    let eq = match (&d.body, clause) {
        (PrBody::Zero, 0) => Formula::eq(lhs, Term::zero()),
        (PrBody::Successor, 0) => Formula::eq(lhs, Term::succ(xs[0].clone())),
        (PrBody::Projection(i), 0) => Formula::eq(lhs, xs[*i].clone()),
        (PrBody::Composition { outer, inners }, 0) => Formula::eq(
            lhs,
            app(outer, inners.iter().map(|g| app(g, xs.clone())).collect()),
        ),
        (PrBody::Recursion { base, .. }, 0) => {
            let mut args = xs.clone();
            args[0] = Term::zero();
            let rest = xs[1..].to_vec();
            return Some(close(
                &rest,
                Formula::eq(Term::app(name, args), app(base, rest.clone())),
            ));
        }
        (PrBody::Recursion { step, .. }, 1) => {
            let mut args = xs.clone();
            args[0] = Term::succ(xs[0].clone());
            let mut step_args = vec![xs[0].clone(), lhs.clone()];
            step_args.extend(xs[1..].iter().cloned());
            Formula::eq(Term::app(name, args), app(step, step_args))
        }
        _ => return None,
    };
    Some(close(&xs, eq))
}
