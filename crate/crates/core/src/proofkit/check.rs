use std::fmt;

use super::{AxiomRecognizer, Justification, ProofObject, Rule, Sequent};
use crate::syntax::{Formula, Term};

/// The first line that does not check, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofFailure {
    /// 0-based line index.
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for ProofFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line + 1, self.reason)
    }
}

/// Check every line in order; the last line must have no hypotheses.
pub fn check_proof(p: &ProofObject, rec: &AxiomRecognizer) -> Result<(), ProofFailure> {
    let Some(last) = p.lines.last() else {
        return Err(ProofFailure {
            line: 0,
            reason: "empty proof".into(),
        });
    };
    for (i, line) in p.lines.iter().enumerate() {
        let fail = |reason: String| ProofFailure { line: i, reason };
        match &line.justification {
            Justification::Axiom(index) => {
                if !line.sequent.hypotheses.is_empty() {
                    return Err(fail("axiom lines have no hypotheses".into()));
                }
                if !rec.check(index, &line.sequent.conclusion) {
                    return Err(fail(format!(
                        "not an axiom of {} with this index",
                        rec.theory()
                    )));
                }
            }
            Justification::Rule(rule, premises) => {
                if premises.len() != rule.arity() {
                    return Err(fail(format!("{rule} takes {} premises", rule.arity())));
                }
                if let Some(&j) = premises.iter().find(|&&j| j >= i) {
                    return Err(fail(format!("premise {} is not an earlier line", j + 1)));
                }
                let prem: Vec<&Sequent> = premises.iter().map(|&j| &p.lines[j].sequent).collect();
                check_rule(*rule, &prem, &line.sequent).map_err(fail)?;
            }
        }
    }
    if !last.sequent.hypotheses.is_empty() {
        return Err(ProofFailure {
            line: p.lines.len() - 1,
            reason: "the last line still has open hypotheses".into(),
        });
    }
    Ok(())
}

/// Every hypothesis of `premise` is among `hyps` or is `discharged`.
fn within(premise: &Sequent, hyps: &[Formula], discharged: Option<&Formula>) -> bool {
    premise
        .hypotheses
        .iter()
        .all(|h| hyps.contains(h) || Some(h) == discharged)
}

fn free_in_any(v: &str, fs: &[Formula]) -> bool {
    fs.iter().any(|f| f.has_free(v))
}

/// The term `t` with `phi[x := t] == target`, `Some(None)` when `x` is not
/// free in `phi` and `phi == target`.
fn instance(phi: &Formula, x: &str, target: &Formula) -> Option<Option<Term>> {
    crate::syntax::subst::match_instance(phi, x, target)
}

fn check_rule(rule: Rule, prem: &[&Sequent], s: &Sequent) -> Result<(), String> {
    let c = &s.conclusion;
    let g = &s.hypotheses[..];
    let ok = |b: bool, why: &str| if b { Ok(()) } else { Err(why.to_string()) };
    let all_within = |ps: &[&Sequent]| ps.iter().all(|p| within(p, g, None));
    match rule {
        Rule::Hyp => ok(g.contains(c), "the conclusion is not a hypothesis"),
        Rule::AndI => {
            let Formula::And(a, b) = c else {
                return Err("the conclusion is not a conjunction".into());
            };
            let (x, y) = (&prem[0].conclusion, &prem[1].conclusion);
            ok(
                (x == &**a && y == &**b) || (x == &**b && y == &**a),
                "premises do not match the conjuncts",
            )?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::AndE1 | Rule::AndE2 => {
            let Formula::And(a, b) = &prem[0].conclusion else {
                return Err("the premise is not a conjunction".into());
            };
            let part = if rule == Rule::AndE1 { a } else { b };
            ok(&**part == c, "the conclusion is not that conjunct")?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::OrI1 | Rule::OrI2 => {
            let Formula::Or(a, b) = c else {
                return Err("the conclusion is not a disjunction".into());
            };
            let part = if rule == Rule::OrI1 { a } else { b };
            ok(
                **part == prem[0].conclusion,
                "the premise is not that disjunct",
            )?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::OrE => {
            for (d, p, q) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
                let Formula::Or(a, b) = &prem[d].conclusion else {
                    continue;
                };
                if prem[p].conclusion != *c || prem[q].conclusion != *c || !within(prem[d], g, None)
                {
                    continue;
                }
                let fits =
                    |x: usize, y: usize| within(prem[x], g, Some(a)) && within(prem[y], g, Some(b));
                if fits(p, q) || fits(q, p) {
                    return Ok(());
                }
            }
            Err("no premise arrangement fits disjunction elimination".into())
        }
        Rule::ImpI => {
            let Formula::Implies(a, b) = c else {
                return Err("the conclusion is not an implication".into());
            };
            ok(
                prem[0].conclusion == **b,
                "the premise does not conclude the consequent",
            )?;
            ok(
                within(prem[0], g, Some(a)),
                "premise hypotheses are not available",
            )
        }
        Rule::ImpE => {
            let fits = |x: usize, y: usize| matches!(&prem[y].conclusion, Formula::Implies(a, b) if **a == prem[x].conclusion && **b == *c);
            ok(
                fits(0, 1) || fits(1, 0),
                "premises are not φ and φ → conclusion",
            )?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::NotI => {
            let Formula::Not(a) = c else {
                return Err("the conclusion is not a negation".into());
            };
            ok(
                prem[0].conclusion == Formula::Bottom,
                "the premise does not conclude ⊥",
            )?;
            ok(
                within(prem[0], g, Some(a)),
                "premise hypotheses are not available",
            )
        }
        Rule::NotE => {
            ok(*c == Formula::Bottom, "the conclusion is not ⊥")?;
            let fits = |x: usize, y: usize| matches!(&prem[y].conclusion, Formula::Not(a) if **a == prem[x].conclusion);
            ok(fits(0, 1) || fits(1, 0), "premises are not φ and ¬φ")?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::BotE => {
            ok(
                prem[0].conclusion == Formula::Bottom,
                "the premise does not conclude ⊥",
            )?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::AllI => {
            let Formula::Forall(x, phi) = c else {
                return Err("the conclusion is not universal".into());
            };
            ok(all_within(prem), "premise hypotheses are not available")?;
            match instance(phi, x, &prem[0].conclusion) {
                Some(None) => Ok(()),
                Some(Some(Term::Var(a))) => {
                    ok(
                        !free_in_any(&a, g),
                        "the eigenvariable is free in a hypothesis",
                    )?;
                    ok(
                        !free_in_any(&a, &prem[0].hypotheses),
                        "the eigenvariable is free in a hypothesis",
                    )?;
                    ok(
                        !c.has_free(&a),
                        "the eigenvariable is free in the conclusion",
                    )
                }
                Some(Some(_)) => Err("the premise is not an instance at a variable".into()),
                None => Err("the premise is not an instance of the body".into()),
            }
        }
        Rule::AllE => {
            let Formula::Forall(x, phi) = &prem[0].conclusion else {
                return Err("the premise is not universal".into());
            };
            ok(
                instance(phi, x, c).is_some(),
                "the conclusion is not an instance",
            )?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::ExI => {
            let Formula::Exists(x, phi) = c else {
                return Err("the conclusion is not existential".into());
            };
            ok(
                instance(phi, x, &prem[0].conclusion).is_some(),
                "the premise is not an instance",
            )?;
            ok(all_within(prem), "premise hypotheses are not available")
        }
        Rule::ExE => {
            for (e, p) in [(0, 1), (1, 0)] {
                let ex = &prem[e].conclusion;
                let Formula::Exists(x, phi) = ex else {
                    continue;
                };
                if prem[p].conclusion != *c || !within(prem[e], g, None) {
                    continue;
                }
                if within(prem[p], g, None) {
                    return Ok(());
                }
                for h in &prem[p].hypotheses {
                    let eigen_ok = match instance(phi, x, h) {
                        Some(None) => true,
                        Some(Some(Term::Var(a))) => {
                            !free_in_any(&a, g)
                                && !c.has_free(&a)
                                && !ex.has_free(&a)
                                && !prem[p].hypotheses.iter().any(|o| o != h && o.has_free(&a))
                        }
                        _ => false,
                    };
                    if eigen_ok && within(prem[p], g, Some(h)) {
                        return Ok(());
                    }
                }
            }
            Err("no premise arrangement fits existential elimination".into())
        }
    }
}
