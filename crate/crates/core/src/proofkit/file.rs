//! Text form of proofs.
//!
//! ```text
//! # modus ponens
//! 1. [axiom Q2] forall x. forall y. S(x) = S(y) -> x = y
//! 2. [allE 1] |- forall y. S(0) = S(y) -> 0 = y
//! 3. [hyp] p |- p
//! ```
//!
//! Line numbers count from 1 and must be consecutive. An axiom annotation is
//! anything [`Axiom::from_annotation`] reads. Hypotheses are separated by
//! commas outside parentheses; `⊢` may replace `|-`.

use std::fmt::Write;

use super::{Axiom, Justification, ProofError, ProofLine, ProofObject, Rule, Sequent};
use crate::syntax::{parse_formula, Formula};

fn syntax(line: usize, message: impl Into<String>) -> ProofError {
    ProofError::Syntax {
        line,
        message: message.into(),
    }
}

fn formula(line: usize, text: &str) -> Result<Formula, ProofError> {
    parse_formula(text.trim()).map_err(|e| syntax(line, e.to_string()))
}

/// Split at commas that are not nested in parentheses.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

pub fn parse_proof(text: &str) -> Result<ProofObject, ProofError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let src = raw.split('#').next().unwrap_or("").trim();
        if src.is_empty() {
            continue;
        }
        let (num, rest) = src
            .split_once('.')
            .ok_or_else(|| syntax(n, "expected `<number>. [justification] ...`"))?;
        let num: usize = num
            .trim()
            .parse()
            .map_err(|_| syntax(n, format!("bad line number `{}`", num.trim())))?;
        if num != lines.len() + 1 {
            return Err(syntax(
                n,
                format!("expected line number {}, found {num}", lines.len() + 1),
            ));
        }
        let rest = rest.trim_start();
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| syntax(n, "expected `[` after the line number"))?;
        let (just, body) = body
            .split_once(']')
            .ok_or_else(|| syntax(n, "unterminated justification"))?;
        let just = just.trim();
        if let Some(annot) = just.strip_prefix("axiom") {
            let body = body.trim();
            let body = body
                .strip_prefix("|-")
                .or_else(|| body.strip_prefix('⊢'))
                .unwrap_or(body);
            let phi = formula(n, body)?;
            let a = Axiom::from_annotation(annot.trim(), &phi).map_err(|e| syntax(n, e))?;
            lines.push(ProofLine::axiom(&a, phi));
            continue;
        }
        let (name, refs) = just.split_once(char::is_whitespace).unwrap_or((just, ""));
        let rule: Rule = name.parse().map_err(|e: String| syntax(n, e))?;
        let mut premises = Vec::new();
        for r in refs.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let j: usize = r
                .parse()
                .map_err(|_| syntax(n, format!("bad premise reference `{r}`")))?;
            if j == 0 || j > lines.len() {
                return Err(syntax(
                    n,
                    format!("premise {j} does not refer to an earlier line"),
                ));
            }
            premises.push(j - 1);
        }
        let (hyps, concl) = body
            .split_once("|-")
            .or_else(|| body.split_once('⊢'))
            .ok_or_else(|| syntax(n, "expected `Γ |- φ`"))?;
        let hypotheses = if hyps.trim().is_empty() {
            Vec::new()
        } else {
            split_top(hyps)
                .into_iter()
                .map(|h| formula(n, h))
                .collect::<Result<_, _>>()?
        };
        lines.push(ProofLine::rule(
            rule,
            premises,
            Sequent::new(hypotheses, formula(n, concl)?),
        ));
    }
    Ok(ProofObject::new(lines))
}

/// The text form read by [`parse_proof`].
pub fn print_proof(p: &ProofObject) -> String {
    let mut out = String::new();
    for (i, line) in p.lines.iter().enumerate() {
        match &line.justification {
            Justification::Axiom(index) => {
                let annot = match Axiom::decode(index) {
                    Some(a) => a.to_string(),
                    None => index.to_string(),
                };
                let _ = writeln!(
                    out,
                    "{}. [axiom {annot}] {}",
                    i + 1,
                    line.sequent.conclusion
                );
            }
            Justification::Rule(rule, premises) => {
                let refs: Vec<String> = premises.iter().map(|j| (j + 1).to_string()).collect();
                let sep = if refs.is_empty() { "" } else { " " };
                let _ = writeln!(
                    out,
                    "{}. [{rule}{sep}{}] {}",
                    i + 1,
                    refs.join(","),
                    line.sequent
                );
            }
        }
    }
    out
}
