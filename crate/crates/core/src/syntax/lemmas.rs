//! Normal forms over the standard model: characteristic terms for
//! quantifier-free formulas and contraction of quantifier blocks.

use std::collections::BTreeSet;

use super::{fresh_name, Formula, SyntaxError, Term, DECODE};

fn call(f: &str, args: Vec<Term>) -> Term {
    Term::app(f, args)
}

fn one() -> Term {
    Term::numeral(1)
}

/// Characteristic term of a quantifier-free arithmetic formula.
///
/// The term takes only the values 0 and 1 and is 0 exactly where the formula
/// is classically true, so `f` is equivalent to the atom `chi = 0`, which is
/// returned alongside. The helpers `sg`, `absdiff`, `max` and `monus` come
/// from the arithmetic prelude.
pub fn qf_to_atomic(f: &Formula) -> Result<(Term, Formula), SyntaxError> {
    let chi = chi(f)?;
    let atom = Formula::eq(chi.clone(), Term::zero());
    Ok((chi, atom))
}

fn chi(f: &Formula) -> Result<Term, SyntaxError> {
    Ok(match f {
        Formula::Top => Term::zero(),
        Formula::Bottom => one(),
        Formula::Eq(t, s) => call("sg", vec![call("absdiff", vec![t.clone(), s.clone()])]),
        Formula::Pred(p, _) => return Err(SyntaxError::PredicateAtom(p.clone())),
        Formula::And(a, b) => call("max", vec![chi(a)?, chi(b)?]),
        Formula::Or(a, b) => Term::mul(chi(a)?, chi(b)?),
        Formula::Implies(a, b) => Term::mul(
            chi(b)?,
            call("sg", vec![call("monus", vec![one(), chi(a)?])]),
        ),
        Formula::Not(a) => call("monus", vec![one(), chi(a)?]),
        Formula::Forall(..) | Formula::Exists(..) => {
            return Err(SyntaxError::NotQuantifierFree(f.to_string()))
        }
    })
}

/// Replace every block `Q x0 ... x(n-1)` of two or more like quantifiers in
/// the prefix of `f` by a single `Q z` with `xi := dec(z, i)`.
///
/// Blocks of length one are kept as they are. The prefix is processed from
/// the outermost block inwards.
pub fn contract_quantifiers(f: &Formula) -> Result<Formula, SyntaxError> {
    if !matches!(f, Formula::Forall(..) | Formula::Exists(..)) {
        return Err(SyntaxError::NoQuantifierBlock(f.to_string()));
    }
    Ok(contract_prefix(f, &mut f.all_vars()))
}

fn contract_prefix(f: &Formula, avoid: &mut BTreeSet<String>) -> Formula {
    let universal = match f {
        Formula::Forall(..) => true,
        Formula::Exists(..) => false,
        _ => return f.clone(),
    };
    let mut block = Vec::new();
    let mut body = f;
    loop {
        match body {
            Formula::Forall(v, _) if universal => block.push(v.clone()),
            Formula::Exists(v, _) if !universal => block.push(v.clone()),
            _ => break,
        }
        body = match body {
            Formula::Forall(_, b) | Formula::Exists(_, b) => b,
            _ => unreachable!(),
        };
    }
    let z = (block.len() > 1).then(|| {
        let z = fresh_name("z", avoid);
        avoid.insert(z.clone());
        z
    });
    let rest = contract_prefix(body, avoid);
    let quantify = |v: String, b: Formula| {
        if universal {
            Formula::forall(v, b)
        } else {
            Formula::exists(v, b)
        }
    };
    let Some(z) = z else {
        return quantify(block.pop().unwrap(), rest);
    };
    let mut matrix = rest;
    for (i, v) in block.iter().enumerate() {
        // an earlier binder of the same name is shadowed by the later one
        if block[i + 1..].contains(v) {
            continue;
        }
        let proj = Term::app(DECODE, vec![Term::var(&z), Term::numeral(i as u64)]);
        matrix = matrix.substitute(v, &proj);
    }
    quantify(z, matrix)
}
