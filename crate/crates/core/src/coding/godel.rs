//! Gödel numbers of terms and formulas.
//!
//! Every node is coded as `pack([tag, child, ...])`, with names coded by
//! [`name_code`]. The tags:
//!
//! | tag | node | entries after the tag |
//! |----:|------|-----------------------|
//! | 1 | variable | name |
//! | 2 | `0` | |
//! | 3 | `S(t)` | t |
//! | 4 | `t + s` | t, s |
//! | 5 | `t * s` | t, s |
//! | 6 | `f(t, ...)` | name, t, ... |
//! | 10 | `true` | |
//! | 11 | `false` | |
//! | 12 | `t = s` | t, s |
//! | 13 | `P(t, ...)` | name, t, ... |
//! | 14 | `A /\ B` | A, B |
//! | 15 | `A \/ B` | A, B |
//! | 16 | `A -> B` | A, B |
//! | 17 | `~A` | A |
//! | 18 | `forall x. A` | name, A |
//! | 19 | `exists x. A` | name, A |

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{pack, unpack, CodingError};
use crate::syntax::{Formula, Term, ADD, MUL, SUCC, ZERO};

const VAR: u64 = 1;
const ZERO_TAG: u64 = 2;
const SUCC_TAG: u64 = 3;
const ADD_TAG: u64 = 4;
const MUL_TAG: u64 = 5;
const APP: u64 = 6;
const TOP: u64 = 10;
const BOT: u64 = 11;
const EQ: u64 = 12;
const PRED: u64 = 13;
const AND: u64 = 14;
const OR: u64 = 15;
const IMP: u64 = 16;
const NOT: u64 = 17;
const ALL: u64 = 18;
const EX: u64 = 19;

/// `(tag, node, entries after the tag)` for every syntax tag.
pub fn tag_table() -> &'static [(u64, &'static str, &'static str)] {
    &[
        (VAR, "variable", "name"),
        (ZERO_TAG, "0", ""),
        (SUCC_TAG, "S(t)", "t"),
        (ADD_TAG, "t + s", "t s"),
        (MUL_TAG, "t * s", "t s"),
        (APP, "f(t, ...)", "name t ..."),
        (TOP, "true", ""),
        (BOT, "false", ""),
        (EQ, "t = s", "t s"),
        (PRED, "P(t, ...)", "name t ..."),
        (AND, "A /\\ B", "A B"),
        (OR, "A \\/ B", "A B"),
        (IMP, "A -> B", "A B"),
        (NOT, "~A", "A"),
        (ALL, "forall x. A", "name A"),
        (EX, "exists x. A", "name A"),
    ]
}

/// The tag table as aligned text.
pub fn tag_table_text() -> String {
    let mut out = String::from("tag  node          entries\n");
    for (tag, node, entries) in tag_table() {
        out.push_str(&format!("{tag:<4} {node:<13} {entries}\n"));
    }
    out.push_str("code(node) = pack([tag, entries...]); name = UTF-8 bytes read big-endian\n");
    out
}

/// A name read as a big-endian number from its UTF-8 bytes.
pub fn name_code(name: &str) -> BigUint {
    BigUint::from_bytes_be(name.as_bytes())
}

pub fn name_decode(n: &BigUint) -> Result<String, CodingError> {
    if n.is_zero() {
        return Err(CodingError::Invalid("empty name".into()));
    }
    String::from_utf8(n.to_bytes_be()).map_err(|_| CodingError::Invalid(format!("name code {n}")))
}

pub trait Godel {
    fn godel_number(&self) -> BigUint;
}

fn node(tag: u64, rest: impl IntoIterator<Item = BigUint>) -> BigUint {
    let mut v = vec![BigUint::from(tag)];
    v.extend(rest);
    pack(&v)
}

impl Godel for Term {
    fn godel_number(&self) -> BigUint {
        match self {
            Term::Var(v) => node(VAR, [name_code(v)]),
            Term::App(f, args) => {
                let fixed = match (f.as_str(), args.len()) {
                    (n, 0) if n == ZERO => Some(ZERO_TAG),
                    (n, 1) if n == SUCC => Some(SUCC_TAG),
                    (n, 2) if n == ADD => Some(ADD_TAG),
                    (n, 2) if n == MUL => Some(MUL_TAG),
                    _ => None,
                };
                let kids = args.iter().map(Godel::godel_number);
                match fixed {
                    Some(tag) => node(tag, kids),
                    None => node(APP, std::iter::once(name_code(f)).chain(kids)),
                }
            }
        }
    }
}

impl Godel for Formula {
    fn godel_number(&self) -> BigUint {
        match self {
            Formula::Top => node(TOP, []),
            Formula::Bottom => node(BOT, []),
            Formula::Eq(a, b) => node(EQ, [a.godel_number(), b.godel_number()]),
            Formula::Pred(p, args) => node(
                PRED,
                std::iter::once(name_code(p)).chain(args.iter().map(Godel::godel_number)),
            ),
            Formula::And(a, b) => node(AND, [a.godel_number(), b.godel_number()]),
            Formula::Or(a, b) => node(OR, [a.godel_number(), b.godel_number()]),
            Formula::Implies(a, b) => node(IMP, [a.godel_number(), b.godel_number()]),
            Formula::Not(a) => node(NOT, [a.godel_number()]),
            Formula::Forall(v, a) => node(ALL, [name_code(v), a.godel_number()]),
            Formula::Exists(v, a) => node(EX, [name_code(v), a.godel_number()]),
        }
    }
}

fn split(n: &BigUint) -> Result<(u64, Vec<BigUint>), CodingError> {
    let mut parts =
        unpack(n).ok_or_else(|| CodingError::Invalid(format!("{n} is not a sequence code")))?;
    if parts.is_empty() {
        return Err(CodingError::Invalid("empty node".into()));
    }
    let tag = parts.remove(0);
    let tag = tag
        .to_u64()
        .ok_or_else(|| CodingError::Invalid(format!("tag {tag}")))?;
    Ok((tag, parts))
}

fn arity(tag: u64, parts: &[BigUint], expected: usize) -> Result<(), CodingError> {
    if parts.len() == expected {
        Ok(())
    } else {
        Err(CodingError::Invalid(format!(
            "tag {tag} takes {expected} entries, found {}",
            parts.len()
        )))
    }
}

pub fn godel_decode_term(n: &BigUint) -> Result<Term, CodingError> {
    let (tag, parts) = split(n)?;
    let terms = |xs: &[BigUint]| {
        xs.iter()
            .map(godel_decode_term)
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(match tag {
        VAR => {
            arity(tag, &parts, 1)?;
            Term::Var(name_decode(&parts[0])?)
        }
        ZERO_TAG => {
            arity(tag, &parts, 0)?;
            Term::zero()
        }
        SUCC_TAG => {
            arity(tag, &parts, 1)?;
            Term::App(SUCC.into(), terms(&parts)?)
        }
        ADD_TAG | MUL_TAG => {
            arity(tag, &parts, 2)?;
            let f = if tag == ADD_TAG { ADD } else { MUL };
            Term::App(f.into(), terms(&parts)?)
        }
        APP => {
            if parts.is_empty() {
                return Err(CodingError::Invalid("application without a name".into()));
            }
            let f = name_decode(&parts[0])?;
            let args = terms(&parts[1..])?;
            let canonical = matches!(
                (f.as_str(), args.len()),
                (ZERO, 0) | (SUCC, 1) | (ADD, 2) | (MUL, 2)
            );
            if canonical {
                return Err(CodingError::Invalid(format!("`{f}` must use its own tag")));
            }
            Term::App(f, args)
        }
        _ => return Err(CodingError::Invalid(format!("unknown term tag {tag}"))),
    })
}

/// The formula coded by `n`; rejects anything [`Godel::godel_number`] does
/// not produce.
pub fn godel_decode(n: &BigUint) -> Result<Formula, CodingError> {
    let (tag, parts) = split(n)?;
    let pair = |parts: &[BigUint]| -> Result<(Formula, Formula), CodingError> {
        arity(tag, parts, 2)?;
        Ok((godel_decode(&parts[0])?, godel_decode(&parts[1])?))
    };
    Ok(match tag {
        TOP | BOT => {
            arity(tag, &parts, 0)?;
            if tag == TOP {
                Formula::Top
            } else {
                Formula::Bottom
            }
        }
        EQ => {
            arity(tag, &parts, 2)?;
            Formula::eq(godel_decode_term(&parts[0])?, godel_decode_term(&parts[1])?)
        }
        PRED => {
            if parts.is_empty() {
                return Err(CodingError::Invalid("predicate without a name".into()));
            }
            Formula::Pred(
                name_decode(&parts[0])?,
                parts[1..]
                    .iter()
                    .map(godel_decode_term)
                    .collect::<Result<_, _>>()?,
            )
        }
        AND => {
            let (a, b) = pair(&parts)?;
            Formula::and(a, b)
        }
        OR => {
            let (a, b) = pair(&parts)?;
            Formula::or(a, b)
        }
        IMP => {
            let (a, b) = pair(&parts)?;
            Formula::implies(a, b)
        }
        NOT => {
            arity(tag, &parts, 1)?;
            Formula::not(godel_decode(&parts[0])?)
        }
        ALL | EX => {
            arity(tag, &parts, 2)?;
            let v = name_decode(&parts[0])?;
            let body = godel_decode(&parts[1])?;
            if tag == ALL {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
        _ => return Err(CodingError::Invalid(format!("unknown formula tag {tag}"))),
    })
}

/// `⌜φ(c̄)⌝` from `⌜φ(x)⌝`: substitute the numeral for `c` and recode.
pub fn numeral_subst_code(code: &BigUint, c: u64, var: &str) -> Result<BigUint, CodingError> {
    let f = godel_decode(code)?;
    if !f.has_free(var) {
        return Err(CodingError::NotFree(var.to_string()));
    }
    Ok(f.substitute(var, &Term::numeral(c)).godel_number())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn code_of_zero_equals_zero_by_hand() {
        // pack([2]) = 1 011; pack([12, z, z]) with z = 0b1011 = 11
        // 13 = 1101 -> 000 1101, 12 = 1100 -> 000 1100 (twice)
        let expected = BigUint::parse_bytes(b"1000110100011000001100", 2).unwrap();
        assert_eq!(Term::zero().godel_number(), BigUint::from(11u32));
        assert_eq!(f("0 = 0").godel_number(), expected);
    }

    #[test]
    fn round_trips() {
        for s in [
            "0 = 0",
            "forall x. exists y. y = S(x)",
            "~(p \\/ q) -> r",
            "T(x, y, u) /\\ U(u) = j1(j(x, y)) * 3",
            "exists y'. f() = y' + g(y', 0)",
            "true /\\ false",
        ] {
            let g = f(s);
            assert_eq!(godel_decode(&g.godel_number()).unwrap(), g, "{s}");
        }
    }

    #[test]
    fn rejects_ill_formed_codes() {
        assert!(godel_decode(&BigUint::zero()).is_err());
        assert!(godel_decode(&BigUint::from(1u32)).is_err());
        // a term code is not a formula code
        assert!(godel_decode(&Term::zero().godel_number()).is_err());
        // `S` coded through the generic application tag
        let bad = node(APP, [name_code("S"), Term::zero().godel_number()]);
        assert!(godel_decode_term(&bad).is_err());
    }

    #[test]
    fn numeral_substitution() {
        let code = f("x = 0").godel_number();
        assert_eq!(
            numeral_subst_code(&code, 2, "x").unwrap(),
            f("S(S(0)) = 0").godel_number()
        );
        assert_eq!(
            numeral_subst_code(&code, 0, "x").unwrap(),
            f("0 = 0").godel_number()
        );
        assert_eq!(
            numeral_subst_code(&code, 0, "y"),
            Err(CodingError::NotFree("y".into()))
        );
    }

    #[test]
    fn tag_table_lists_every_tag() {
        let text = tag_table_text();
        for (tag, _, _) in tag_table() {
            assert!(text.lines().any(|l| l.starts_with(&tag.to_string())));
        }
    }
}
