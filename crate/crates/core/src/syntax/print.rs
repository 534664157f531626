use std::fmt::{self, Write};

use super::{Formula, Term, ADD, MUL, ZERO};

const SUM: u8 = 1;
const PRODUCT: u8 = 2;

pub(crate) fn write_term(out: &mut impl Write, t: &Term, min: u8) -> fmt::Result {
    match t {
        Term::Var(v) => out.write_str(v),
        Term::App(f, args) if f == ZERO && args.is_empty() => out.write_str("0"),
        Term::App(f, args) if (f == ADD || f == MUL) && args.len() == 2 => {
            let prec = if f == ADD { SUM } else { PRODUCT };
            if prec < min {
                out.write_char('(')?;
            }
            write_term(out, &args[0], prec)?;
            write!(out, " {f} ")?;
            write_term(out, &args[1], prec + 1)?;
            if prec < min {
                out.write_char(')')?;
            }
            Ok(())
        }
        Term::App(f, args) => {
            write!(out, "{f}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_term(out, a, 0)?;
            }
            out.write_char(')')
        }
    }
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// `rightmost` is true when nothing follows the subformula before the
/// enclosing parenthesis closes; a quantifier elsewhere would swallow the
/// rest of the line and gets parentheses.
pub(crate) fn write_formula(
    out: &mut impl Write,
    f: &Formula,
    min: u8,
    rightmost: bool,
) -> fmt::Result {
    match f {
        Formula::Top => out.write_str("true"),
        Formula::Bottom => out.write_str("false"),
        Formula::Eq(a, b) => {
            write_term(out, a, 0)?;
            out.write_str(" = ")?;
            write_term(out, b, 0)
        }
        Formula::Pred(p, args) if args.is_empty() => out.write_str(p),
        Formula::Pred(p, args) => {
            write!(out, "{p}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_term(out, a, 0)?;
            }
            out.write_char(')')
        }
        Formula::Not(a) => {
            out.write_char('~')?;
            write_formula(out, a, UNARY, rightmost)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let kw = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            if !rightmost {
                out.write_char('(')?;
            }
            write!(out, "{kw} {v}. ")?;
            write_formula(out, body, 0, true)?;
            if !rightmost {
                out.write_char(')')?;
            }
            Ok(())
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            let (prec, op, lmin, rmin) = match f {
                Formula::And(..) => (AND, "/\\", AND, UNARY),
                Formula::Or(..) => (OR, "\\/", OR, AND),
                _ => (IMP, "->", OR, IMP),
            };
            let paren = prec < min;
            let rightmost = rightmost || paren;
            if paren {
                out.write_char('(')?;
            }
            write_formula(out, a, lmin, false)?;
            write!(out, " {op} ")?;
            write_formula(out, b, rmin, rightmost)?;
            if paren {
                out.write_char(')')?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_formula, print_formula, Formula, Term};

    #[test]
    fn prints_in_the_grammar() {
        let f = parse_formula("forall x. exists y. y = S(x)").unwrap();
        assert_eq!(print_formula(&f), "forall x. exists y. y = S(x)");
        let g = parse_formula("~(p \\/ q) -> r").unwrap();
        assert_eq!(print_formula(&g), "~(p \\/ q) -> r");
    }

    #[test]
    fn quantifier_in_left_operand_is_parenthesised() {
        let f = Formula::implies(
            Formula::and(Formula::prop("a"), Formula::forall("x", Formula::prop("b"))),
            Formula::prop("c"),
        );
        let s = print_formula(&f);
        assert_eq!(s, "a /\\ (forall x. b) -> c");
        assert_eq!(parse_formula(&s).unwrap(), f);
    }

    #[test]
    fn term_associativity() {
        let t = Term::add(Term::var("a"), Term::add(Term::var("b"), Term::var("c")));
        assert_eq!(t.to_string(), "a + (b + c)");
        let u = Term::mul(Term::add(Term::var("a"), Term::var("b")), Term::var("c"));
        assert_eq!(u.to_string(), "(a + b) * c");
        assert_eq!(Term::constant("c").to_string(), "c()");
    }
}
