//! Recursive-descent parser for the concrete formula grammar.
//!
//! ```text
//! formula := quant | imp
//! imp     := disj ('->' imp)?
//! disj    := conj ('\/' conj)*
//! conj    := unary ('/\' unary)*
//! unary   := '~' unary | quant | atom | '(' formula ')'
//! quant   := ('forall' | 'exists') ident '.' formula
//! atom    := 'true' | 'false' | term '=' term | ident ('(' terms ')')?
//! term    := prod ('+' prod)*
//! prod    := prim ('*' prim)*
//! prim    := digits | ident ('(' terms ')')? | '(' term ')'
//! ```
//!
//! A bare identifier is a variable in term position and a nullary predicate
//! in formula position. Decimal literals desugar to iterated `S`.

use std::collections::HashMap;

use super::{Formula, Signature, SyntaxError, Term, ADD, MUL, SUCC, ZERO};

/// Largest decimal literal accepted; numerals are unary terms.
pub const MAX_LITERAL: u64 = 100_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("syntax error at {line}:{column} (offset {offset}): {message}")]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Plus,
    Star,
    Tilde,
    And,
    Or,
    Arrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "true", "false"];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexed, (usize, String)> {
    let mut toks = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let next = bytes.get(i + 1).map(|&(_, c)| c);
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '=' => (Tok::Eq, 1),
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '~' => (Tok::Tilde, 1),
            '/' if next == Some('\\') => (Tok::And, 2),
            '\\' if next == Some('/') => (Tok::Or, 2),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].1.is_ascii_digit() {
                    j += 1;
                }
                let text: String = bytes[i..j].iter().map(|&(_, c)| c).collect();
                (Tok::Num(text), j - i)
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < bytes.len() && is_ident_char(bytes[j].1) {
                    j += 1;
                }
                let text: String = bytes[i..j].iter().map(|&(_, c)| c).collect();
                (Tok::Ident(text), j - i)
            }
            other => return Err((pos, format!("unexpected character `{other}`"))),
        };
        toks.push((tok, pos));
        i += width;
    }
    toks.push((Tok::End, src.len()));
    Ok(Lexed { toks })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Function,
    Predicate,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    symbols: HashMap<String, (Kind, usize)>,
    sig: Option<&'a Signature>,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn error_at(&self, offset: usize, message: impl Into<String>) -> SyntaxError {
        let before = &self.src[..offset.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SyntaxError::Parse(ParseError {
            offset,
            line,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error_at(
                self.offset(),
                format!(
                    "expected {}, found {}",
                    want.describe(),
                    self.peek().describe()
                ),
            ))
        }
    }

    fn record(&mut self, name: &str, kind: Kind, arity: usize, at: usize) -> PResult<()> {
        let declared = match self.sig {
            Some(sig) => match kind {
                Kind::Function => sig.function_arity(name),
                Kind::Predicate => sig.predicate_arity(name),
            },
            None => match (kind, name) {
                (Kind::Function, n) if n == ZERO => Some(0),
                (Kind::Function, n) if n == SUCC => Some(1),
                (Kind::Function, n) if n == ADD || n == MUL => Some(2),
                _ => None,
            },
        };
        if let Some(expected) = declared {
            if expected != arity {
                return Err(self.error_at(
                    at,
                    format!(
                        "arity mismatch: `{name}` expects {expected} argument(s), found {arity}"
                    ),
                ));
            }
        } else if self.sig.is_some() {
            return Err(self.error_at(at, format!("unknown symbol `{name}`")));
        }
        match self.symbols.get(name) {
            Some(&(k, _)) if k != kind => Err(self.error_at(
                at,
                format!("`{name}` is used both as a function and as a predicate"),
            )),
            Some(&(_, a)) if a != arity => Err(self.error_at(
                at,
                format!("arity mismatch: `{name}` used with {a} and {arity} argument(s)"),
            )),
            _ => {
                self.symbols.insert(name.to_string(), (kind, arity));
                Ok(())
            }
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.implication()
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let at = self.offset();
                let var = match self.bump() {
                    Tok::Ident(v) if !KEYWORDS.contains(&v.as_str()) => v,
                    other => {
                        return Err(self.error_at(
                            at,
                            format!(
                                "expected a variable after `{kw}`, found {}",
                                other.describe()
                            ),
                        ))
                    }
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if kw == "forall" {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let start = self.pos;
        let saved = self.symbols.clone();
        // an equation is tried first; on failure we rewind and read a
        // parenthesised formula or a predicate atom instead
        let term_err = match self.term() {
            Ok(lhs) if *self.peek() == Tok::Eq => {
                self.bump();
                let rhs = self.term()?;
                return Ok(Formula::Eq(lhs, rhs));
            }
            Ok(_) => None,
            Err(e) => Some(e),
        };
        self.pos = start;
        self.symbols = saved;
        self.predicate_or_group().map_err(|e| match (term_err, &e) {
            // a misused function symbol says more than "not a predicate"
            (Some(SyntaxError::Parse(t)), SyntaxError::Parse(p))
                if t.offset > p.offset
                    || (t.offset == p.offset && !p.message.starts_with("expected")) =>
            {
                SyntaxError::Parse(t)
            }
            _ => e,
        })
    }

    fn predicate_or_group(&mut self) -> PResult<Formula> {
        let at = self.offset();
        match self.bump() {
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(k) if k == "true" => Ok(Formula::Top),
            Tok::Ident(k) if k == "false" => Ok(Formula::Bottom),
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                if name == SUCC {
                    return Err(self.error_at(at, "`S` is a function symbol, not a predicate"));
                }
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.arguments()?
                } else {
                    Vec::new()
                };
                self.record(&name, Kind::Predicate, args.len(), at)?;
                Ok(Formula::Pred(name, args))
            }
            other => Err(self.error_at(
                at,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }

    fn arguments(&mut self) -> PResult<Vec<Term>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(args),
                other => {
                    let at = self.toks[self.pos.saturating_sub(1)].1;
                    return Err(self.error_at(
                        at,
                        format!("expected `,` or `)`, found {}", other.describe()),
                    ));
                }
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Plus {
            let at = self.offset();
            self.bump();
            let rhs = self.product()?;
            self.record(ADD, Kind::Function, 2, at)?;
            lhs = Term::add(lhs, rhs);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut lhs = self.primary()?;
        while *self.peek() == Tok::Star {
            let at = self.offset();
            self.bump();
            let rhs = self.primary()?;
            self.record(MUL, Kind::Function, 2, at)?;
            lhs = Term::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> PResult<Term> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(digits) => {
                let n: u64 = digits
                    .parse()
                    .ok()
                    .filter(|&n| n <= MAX_LITERAL)
                    .ok_or_else(|| self.error_at(at, format!("numeral `{digits}` is too large")))?;
                if n == 0 {
                    self.record(ZERO, Kind::Function, 0, at)?;
                } else {
                    self.record(ZERO, Kind::Function, 0, at)?;
                    self.record(SUCC, Kind::Function, 1, at)?;
                }
                Ok(Term::numeral(n))
            }
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let args = self.arguments()?;
                    self.record(&name, Kind::Function, args.len(), at)?;
                    Ok(Term::App(name, args))
                } else {
                    Ok(Term::Var(name))
                }
            }
            other => Err(self.error_at(at, format!("expected a term, found {}", other.describe()))),
        }
    }
}

fn parser<'a>(text: &'a str, sig: Option<&'a Signature>) -> PResult<Parser<'a>> {
    let lexed = lex(text).map_err(|(offset, message)| {
        let before = &text[..offset];
        SyntaxError::Parse(ParseError {
            offset,
            line: before.matches('\n').count() + 1,
            column: before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1,
            message,
        })
    })?;
    Ok(Parser {
        src: text,
        toks: lexed.toks,
        pos: 0,
        symbols: HashMap::new(),
        sig,
    })
}

fn finish<T>(p: &mut Parser<'_>, value: T) -> PResult<T> {
    if *p.peek() != Tok::End {
        return Err(p.error_at(
            p.offset(),
            format!(
                "unexpected {} after the end of the formula",
                p.peek().describe()
            ),
        ));
    }
    Ok(value)
}

/// Parse a formula, checking only that each symbol is used with a single
/// arity and that the arithmetic core symbols have their usual arities.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = parser(text, None)?;
    let f = p.formula()?;
    finish(&mut p, f)
}

/// Parse a formula against a signature: every symbol must be declared with
/// the arity it is used at.
pub fn parse_formula_with(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let mut p = parser(text, Some(sig))?;
    let f = p.formula()?;
    finish(&mut p, f)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = parser(text, None)?;
    let t = p.term()?;
    finish(&mut p, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn identity_atom() {
        assert_eq!(
            parse_formula("0 = 0").unwrap(),
            Formula::Eq(Term::zero(), Term::zero())
        );
    }

    #[test]
    fn quantifiers_extend_right() {
        let f = parse_formula("forall x. exists y. y = S(x)").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Formula::exists("y", Formula::eq(v("y"), Term::succ(v("x"))))
            )
        );
        let g = parse_formula("p /\\ forall x. q -> r").unwrap();
        assert_eq!(
            g,
            Formula::and(
                Formula::prop("p"),
                Formula::forall(
                    "x",
                    Formula::implies(Formula::prop("q"), Formula::prop("r"))
                )
            )
        );
    }

    #[test]
    fn precedence_table() {
        // ~ binds tighter than \/, which binds tighter than ->
        let f = parse_formula("~(p \\/ q) -> r").unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::not(Formula::or(Formula::prop("p"), Formula::prop("q"))),
                Formula::prop("r")
            )
        );
        let g = parse_formula("p /\\ q \\/ r /\\ s -> t -> u").unwrap();
        let pq = Formula::and(Formula::prop("p"), Formula::prop("q"));
        let rs = Formula::and(Formula::prop("r"), Formula::prop("s"));
        assert_eq!(
            g,
            Formula::implies(
                Formula::or(pq, rs),
                Formula::implies(Formula::prop("t"), Formula::prop("u"))
            )
        );
    }

    #[test]
    fn literals_desugar() {
        assert_eq!(parse_term("3").unwrap(), Term::numeral(3));
        assert_eq!(
            parse_term("1 + 2 * x").unwrap(),
            Term::add(Term::numeral(1), Term::mul(Term::numeral(2), v("x")))
        );
    }

    #[test]
    fn parenthesised_terms_and_formulas() {
        assert_eq!(
            parse_formula("(x + y) = z").unwrap(),
            Formula::eq(Term::add(v("x"), v("y")), v("z"))
        );
        assert_eq!(
            parse_formula("(x + y = z)").unwrap(),
            Formula::eq(Term::add(v("x"), v("y")), v("z"))
        );
        assert_eq!(parse_formula("((p))").unwrap(), Formula::prop("p"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_formula("forall . x = x").unwrap_err();
        match err {
            SyntaxError::Parse(e) => assert_eq!(e.offset, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("p /\\").is_err());
        assert!(parse_formula("x = y )").is_err());
        assert!(parse_formula("x # y").is_err());
    }

    #[test]
    fn arity_mismatch() {
        assert!(parse_formula("f(x) = f(x, y)").is_err());
        assert!(parse_formula("S(x, y) = 0").is_err());
        assert!(parse_formula("P(x) /\\ P").is_err());
    }

    #[test]
    fn signature_checks() {
        let sig = Signature::arithmetic();
        assert!(parse_formula_with("x + 0 = x", &sig).is_ok());
        let err = parse_formula_with("f(x) = 0", &sig).unwrap_err();
        assert!(err.to_string().contains("unknown symbol"), "{err}");
        let err = parse_formula_with("sg(x, y) = 0", &sig).unwrap_err();
        assert!(err.to_string().contains("arity mismatch"), "{err}");
    }
}
