//! Formulas resolved against a model's language: symbols become table
//! indices, bound variables become stack positions and element constants
//! become ids.

use super::structure::{parse_elem, Elem, Language, Structure};
use super::KripkeError;
use crate::syntax::{Formula, Term};

#[derive(Clone, Debug)]
pub(crate) enum CTerm {
    Var(usize),
    Elem(Elem),
    App(usize, Vec<CTerm>),
}

#[derive(Clone, Debug)]
pub(crate) enum CForm {
    Top,
    Bot,
    Eq(CTerm, CTerm),
    Pred(usize, Vec<CTerm>),
    And(Box<CForm>, Box<CForm>),
    Or(Box<CForm>, Box<CForm>),
    Imp(Box<CForm>, Box<CForm>),
    Not(Box<CForm>),
    All(Box<CForm>),
    Ex(Box<CForm>),
}

#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub form: CForm,
    pub params: Vec<Elem>,
}

pub(crate) fn compile(lang: &Language, f: &Formula) -> Result<Compiled, KripkeError> {
    let mut params = Vec::new();
    let form = form(lang, f, &mut Vec::new(), &mut params)?;
    params.sort_unstable();
    params.dedup();
    Ok(Compiled { form, params })
}

fn form(
    lang: &Language,
    f: &Formula,
    scope: &mut Vec<String>,
    params: &mut Vec<Elem>,
) -> Result<CForm, KripkeError> {
    let bin = |a: &Formula, b: &Formula, scope: &mut Vec<String>, params: &mut Vec<Elem>| {
        Ok::<_, KripkeError>((
            Box::new(form(lang, a, scope, params)?),
            Box::new(form(lang, b, scope, params)?),
        ))
    };
    Ok(match f {
        Formula::Top => CForm::Top,
        Formula::Bottom => CForm::Bot,
        Formula::Eq(a, b) => {
            CForm::Eq(term(lang, a, scope, params)?, term(lang, b, scope, params)?)
        }
        Formula::Pred(p, args) => {
            let (i, arity) = lang
                .predicate(p)
                .ok_or_else(|| KripkeError::UnknownSymbol(p.clone()))?;
            if arity != args.len() {
                return Err(KripkeError::Arity(p.clone()));
            }
            let args = args
                .iter()
                .map(|t| term(lang, t, scope, params))
                .collect::<Result<_, _>>()?;
            CForm::Pred(i, args)
        }
        Formula::And(a, b) => {
            let (a, b) = bin(a, b, scope, params)?;
            CForm::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b, scope, params)?;
            CForm::Or(a, b)
        }
        Formula::Implies(a, b) => {
            let (a, b) = bin(a, b, scope, params)?;
            CForm::Imp(a, b)
        }
        Formula::Not(a) => CForm::Not(Box::new(form(lang, a, scope, params)?)),
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            scope.push(v.clone());
            let body = form(lang, a, scope, params);
            scope.pop();
            let body = Box::new(body?);
            if matches!(f, Formula::Forall(..)) {
                CForm::All(body)
            } else {
                CForm::Ex(body)
            }
        }
    })
}

fn term(
    lang: &Language,
    t: &Term,
    scope: &[String],
    params: &mut Vec<Elem>,
) -> Result<CTerm, KripkeError> {
    match t {
        Term::Var(v) => {
            if let Some(i) = scope.iter().rposition(|b| b == v) {
                Ok(CTerm::Var(i))
            } else {
                constant(lang, v, params)
            }
        }
        Term::App(name, args) if args.is_empty() => constant(lang, name, params),
        Term::App(name, args) => {
            let (i, arity) = lang
                .function(name)
                .ok_or_else(|| KripkeError::UnknownSymbol(name.clone()))?;
            if arity != args.len() {
                return Err(KripkeError::Arity(name.clone()));
            }
            let args = args
                .iter()
                .map(|a| term(lang, a, scope, params))
                .collect::<Result<_, _>>()?;
            Ok(CTerm::App(i, args))
        }
    }
}

fn constant(lang: &Language, name: &str, params: &mut Vec<Elem>) -> Result<CTerm, KripkeError> {
    if let Some(e) = parse_elem(name) {
        params.push(e);
        return Ok(CTerm::Elem(e));
    }
    match lang.function(name) {
        Some((i, 0)) => Ok(CTerm::App(i, Vec::new())),
        Some(_) => Err(KripkeError::Arity(name.to_string())),
        None => Err(KripkeError::Unbound(name.to_string())),
    }
}

pub(crate) fn eval_term(s: &Structure, t: &CTerm, env: &[Elem]) -> Result<Elem, KripkeError> {
    match t {
        CTerm::Var(i) => Ok(env[*i]),
        CTerm::Elem(e) => Ok(*e),
        CTerm::App(f, args) => {
            let undefined = || KripkeError::Undefined(s.language().functions()[*f].0.clone());
            with_values(s, args, env, |vals| {
                s.function_value(*f, vals).ok_or_else(undefined)
            })?
        }
    }
}

pub(crate) fn eval_atom(s: &Structure, f: &CForm, env: &[Elem]) -> Result<bool, KripkeError> {
    match f {
        CForm::Top => Ok(true),
        CForm::Bot => Ok(false),
        CForm::Eq(a, b) => Ok(eval_term(s, a, env)? == eval_term(s, b, env)?),
        CForm::Pred(p, args) => with_values(s, args, env, |vals| Ok(s.holds(*p, vals)))?,
        _ => unreachable!("not an atom"),
    }
}

/// Evaluates `args` and hands the values to `k`, on the stack for small arities.
fn with_values<T>(
    s: &Structure,
    args: &[CTerm],
    env: &[Elem],
    k: impl FnOnce(&[Elem]) -> Result<T, KripkeError>,
) -> Result<Result<T, KripkeError>, KripkeError> {
    const SMALL: usize = 8;
    if args.len() <= SMALL {
        let mut buf = [0; SMALL];
        for (slot, a) in buf.iter_mut().zip(args) {
            *slot = eval_term(s, a, env)?;
        }
        return Ok(k(&buf[..args.len()]));
    }
    let vals = args
        .iter()
        .map(|a| eval_term(s, a, env))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(k(&vals))
}

/// Tarskian satisfaction, quantifiers ranging over the structure's domain.
pub(crate) fn sat(s: &Structure, f: &CForm, env: &mut Vec<Elem>) -> Result<bool, KripkeError> {
    Ok(match f {
        CForm::Top | CForm::Bot | CForm::Eq(..) | CForm::Pred(..) => eval_atom(s, f, env)?,
        CForm::And(a, b) => sat(s, a, env)? && sat(s, b, env)?,
        CForm::Or(a, b) => sat(s, a, env)? || sat(s, b, env)?,
        CForm::Imp(a, b) => !sat(s, a, env)? || sat(s, b, env)?,
        CForm::Not(a) => !sat(s, a, env)?,
        CForm::All(a) | CForm::Ex(a) => {
            let universal = matches!(f, CForm::All(_));
            for &e in s.domain() {
                env.push(e);
                let r = sat(s, a, env);
                env.pop();
                if r? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
    })
}
