use std::fmt;

use super::compile::{compile, eval_atom, sat, CForm, Compiled};
use super::structure::{elem_name, Elem, Language, Sentence};
use super::{KripkeError, KripkeModel};
use crate::syntax::Formula;

/// A procedure deciding forcing. The harness in [`monotonicity_violations`]
/// is written against this trait so that it can be pointed at a faulty
/// evaluator and shown to notice.
pub trait ForcingOracle {
    fn forces(&self, m: &KripkeModel, k: usize, phi: &Formula) -> Result<bool, KripkeError>;

    /// Forcing at every node; `None` where a parameter of `phi` is missing
    /// from the node's domain.
    fn forced_nodes(
        &self,
        m: &KripkeModel,
        phi: &Formula,
    ) -> Result<Vec<Option<bool>>, KripkeError> {
        let c = compile(m.language(), phi)?;
        (0..m.len())
            .map(|k| {
                if c.params.iter().all(|&e| m.structure(k).contains(e)) {
                    self.forces(m, k, phi).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect()
    }
}

/// Clause-by-clause evaluation at one node.
#[derive(Clone, Copy, Debug, Default)]
pub struct Recursive;

/// Evaluates a sentence at all nodes at once, as bit sets over the nodes.
/// Falls back to [`Recursive`] for models with more than 128 nodes.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bulk;

impl ForcingOracle for Recursive {
    fn forces(&self, m: &KripkeModel, k: usize, phi: &Formula) -> Result<bool, KripkeError> {
        forces(m, k, phi)
    }
}

impl ForcingOracle for Bulk {
    fn forces(&self, m: &KripkeModel, k: usize, phi: &Formula) -> Result<bool, KripkeError> {
        let c = checked(m, k, phi)?;
        if m.len() > 128 {
            return force(m, k, &c.form, &mut Vec::new());
        }
        let masks = Masks::new(m);
        let def = c.params.iter().fold(masks.all, |d, &e| d & masks.has(e));
        Ok(masks.eval(m, &c.form, &mut Vec::new(), def)? >> k & 1 == 1)
    }

    fn forced_nodes(
        &self,
        m: &KripkeModel,
        phi: &Formula,
    ) -> Result<Vec<Option<bool>>, KripkeError> {
        ModelForcing::new(m).forced_nodes(phi)
    }
}

/// A sentence resolved against a language once, for use with many models.
#[derive(Clone, Debug)]
pub struct Prepared(Compiled, Formula);

impl Prepared {
    pub fn new(lang: &Language, phi: &Formula) -> Result<Prepared, KripkeError> {
        Ok(Prepared(compile(lang, phi)?, phi.clone()))
    }
}

/// [`Bulk`] bound to one model, for evaluating many sentences against it.
pub struct ModelForcing<'a> {
    m: &'a KripkeModel,
    masks: Option<Masks>,
}

impl<'a> ModelForcing<'a> {
    pub fn new(m: &'a KripkeModel) -> Self {
        let masks = (m.len() <= 128).then(|| Masks::new(m));
        ModelForcing { m, masks }
    }

    pub fn forced_nodes(&self, phi: &Formula) -> Result<Vec<Option<bool>>, KripkeError> {
        let Some(masks) = &self.masks else {
            return Recursive.forced_nodes(self.m, phi);
        };
        self.forced_masks(masks, &compile(self.m.language(), phi)?)
    }

    /// As [`ModelForcing::forced_nodes`] for a sentence prepared against
    /// the model's language.
    pub fn forced_prepared(&self, p: &Prepared) -> Result<Vec<Option<bool>>, KripkeError> {
        match &self.masks {
            Some(masks) => self.forced_masks(masks, &p.0),
            None => Recursive.forced_nodes(self.m, &p.1),
        }
    }

    fn forced_masks(&self, masks: &Masks, c: &Compiled) -> Result<Vec<Option<bool>>, KripkeError> {
        let def = c.params.iter().fold(masks.all, |d, &e| d & masks.has(e));
        let forced = masks.eval(self.m, &c.form, &mut Vec::new(), def)?;
        Ok((0..self.m.len())
            .map(|k| (def >> k & 1 == 1).then_some(forced >> k & 1 == 1))
            .collect())
    }
}

fn checked(m: &KripkeModel, k: usize, phi: &Formula) -> Result<Compiled, KripkeError> {
    if k >= m.len() {
        return Err(KripkeError::UnknownNode(k.to_string()));
    }
    let c = compile(m.language(), phi)?;
    if let Some(&e) = c.params.iter().find(|&&e| !m.structure(k).contains(e)) {
        return Err(KripkeError::OutsideDomain(elem_name(e)));
    }
    Ok(c)
}

/// `k ⊩ phi`. Every parameter of `phi` must lie in the domain of `k`.
pub fn forces(m: &KripkeModel, k: usize, phi: &Formula) -> Result<bool, KripkeError> {
    let c = checked(m, k, phi)?;
    force(m, k, &c.form, &mut Vec::new())
}

fn force(m: &KripkeModel, k: usize, f: &CForm, env: &mut Vec<Elem>) -> Result<bool, KripkeError> {
    if m.is_frontier(k) {
        return sat(m.structure(k), f, env);
    }
    Ok(match f {
        CForm::Top | CForm::Bot | CForm::Eq(..) | CForm::Pred(..) => {
            eval_atom(m.structure(k), f, env)?
        }
        CForm::And(a, b) => force(m, k, a, env)? && force(m, k, b, env)?,
        CForm::Or(a, b) => force(m, k, a, env)? || force(m, k, b, env)?,
        CForm::Imp(a, b) => {
            for &j in m.up(k) {
                if force(m, j, a, env)? && !force(m, j, b, env)? {
                    return Ok(false);
                }
            }
            true
        }
        CForm::Not(a) => {
            for &j in m.up(k) {
                if force(m, j, a, env)? {
                    return Ok(false);
                }
            }
            true
        }
        CForm::All(a) => {
            for &j in m.up(k) {
                for &d in m.structure(j).domain() {
                    env.push(d);
                    let r = force(m, j, a, env);
                    env.pop();
                    if !r? {
                        return Ok(false);
                    }
                }
            }
            true
        }
        CForm::Ex(a) => {
            for &d in m.structure(k).domain() {
                env.push(d);
                let r = force(m, k, a, env);
                env.pop();
                if r? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

struct Masks {
    all: u128,
    up: Vec<u128>,
    elems: Vec<(Elem, u128)>,
}

impl Masks {
    fn new(m: &KripkeModel) -> Masks {
        let bits = |it: &mut dyn Iterator<Item = usize>| it.fold(0u128, |acc, k| acc | 1 << k);
        let up = (0..m.len())
            .map(|k| bits(&mut m.up(k).iter().copied()))
            .collect();
        let elems = m
            .elements()
            .into_iter()
            .map(|e| {
                (
                    e,
                    bits(&mut (0..m.len()).filter(|&k| m.structure(k).contains(e))),
                )
            })
            .collect();
        Masks {
            all: bits(&mut (0..m.len())),
            up,
            elems,
        }
    }

    fn has(&self, e: Elem) -> u128 {
        self.elems
            .iter()
            .find(|&&(x, _)| x == e)
            .map_or(0, |&(_, mask)| mask)
    }

    /// Nodes of `def` forcing `f`. `def` only contains nodes whose domain
    /// holds every element of `env`, and is closed upwards in valid models.
    fn eval(
        &self,
        m: &KripkeModel,
        f: &CForm,
        env: &mut Vec<Elem>,
        def: u128,
    ) -> Result<u128, KripkeError> {
        let nodes = |set: u128| (0..m.len()).filter(move |&k| set >> k & 1 == 1);
        let sealed = |bad: u128| {
            nodes(def)
                .filter(|&k| self.up[k] & bad == 0)
                .fold(0u128, |acc, k| acc | 1 << k)
        };
        Ok(match f {
            CForm::Top | CForm::Bot | CForm::Eq(..) | CForm::Pred(..) => {
                let mut out = 0;
                for k in nodes(def) {
                    if eval_atom(m.structure(k), f, env)? {
                        out |= 1 << k;
                    }
                }
                out
            }
            CForm::And(a, b) => {
                let x = self.eval(m, a, env, def)?;
                if x == 0 {
                    0
                } else {
                    x & self.eval(m, b, env, def)?
                }
            }
            CForm::Or(a, b) => {
                let x = self.eval(m, a, env, def)?;
                if x == def {
                    x
                } else {
                    x | self.eval(m, b, env, def)?
                }
            }
            CForm::Imp(a, b) => {
                let x = self.eval(m, a, env, def)?;
                let y = if x == 0 {
                    0
                } else {
                    self.eval(m, b, env, def)?
                };
                sealed(x & !y)
            }
            CForm::Not(a) => sealed(self.eval(m, a, env, def)?),
            CForm::All(a) => {
                let mut bad = 0;
                for &(d, has) in &self.elems {
                    let dd = def & has;
                    if dd == 0 {
                        continue;
                    }
                    env.push(d);
                    let r = self.eval(m, a, env, dd);
                    env.pop();
                    bad |= dd & !r?;
                }
                sealed(bad)
            }
            CForm::Ex(a) => {
                let mut out = 0;
                for &(d, has) in &self.elems {
                    let dd = def & has;
                    if dd == 0 {
                        continue;
                    }
                    env.push(d);
                    let r = self.eval(m, a, env, dd);
                    env.pop();
                    out |= r?;
                }
                out
            }
        })
    }
}

/// Forcing at every node, computed in one pass where the model allows.
pub fn forced_nodes(m: &KripkeModel, phi: &Formula) -> Result<Vec<Option<bool>>, KripkeError> {
    Bulk.forced_nodes(m, phi)
}

/// A sentence forced at `lower` but not at `upper`, or one the oracle
/// could not evaluate (`upper == lower`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityViolation {
    pub sentence: Formula,
    pub lower: usize,
    pub upper: usize,
    pub error: Option<KripkeError>,
}

impl fmt::Display for MonotonicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            Some(e) => write!(f, "{}: {e}", Sentence(&self.sentence)),
            None => write!(
                f,
                "node {} forces {} but node {} above it does not",
                self.lower,
                Sentence(&self.sentence),
                self.upper
            ),
        }
    }
}

pub fn monotonicity_violations(
    m: &KripkeModel,
    sentences: &[Formula],
    oracle: &dyn ForcingOracle,
) -> Vec<MonotonicityViolation> {
    let mut out = Vec::new();
    for phi in sentences {
        let table = match oracle.forced_nodes(m, phi) {
            Ok(t) => t,
            Err(e) => {
                out.push(MonotonicityViolation {
                    sentence: phi.clone(),
                    lower: 0,
                    upper: 0,
                    error: Some(e),
                });
                continue;
            }
        };
        for k in 0..m.len() {
            if table[k] != Some(true) {
                continue;
            }
            for &j in m.up(k) {
                if table[j] == Some(false) || table[j].is_none() {
                    out.push(MonotonicityViolation {
                        sentence: phi.clone(),
                        lower: k,
                        upper: j,
                        error: None,
                    });
                }
            }
        }
    }
    out
}

/// True iff no listed sentence forced at a node fails above it. A sentence
/// the model cannot evaluate counts as a failure.
pub fn check_monotonicity(m: &KripkeModel, sentences: &[Formula]) -> bool {
    monotonicity_violations(m, sentences, &Bulk).is_empty()
}
