//! Finite Kripke models over a first-order signature.
//!
//! A model is a finite partial order of nodes, each carrying a classical
//! [`Structure`]. Elements are global ids, so the domain of a node is a set of
//! ids and the growth condition along the order is plain set inclusion.
//! Sentences mention elements through the constants `e0`, `e1`, ...
//!
//! An [`ModelKind::EventuallyConstant`] model stands for the infinite model
//! obtained by putting an ω-chain of copies of each maximal node above it.
//! Such a cone forces exactly the classical theory of its structure, which
//! is how [`forces`] evaluates at those nodes.

pub(crate) mod compile;
mod file;
mod forcing;
mod sentences;
mod structure;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::Formula;

pub use file::{load_model, model_from_toml, model_to_toml};
pub use forcing::{
    check_monotonicity, forced_nodes, forces, monotonicity_violations, Bulk, ForcingOracle,
    ModelForcing, MonotonicityViolation, Prepared, Recursive,
};
pub use sentences::{atoms, sentences, sentences_with_params};
pub use structure::{diagram, elem_name, parse_elem, Diagram, Elem, Language, Sentence, Structure};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KripkeError {
    #[error("signature: {0}")]
    Signature(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("wrong number of arguments for `{0}`")]
    Arity(String),
    #[error("`{0}` is neither a bound variable, a constant nor an element")]
    Unbound(String),
    #[error("element `{0}` is outside the domain")]
    OutsideDomain(String),
    #[error("`{0}` has no value on these arguments")]
    Undefined(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("structures must share the model's signature")]
    ForeignStructure,
    #[error("{0}")]
    File(String),
}

/// Whether the maximal nodes stand for infinite constant cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Finite,
    /// Maximal nodes are frontier nodes; none lies deeper than
    /// `frontier_depth` (the root has depth 0).
    EventuallyConstant {
        frontier_depth: usize,
    },
}

#[derive(Clone, Debug)]
pub struct KripkeModel {
    lang: Arc<Language>,
    names: Vec<String>,
    structures: Vec<Structure>,
    order: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
    up: Vec<Vec<usize>>,
    kind: ModelKind,
}

impl KripkeModel {
    /// Build a model from named structures and order pairs (any generating
    /// set; the reflexive transitive closure is taken). Structural defects
    /// are reported by [`validate_model`], not here.
    pub fn new(
        lang: &Arc<Language>,
        nodes: Vec<(String, Structure)>,
        order: &[(usize, usize)],
        kind: ModelKind,
    ) -> Result<KripkeModel, KripkeError> {
        let n = nodes.len();
        let mut seen = BTreeSet::new();
        for (name, s) in &nodes {
            if !seen.insert(name.as_str()) {
                return Err(KripkeError::DuplicateNode(name.clone()));
            }
            if s.language() != lang {
                return Err(KripkeError::ForeignStructure);
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in order {
            if a >= n || b >= n {
                return Err(KripkeError::UnknownNode(a.max(b).to_string()));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let up = (0..n)
            .map(|i| (0..n).filter(|&j| leq[i][j]).collect())
            .collect();
        let (names, structures) = nodes.into_iter().unzip();
        Ok(KripkeModel {
            lang: lang.clone(),
            names,
            structures,
            order: order.to_vec(),
            leq,
            up,
            kind,
        })
    }

    pub fn language(&self) -> &Arc<Language> {
        &self.lang
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: ModelKind) -> KripkeModel {
        self.kind = kind;
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn structure(&self, k: usize) -> &Structure {
        &self.structures[k]
    }

    pub fn structures(&self) -> &[Structure] {
        &self.structures
    }

    /// The order pairs as given at construction.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.order
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All `k' ≥ k`, including `k`, in index order.
    pub fn up(&self, k: usize) -> &[usize] {
        &self.up[k]
    }

    /// Immediate successors.
    pub fn covers(&self, k: usize) -> Vec<usize> {
        let above: Vec<usize> = self.up[k]
            .iter()
            .copied()
            .filter(|&j| j != k && !self.leq[j][k])
            .collect();
        above
            .iter()
            .copied()
            .filter(|&j| {
                !above
                    .iter()
                    .any(|&m| m != j && self.leq[m][j] && !self.leq[j][m])
            })
            .collect()
    }

    /// The cover relation, the smallest generating set of the order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|k| self.covers(k).into_iter().map(move |j| (k, j)))
            .collect()
    }

    pub fn is_maximal(&self, k: usize) -> bool {
        self.up[k].iter().all(|&j| self.leq[j][k])
    }

    pub fn minimal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| (0..self.len()).all(|j| !self.leq[j][k] || self.leq[k][j]))
            .collect()
    }

    /// The least node, if there is one.
    pub fn root(&self) -> Option<usize> {
        (0..self.len()).find(|&r| (0..self.len()).all(|k| self.leq[r][k]))
    }

    /// Rooted and every node other than the root has exactly one cover below.
    pub fn is_tree(&self) -> bool {
        let Some(r) = self.root() else { return false };
        (0..self.len()).all(|k| {
            let below = (0..self.len())
                .filter(|&j| j != k && self.leq[j][k])
                .collect::<Vec<_>>();
            let chain = below
                .iter()
                .all(|&a| below.iter().all(|&b| self.leq[a][b] || self.leq[b][a]));
            (k == r || !below.is_empty()) && chain && below.iter().all(|&j| !self.leq[k][j])
        })
    }

    /// Length of the longest strict chain ending at `k`.
    pub fn depth(&self, k: usize) -> usize {
        let mut memo = vec![None; self.len()];
        self.depth_memo(k, &mut memo, 0)
    }

    /// The depth of every node.
    pub fn depths(&self) -> Vec<usize> {
        let mut memo = vec![None; self.len()];
        (0..self.len())
            .map(|k| self.depth_memo(k, &mut memo, 0))
            .collect()
    }

    fn depth_memo(&self, k: usize, memo: &mut Vec<Option<usize>>, guard: usize) -> usize {
        if let Some(d) = memo[k] {
            return d;
        }
        if guard > self.len() {
            return 0;
        }
        let d = (0..self.len())
            .filter(|&j| j != k && self.leq[j][k] && !self.leq[k][j])
            .map(|j| self.depth_memo(j, memo, guard + 1) + 1)
            .max()
            .unwrap_or(0);
        memo[k] = Some(d);
        d
    }

    /// Every element occurring in some domain.
    pub fn elements(&self) -> Vec<Elem> {
        let all: BTreeSet<Elem> = self
            .structures
            .iter()
            .flat_map(|s| s.domain().iter().copied())
            .collect();
        all.into_iter().collect()
    }

    /// Whether forcing at `k` collapses to classical satisfaction.
    pub fn is_frontier(&self, k: usize) -> bool {
        matches!(self.kind, ModelKind::EventuallyConstant { .. }) && self.is_maximal(k)
    }

    /// Parse a sentence, reading bare names as symbols, elements or bound
    /// variables.
    pub fn parse(&self, text: &str) -> Result<Formula, KripkeError> {
        parse_sentence(&self.lang, text)
    }
}

/// Parse a formula for a model of this language.
pub fn parse_sentence(lang: &Language, text: &str) -> Result<Formula, KripkeError> {
    let f = crate::syntax::parse_formula_with(text, lang.signature())
        .map_err(|e| KripkeError::File(e.to_string()))?;
    let f = f.resolve_constants(&|n: &str| {
        parse_elem(n).is_some() || matches!(lang.function(n), Some((_, 0)))
    });
    compile::compile(lang, &f)?;
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyModel,
    NotAntisymmetric {
        a: String,
        b: String,
    },
    EmptyDomain {
        node: String,
    },
    Undefined {
        node: String,
        detail: String,
    },
    DomainShrinks {
        lower: String,
        upper: String,
        element: String,
    },
    AtomLost {
        lower: String,
        upper: String,
        atom: String,
    },
    FrontierTooDeep {
        node: String,
        depth: usize,
        frontier_depth: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyModel => write!(f, "the model has no nodes"),
            Violation::NotAntisymmetric { a, b } => {
                write!(f, "order is not antisymmetric: {a} ≤ {b} and {b} ≤ {a}")
            }
            Violation::EmptyDomain { node } => write!(f, "node {node}: empty domain"),
            Violation::Undefined { node, detail } => write!(f, "node {node}: {detail}"),
            Violation::DomainShrinks { lower, upper, element } => write!(
                f,
                "{lower} ≤ {upper}: element {element} of {lower} is missing at {upper}"
            ),
            Violation::AtomLost { lower, upper, atom } => {
                write!(f, "{lower} ≤ {upper}: {atom} holds at {lower} but not at {upper}")
            }
            Violation::FrontierTooDeep { node, depth, frontier_depth } => write!(
                f,
                "node {node}: frontier node at depth {depth} exceeds frontier depth {frontier_depth}"
            ),
        }
    }
}

/// Everything that keeps `m` from being a Kripke model: order defects,
/// partial or empty structures, and shrinking along the order.
pub fn validate_model(m: &KripkeModel) -> Vec<Violation> {
    let mut out = Vec::new();
    if m.is_empty() {
        out.push(Violation::EmptyModel);
    }
    let n = m.len();
    for a in 0..n {
        for b in a + 1..n {
            if m.leq(a, b) && m.leq(b, a) {
                out.push(Violation::NotAntisymmetric {
                    a: m.name(a).to_string(),
                    b: m.name(b).to_string(),
                });
            }
        }
    }
    for k in 0..n {
        let s = m.structure(k);
        if s.domain().is_empty() {
            out.push(Violation::EmptyDomain {
                node: m.name(k).to_string(),
            });
        }
        for d in s.defects().into_iter().filter(|d| d != "empty domain") {
            out.push(Violation::Undefined {
                node: m.name(k).to_string(),
                detail: d,
            });
        }
    }
    for a in 0..n {
        for &b in m.up(a) {
            if a == b {
                continue;
            }
            let (lo, hi) = (m.structure(a), m.structure(b));
            let names = || (m.name(a).to_string(), m.name(b).to_string());
            for &e in lo.domain() {
                if !hi.contains(e) {
                    let (lower, upper) = names();
                    out.push(Violation::DomainShrinks {
                        lower,
                        upper,
                        element: elem_name(e),
                    });
                }
            }
            for atom in lost_atoms(lo, hi) {
                let (lower, upper) = names();
                out.push(Violation::AtomLost {
                    lower,
                    upper,
                    atom: Sentence(&atom).to_string(),
                });
            }
        }
    }
    if let ModelKind::EventuallyConstant { frontier_depth } = m.kind() {
        if out.is_empty() {
            let depths = m.depths();
            for k in (0..n).filter(|&k| m.is_maximal(k)) {
                let depth = depths[k];
                if depth > frontier_depth {
                    out.push(Violation::FrontierTooDeep {
                        node: m.name(k).to_string(),
                        depth,
                        frontier_depth,
                    });
                }
            }
        }
    }
    out
}

/// Basic atoms true in `lo` that fail in `hi`.
fn lost_atoms(lo: &Structure, hi: &Structure) -> Vec<Formula> {
    let lang = lo.language();
    let mut out = Vec::new();
    for (i, (p, _)) in lang.predicates().iter().enumerate() {
        for args in lo.relation(i) {
            if !hi.holds(i, args) {
                out.push(structure::pred_atom(p, args));
            }
        }
    }
    for (i, (f, _)) in lang.functions().iter().enumerate() {
        for (args, &v) in lo.function_table(i) {
            if hi.function_value(i, args) != Some(v) {
                out.push(structure::fn_atom(f, args, v));
            }
        }
    }
    out
}

/// Classical satisfaction of a sentence in a single structure.
pub fn classical_sat(s: &Structure, phi: &Formula) -> Result<bool, KripkeError> {
    let c = compile::compile(s.language(), phi)?;
    if let Some(&e) = c.params.iter().find(|&&e| !s.contains(e)) {
        return Err(KripkeError::OutsideDomain(elem_name(e)));
    }
    compile::sat(s, &c.form, &mut Vec::new())
}

#[cfg(test)]
mod tests;
