//! Constructions on Kripke models: unraveling into a tree, padding the
//! leaves with constant cones, gluing rooted models under a new root, and
//! re-indexing a padded tree by the full binary tree.

mod binary;

use std::sync::Arc;

use thiserror::Error;

use crate::kripke::{
    validate_model, KripkeError, KripkeModel, Language, ModelKind, Structure, Violation,
};

pub use binary::{
    binary_unravel, cone_check, f_eager, forces_binary, forces_binary_direct, BinaryString,
    BinaryUnraveling, ConeReport, DirectForcing,
};

/// Upper bound on the node count of constructed models.
pub const MAX_NODES: usize = 1 << 12;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("the model has no least node")]
    NotRooted,
    #[error("the model is not a tree")]
    NotTree,
    #[error("node {0} has no neighbors; pad the leaves first")]
    NoNeighbors(String),
    #[error("the construction would exceed {MAX_NODES} nodes")]
    TooLarge,
    #[error("component {component}: {detail}")]
    Glue { component: usize, detail: String },
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// A tree unraveling together with the cover path each new node stands for.
#[derive(Clone, Debug)]
pub struct Unraveled {
    pub model: KripkeModel,
    pub paths: Vec<Vec<usize>>,
}

impl Unraveled {
    /// The source node a tree node copies.
    pub fn endpoint(&self, k: usize) -> usize {
        *self.paths[k].last().expect("paths are non-empty")
    }
}

/// The tree of cover paths from the root, ordered by extension; each path
/// carries the structure of its last node. Node names join the names along
/// the path with `/`.
pub fn unravel_to_tree(m: &KripkeModel) -> Result<Unraveled, TransformError> {
    let root = m.root().ok_or(TransformError::NotRooted)?;
    let covers: Vec<Vec<usize>> = (0..m.len()).map(|k| m.covers(k)).collect();
    let mut paths = vec![vec![root]];
    let mut parent = vec![None];
    let mut i = 0;
    while i < paths.len() {
        let last = *paths[i].last().unwrap();
        for &c in &covers[last] {
            if paths.len() >= MAX_NODES {
                return Err(TransformError::TooLarge);
            }
            let mut p = paths[i].clone();
            p.push(c);
            paths.push(p);
            parent.push(Some(i));
        }
        i += 1;
    }
    let nodes = paths
        .iter()
        .map(|p| {
            let name = p.iter().map(|&k| m.name(k)).collect::<Vec<_>>().join("/");
            (name, m.structure(*p.last().unwrap()).clone())
        })
        .collect();
    let order: Vec<(usize, usize)> = parent
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| (p, i)))
        .collect();
    let model = KripkeModel::new(m.language(), nodes, &order, m.kind())?;
    Ok(Unraveled { model, paths })
}

/// Mark every maximal node as the foot of an infinite constant cone.
pub fn pad_leaves(m: &KripkeModel) -> KripkeModel {
    let depth = m.depths().into_iter().max().unwrap_or(0);
    m.clone().with_kind(ModelKind::EventuallyConstant {
        frontier_depth: depth,
    })
}

/// The immediate successors of `k`, sorted by name. A frontier node of an
/// eventually constant model is its own neighbor: it stands for the next
/// copy in its cone.
pub fn neighbor_set(m: &KripkeModel, k: usize) -> Vec<usize> {
    if m.is_frontier(k) {
        return vec![k];
    }
    let mut n = m.covers(k);
    n.sort_by(|&a, &b| m.name(a).cmp(m.name(b)));
    n
}

/// Put a new root carrying `root` below the disjoint union of the
/// components. Component `i`'s node `n` is renamed `i.n`; the root is named
/// `root`.
pub fn glue_root(
    components: &[KripkeModel],
    root: Structure,
) -> Result<KripkeModel, TransformError> {
    let lang: Arc<Language> = root.language().clone();
    let mut nodes = vec![("root".to_string(), root)];
    let mut order = Vec::new();
    let mut owner = vec![None];
    let mut padded = false;
    for (i, c) in components.iter().enumerate() {
        let glue = |detail: String| TransformError::Glue {
            component: i,
            detail,
        };
        if c.language() != &lang {
            return Err(glue("signature differs from the root structure's".into()));
        }
        let r = c.root().ok_or_else(|| glue("no least node".into()))?;
        padded |= matches!(c.kind(), ModelKind::EventuallyConstant { .. });
        let base = nodes.len();
        if base + c.len() > MAX_NODES {
            return Err(TransformError::TooLarge);
        }
        for k in 0..c.len() {
            nodes.push((format!("{i}.{}", c.name(k)), c.structure(k).clone()));
            owner.push(Some(i));
        }
        order.extend(c.generators().iter().map(|&(a, b)| (base + a, base + b)));
        order.push((0, base + r));
    }
    let mut m = KripkeModel::new(&lang, nodes, &order, ModelKind::Finite)?;
    if padded {
        m = pad_leaves(&m);
    }
    if let Some(v) = validate_model(&m).into_iter().next() {
        let upper = match &v {
            Violation::AtomLost { upper, .. } | Violation::DomainShrinks { upper, .. } => {
                m.index(upper).and_then(|k| owner[k])
            }
            Violation::Undefined { node, .. } | Violation::EmptyDomain { node } => {
                m.index(node).and_then(|k| owner[k])
            }
            _ => None,
        };
        return Err(match upper {
            Some(component) => TransformError::Glue {
                component,
                detail: v.to_string(),
            },
            None => TransformError::Invalid(v.to_string()),
        });
    }
    Ok(m)
}
