//! The TOML model format.
//!
//! ```toml
//! nodes = ["r", "a"]
//! order = [["r", "a"]]
//!
//! [signature]
//! functions = { c = 0 }
//! predicates = { P = 1 }
//!
//! [structure.r]
//! domain = [0]
//! facts = ["c = e0"]
//!
//! [structure.a]
//! domain = [0, 1]
//! facts = ["c = e0", "P(e1)"]
//! ```
//!
//! `order` may be any generating set of the order. A top-level
//! `eventually_constant_at = d` marks the model as eventually constant with
//! frontier depth `d`. Facts are basic atoms `P(ē)`, `f(ē) = e` and `c = e`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::structure::{parse_elem, Elem, Language, Sentence, Structure};
use super::{KripkeError, KripkeModel, ModelKind};
use crate::syntax::{parse_formula_with, Formula, Term};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    nodes: Vec<String>,
    #[serde(default)]
    order: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eventually_constant_at: Option<usize>,
    #[serde(default)]
    signature: SignatureFile,
    #[serde(default)]
    structure: BTreeMap<String, StructureFile>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureFile {
    #[serde(default)]
    functions: BTreeMap<String, usize>,
    #[serde(default)]
    predicates: BTreeMap<String, usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    domain: Vec<Elem>,
    #[serde(default)]
    facts: Vec<String>,
}

pub fn load_model(path: &Path) -> Result<KripkeModel, KripkeError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| KripkeError::File(format!("{}: {e}", path.display())))?;
    model_from_toml(&text)
}

pub fn model_from_toml(text: &str) -> Result<KripkeModel, KripkeError> {
    let file: ModelFile = toml::from_str(text).map_err(|e| KripkeError::File(e.to_string()))?;
    let lang = Language::new(
        file.signature.functions.into_iter().collect(),
        file.signature.predicates.into_iter().collect(),
    )?;
    for name in file.structure.keys() {
        if !file.nodes.contains(name) {
            return Err(KripkeError::UnknownNode(name.clone()));
        }
    }
    let mut nodes = Vec::new();
    for name in &file.nodes {
        let spec = file.structure.get(name).ok_or_else(|| {
            KripkeError::File(format!("node `{name}` has no [structure.{name}] table"))
        })?;
        let mut s = Structure::new(&lang, spec.domain.iter().copied());
        for (i, fact) in spec.facts.iter().enumerate() {
            add_fact(&lang, &mut s, fact).map_err(|e| {
                KripkeError::File(format!("node `{name}`, fact {} `{fact}`: {e}", i + 1))
            })?;
        }
        nodes.push((name.clone(), s));
    }
    let index = |n: &String| {
        file.nodes
            .iter()
            .position(|m| m == n)
            .ok_or_else(|| KripkeError::UnknownNode(n.clone()))
    };
    let order = file
        .order
        .iter()
        .map(|[a, b]| Ok((index(a)?, index(b)?)))
        .collect::<Result<Vec<_>, KripkeError>>()?;
    let kind = match file.eventually_constant_at {
        Some(frontier_depth) => ModelKind::EventuallyConstant { frontier_depth },
        None => ModelKind::Finite,
    };
    KripkeModel::new(&lang, nodes, &order, kind)
}

fn element(t: &Term) -> Option<Elem> {
    match t {
        Term::Var(n) => parse_elem(n),
        Term::App(n, args) if args.is_empty() => parse_elem(n),
        _ => None,
    }
}

fn elements(ts: &[Term]) -> Option<Vec<Elem>> {
    ts.iter().map(element).collect()
}

fn add_fact(lang: &Arc<Language>, s: &mut Structure, fact: &str) -> Result<(), KripkeError> {
    let f =
        parse_formula_with(fact, lang.signature()).map_err(|e| KripkeError::File(e.to_string()))?;
    let malformed = || KripkeError::File("expected P(e..), f(e..) = e or c = e".to_string());
    match &f {
        Formula::Pred(p, args) => s.add_fact(p, &elements(args).ok_or_else(malformed)?),
        Formula::Eq(lhs, rhs) => {
            let value = element(rhs).ok_or_else(malformed)?;
            match lhs {
                Term::App(g, args) => {
                    s.set_function(g, &elements(args).ok_or_else(malformed)?, value)
                }
                Term::Var(c) if lang.function(c).is_some() => s.set_function(c, &[], value),
                _ => Err(malformed()),
            }
        }
        _ => Err(malformed()),
    }
}

pub fn model_to_toml(m: &KripkeModel) -> String {
    let lang = m.language();
    let file = ModelFile {
        nodes: m.names().to_vec(),
        order: m
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| [m.name(a).to_string(), m.name(b).to_string()])
            .collect(),
        eventually_constant_at: match m.kind() {
            ModelKind::EventuallyConstant { frontier_depth } => Some(frontier_depth),
            ModelKind::Finite => None,
        },
        signature: SignatureFile {
            functions: lang.functions().iter().cloned().collect(),
            predicates: lang.predicates().iter().cloned().collect(),
        },
        structure: (0..m.len())
            .map(|k| {
                let s = m.structure(k);
                (
                    m.name(k).to_string(),
                    StructureFile {
                        domain: s.domain().iter().copied().collect(),
                        facts: s.facts().iter().map(|f| Sentence(f).to_string()).collect(),
                    },
                )
            })
            .collect(),
    };
    toml::to_string(&file).expect("model files serialize")
}
