use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::KripkeError;
use crate::syntax::{Formula, Signature, Term};

/// An element id. Elements are global to a model, so a node's domain is a
/// set of ids and inclusion between domains is literal set inclusion.
pub type Elem = u32;

/// The constant naming element `e` inside formulas: `e0`, `e1`, ...
pub fn elem_name(e: Elem) -> String {
    format!("e{e}")
}

/// The element named by `e<digits>`, without leading zeros.
pub fn parse_elem(name: &str) -> Option<Elem> {
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// The symbols of a model with their positions, shared by its structures.
#[derive(Debug)]
pub struct Language {
    sig: Signature,
    functions: Vec<(String, usize)>,
    predicates: Vec<(String, usize)>,
    fn_index: HashMap<String, usize>,
    pred_index: HashMap<String, usize>,
}

impl PartialEq for Language {
    fn eq(&self, other: &Self) -> bool {
        self.functions == other.functions && self.predicates == other.predicates
    }
}

impl Eq for Language {}

impl Language {
    pub fn new(
        functions: Vec<(String, usize)>,
        predicates: Vec<(String, usize)>,
    ) -> Result<Arc<Language>, KripkeError> {
        for (name, _) in functions.iter().chain(&predicates) {
            if parse_elem(name).is_some() {
                return Err(KripkeError::Signature(format!(
                    "`{name}` is reserved for element constants"
                )));
            }
        }
        let sig = Signature::new(functions.clone(), predicates.clone())
            .map_err(|e| KripkeError::Signature(e.to_string()))?;
        let index = |xs: &[(String, usize)]| {
            xs.iter()
                .enumerate()
                .map(|(i, (n, _))| (n.clone(), i))
                .collect::<HashMap<_, _>>()
        };
        Ok(Arc::new(Language {
            fn_index: index(&functions),
            pred_index: index(&predicates),
            sig,
            functions,
            predicates,
        }))
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn predicates(&self) -> &[(String, usize)] {
        &self.predicates
    }

    pub fn function(&self, name: &str) -> Option<(usize, usize)> {
        self.fn_index.get(name).map(|&i| (i, self.functions[i].1))
    }

    pub fn predicate(&self, name: &str) -> Option<(usize, usize)> {
        self.pred_index
            .get(name)
            .map(|&i| (i, self.predicates[i].1))
    }
}

/// A finite classical structure: a domain of element ids, a table per
/// function symbol (constants are nullary functions) and a relation per
/// predicate symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    lang: Arc<Language>,
    domain: BTreeSet<Elem>,
    functions: Vec<BTreeMap<Vec<Elem>, Elem>>,
    predicates: Vec<BTreeSet<Vec<Elem>>>,
}

impl Structure {
    pub fn new(lang: &Arc<Language>, domain: impl IntoIterator<Item = Elem>) -> Structure {
        Structure {
            lang: lang.clone(),
            domain: domain.into_iter().collect(),
            functions: vec![BTreeMap::new(); lang.functions.len()],
            predicates: vec![BTreeSet::new(); lang.predicates.len()],
        }
    }

    pub fn language(&self) -> &Arc<Language> {
        &self.lang
    }

    pub fn domain(&self) -> &BTreeSet<Elem> {
        &self.domain
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.domain.contains(&e)
    }

    fn check_elems(&self, elems: &[Elem]) -> Result<(), KripkeError> {
        match elems.iter().find(|e| !self.domain.contains(e)) {
            Some(&e) => Err(KripkeError::OutsideDomain(elem_name(e))),
            None => Ok(()),
        }
    }

    /// Set `f(args) = value`.
    pub fn set_function(&mut self, f: &str, args: &[Elem], value: Elem) -> Result<(), KripkeError> {
        let (i, arity) = self
            .lang
            .function(f)
            .ok_or_else(|| KripkeError::UnknownSymbol(f.to_string()))?;
        if arity != args.len() {
            return Err(KripkeError::Arity(f.to_string()));
        }
        self.check_elems(args)?;
        self.check_elems(&[value])?;
        self.functions[i].insert(args.to_vec(), value);
        Ok(())
    }

    /// Make `P(args)` true.
    pub fn add_fact(&mut self, p: &str, args: &[Elem]) -> Result<(), KripkeError> {
        let (i, arity) = self
            .lang
            .predicate(p)
            .ok_or_else(|| KripkeError::UnknownSymbol(p.to_string()))?;
        if arity != args.len() {
            return Err(KripkeError::Arity(p.to_string()));
        }
        self.check_elems(args)?;
        self.predicates[i].insert(args.to_vec());
        Ok(())
    }

    pub fn function_value(&self, f: usize, args: &[Elem]) -> Option<Elem> {
        self.functions[f].get(args).copied()
    }

    pub fn holds(&self, p: usize, args: &[Elem]) -> bool {
        self.predicates[p].contains(args)
    }

    pub(crate) fn function_table(&self, f: usize) -> &BTreeMap<Vec<Elem>, Elem> {
        &self.functions[f]
    }

    pub(crate) fn relation(&self, p: usize) -> &BTreeSet<Vec<Elem>> {
        &self.predicates[p]
    }

    /// Every tuple over the domain of length `n`, in lexicographic order.
    pub fn tuples(&self, n: usize) -> Vec<Vec<Elem>> {
        let dom: Vec<Elem> = self.domain.iter().copied().collect();
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    dom.iter().map(move |&e| {
                        let mut t = t.clone();
                        t.push(e);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// Missing table entries and other defects, one message each.
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.domain.is_empty() {
            out.push("empty domain".to_string());
        }
        for (i, (f, arity)) in self.lang.functions.iter().enumerate() {
            for args in self.tuples(*arity) {
                if !self.functions[i].contains_key(&args) {
                    out.push(format!("`{}` is undefined", basic_term(f, &args)));
                }
            }
        }
        out
    }

    /// The function and predicate facts as atomic sentences.
    pub fn facts(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        for (i, (p, _)) in self.lang.predicates.iter().enumerate() {
            for args in &self.predicates[i] {
                out.push(pred_atom(p, args));
            }
        }
        for (i, (f, _)) in self.lang.functions.iter().enumerate() {
            for (args, v) in &self.functions[i] {
                out.push(fn_atom(f, args, *v));
            }
        }
        out
    }
}

fn basic_term(f: &str, args: &[Elem]) -> Term {
    Term::app(
        f,
        args.iter().map(|&e| Term::constant(elem_name(e))).collect(),
    )
}

pub(crate) fn pred_atom(p: &str, args: &[Elem]) -> Formula {
    Formula::pred(
        p,
        args.iter().map(|&e| Term::constant(elem_name(e))).collect(),
    )
}

pub(crate) fn fn_atom(f: &str, args: &[Elem], v: Elem) -> Formula {
    Formula::eq(basic_term(f, args), Term::constant(elem_name(v)))
}

/// Displays a formula with constants written as bare names, the way the
/// model file and the command line accept them.
pub struct Sentence<'a>(pub &'a Formula);

impl fmt::Display for Sentence<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bare = self.0.map_terms(&strip_params);
        write!(f, "{bare}")
    }
}

fn strip_params(t: &Term) -> Term {
    match t {
        Term::App(n, args) if args.is_empty() && n != crate::syntax::ZERO => Term::var(n),
        Term::App(n, args) => Term::app(n, args.iter().map(strip_params).collect()),
        Term::Var(_) => t.clone(),
    }
}

/// Atomic and negated atomic sentences of a structure over its basic atoms
/// `P(ē)` and `f(ē) = e`. Equations between element constants are left out:
/// distinct ids always name distinct elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub positive: Vec<Formula>,
    pub negative: Vec<Formula>,
}

impl Diagram {
    /// The positive atoms together with the negations of the others.
    pub fn full(&self) -> Vec<Formula> {
        self.positive
            .iter()
            .cloned()
            .chain(self.negative.iter().map(|a| Formula::not(a.clone())))
            .collect()
    }
}

pub fn diagram(s: &Structure) -> Diagram {
    let mut d = Diagram {
        positive: Vec::new(),
        negative: Vec::new(),
    };
    for (i, (p, arity)) in s.lang.predicates.iter().enumerate() {
        for args in s.tuples(*arity) {
            let atom = pred_atom(p, &args);
            if s.predicates[i].contains(&args) {
                d.positive.push(atom);
            } else {
                d.negative.push(atom);
            }
        }
    }
    for (i, (f, arity)) in s.lang.functions.iter().enumerate() {
        for args in s.tuples(*arity) {
            let value = s.functions[i].get(&args);
            for &v in &s.domain {
                let atom = fn_atom(f, &args, v);
                if value == Some(&v) {
                    d.positive.push(atom);
                } else {
                    d.negative.push(atom);
                }
            }
        }
    }
    d
}
