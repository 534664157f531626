use std::collections::BTreeMap;

use super::{
    SyntaxError, ADD, DECODE, KLEENE_T, MUL, PAIR, PAIR_FST, PAIR_SND, RESULT, SUCC, ZERO,
};

/// How a primitive recursive function is obtained from earlier ones.
///
/// Recursion is on the first argument: `f(0, ys) = base(ys)` and
/// `f(S(x), ys) = step(x, f(x, ys), ys)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrBody {
    Zero,
    Successor,
    Projection(usize),
    Composition { outer: String, inners: Vec<String> },
    Recursion { base: String, step: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrDefinition {
    pub name: String,
    pub arity: usize,
    pub body: PrBody,
}

impl PrDefinition {
    pub fn new(name: impl Into<String>, arity: usize, body: PrBody) -> Self {
        PrDefinition {
            name: name.into(),
            arity,
            body,
        }
    }

    pub fn composition(name: &str, arity: usize, outer: &str, inners: &[&str]) -> Self {
        Self::new(
            name,
            arity,
            PrBody::Composition {
                outer: outer.into(),
                inners: inners.iter().map(|s| s.to_string()).collect(),
            },
        )
    }

    pub fn recursion(name: &str, arity: usize, base: &str, step: &str) -> Self {
        Self::new(
            name,
            arity,
            PrBody::Recursion {
                base: base.into(),
                step: step.into(),
            },
        )
    }
}

/// Declared symbols of a first-order language.
///
/// An arithmetic signature always carries `0`, `S`, `+`, `*` together with
/// the coding and machine symbols `j`, `j1`, `j2`, `dec`, `U` and the
/// predicate `T`, whose meaning is supplied by the coding and machine
/// modules. Further functions are introduced by primitive recursive
/// definitions, each referring only to names defined before it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    functions: Vec<(String, usize)>,
    predicates: Vec<(String, usize)>,
    pr: Vec<PrDefinition>,
    arithmetic: bool,
}

const ARITHMETIC_CORE: [(&str, usize); 9] = [
    (ZERO, 0),
    (SUCC, 1),
    (ADD, 2),
    (MUL, 2),
    (PAIR, 2),
    (PAIR_FST, 1),
    (PAIR_SND, 1),
    (DECODE, 2),
    (RESULT, 1),
];

impl Signature {
    /// A plain first-order signature with no arithmetic symbols.
    pub fn new(
        functions: Vec<(String, usize)>,
        predicates: Vec<(String, usize)>,
    ) -> Result<Self, SyntaxError> {
        let sig = Signature {
            functions,
            predicates,
            pr: Vec::new(),
            arithmetic: false,
        };
        sig.check_unique()?;
        Ok(sig)
    }

    /// The arithmetic signature with the standard prelude of primitive
    /// recursive helpers used by characteristic terms: `pred`, `monus`
    /// (truncated subtraction), `sg`, `absdiff` and `max`.
    pub fn arithmetic() -> Self {
        let mut sig = Signature {
            functions: ARITHMETIC_CORE
                .iter()
                .map(|&(n, a)| (n.to_string(), a))
                .collect(),
            predicates: vec![(KLEENE_T.to_string(), 3)],
            pr: Vec::new(),
            arithmetic: true,
        };
        for def in prelude() {
            sig.define(def)
                .expect("prelude definitions are well formed");
        }
        sig
    }

    pub fn is_arithmetic(&self) -> bool {
        self.arithmetic
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions
            .iter()
            .map(|(n, a)| (n.as_str(), *a))
            .chain(self.pr.iter().map(|d| (d.name.as_str(), d.arity)))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn pr_definitions(&self) -> &[PrDefinition] {
        &self.pr
    }

    pub fn pr_definition(&self, name: &str) -> Option<&PrDefinition> {
        self.pr.iter().find(|d| d.name == name)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions().find(|(n, _)| *n == name).map(|(_, a)| a)
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates().find(|(n, _)| *n == name).map(|(_, a)| a)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        self.functions.push((name.to_string(), arity));
        self.check_unique().inspect_err(|_| {
            self.functions.pop();
        })
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        self.predicates.push((name.to_string(), arity));
        self.check_unique().inspect_err(|_| {
            self.predicates.pop();
        })
    }

    /// Add a primitive recursive definition after checking its body against
    /// the already declared symbols.
    pub fn define(&mut self, def: PrDefinition) -> Result<(), SyntaxError> {
        let arity_of = |name: &str| -> Result<usize, SyntaxError> {
            match name {
                n if n == SUCC => Ok(1),
                n if n == ADD || n == MUL => Ok(2),
                n => self.pr_definition(n).map(|d| d.arity).ok_or_else(|| {
                    SyntaxError::Signature(format!(
                        "`{}` refers to `{n}`, which is not defined before it",
                        def.name
                    ))
                }),
            }
        };
        let bad = |msg: String| Err(SyntaxError::Signature(format!("`{}`: {msg}", def.name)));
        match &def.body {
            PrBody::Zero => {}
            PrBody::Successor if def.arity != 1 => return bad("successor has arity 1".into()),
            PrBody::Successor => {}
            PrBody::Projection(i) if *i >= def.arity => {
                return bad(format!(
                    "projection index {i} out of range for arity {}",
                    def.arity
                ))
            }
            PrBody::Projection(_) => {}
            PrBody::Composition { outer, inners } => {
                if arity_of(outer)? != inners.len() {
                    return bad(format!(
                        "`{outer}` does not take {} arguments",
                        inners.len()
                    ));
                }
                for inner in inners {
                    if arity_of(inner)? != def.arity {
                        return bad(format!(
                            "inner function `{inner}` must have arity {}",
                            def.arity
                        ));
                    }
                }
            }
            PrBody::Recursion { base, step } => {
                if def.arity == 0 {
                    return bad("recursion needs at least one argument".into());
                }
                if arity_of(base)? != def.arity - 1 {
                    return bad(format!("base `{base}` must have arity {}", def.arity - 1));
                }
                if arity_of(step)? != def.arity + 1 {
                    return bad(format!("step `{step}` must have arity {}", def.arity + 1));
                }
            }
        }
        self.pr.push(def);
        self.check_unique().inspect_err(|_| {
            self.pr.pop();
        })
    }

    fn check_unique(&self) -> Result<(), SyntaxError> {
        let mut seen = BTreeMap::new();
        for (name, _) in self.functions().chain(self.predicates()) {
            if name.is_empty() {
                return Err(SyntaxError::Signature("empty symbol name".into()));
            }
            if seen.insert(name, ()).is_some() {
                return Err(SyntaxError::Signature(format!(
                    "symbol `{name}` declared twice"
                )));
            }
        }
        Ok(())
    }
}

fn prelude() -> Vec<PrDefinition> {
    use PrBody::*;
    vec![
        PrDefinition::new("zero0", 0, Zero),
        PrDefinition::new("zero2", 2, Zero),
        PrDefinition::new("id1", 1, Projection(0)),
        PrDefinition::new("p0of2", 2, Projection(0)),
        PrDefinition::new("p1of2", 2, Projection(1)),
        PrDefinition::new("p1of3", 3, Projection(1)),
        // pred(0) = 0, pred(S x) = x
        PrDefinition::recursion("pred", 1, "zero0", "p0of2"),
        PrDefinition::composition("predOf2nd", 3, "pred", &["p1of3"]),
        // rmonus(y, x) = x - y, by recursion on y
        PrDefinition::recursion("rmonus", 2, "id1", "predOf2nd"),
        PrDefinition::composition("monus", 2, "rmonus", &["p1of2", "p0of2"]),
        // sg(0) = 0, sg(S x) = 1
        PrDefinition::composition("one2", 2, "S", &["zero2"]),
        PrDefinition::recursion("sg", 1, "zero0", "one2"),
        PrDefinition::composition("monusSwap", 2, "monus", &["p1of2", "p0of2"]),
        PrDefinition::composition("absdiff", 2, "+", &["monus", "monusSwap"]),
        PrDefinition::composition("max", 2, "+", &["p0of2", "monusSwap"]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prelude_is_well_formed() {
        let sig = Signature::arithmetic();
        for name in ["pred", "monus", "sg", "absdiff", "max"] {
            assert!(sig.pr_definition(name).is_some(), "{name}");
        }
        assert_eq!(sig.function_arity("monus"), Some(2));
        assert_eq!(sig.predicate_arity("T"), Some(3));
    }

    #[test]
    fn definitions_must_refer_backwards() {
        let mut sig = Signature::arithmetic();
        let err = sig
            .define(PrDefinition::composition("f", 1, "later", &["id1"]))
            .unwrap_err();
        assert!(err.to_string().contains("not defined before"));
        assert!(sig.pr_definition("f").is_none());
    }

    #[test]
    fn arity_consistency() {
        let mut sig = Signature::arithmetic();
        assert!(sig
            .define(PrDefinition::recursion("bad", 2, "p0of2", "p0of3"))
            .is_err());
        assert!(sig
            .define(PrDefinition::new("proj", 2, PrBody::Projection(2)))
            .is_err());
        assert!(sig
            .define(PrDefinition::new("pred", 1, PrBody::Successor))
            .is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Signature::new(vec![("f".into(), 1), ("f".into(), 2)], vec![]).is_err());
    }
}
