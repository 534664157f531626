use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::{neighbor_set, TransformError};
use crate::kripke::compile::{compile, eval_atom, sat, CForm};
use crate::kripke::{elem_name, forces, Elem, KripkeError, KripkeModel};
use crate::syntax::Formula;

/// A finite string over {0, 1}; the empty string is λ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryString(pub Vec<bool>);

impl BinaryString {
    pub fn empty() -> BinaryString {
        BinaryString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: bool) -> BinaryString {
        let mut v = self.0.clone();
        v.push(bit);
        BinaryString(v)
    }

    pub fn is_prefix_of(&self, other: &BinaryString) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All strings of length at most `n`, shortest first.
    pub fn all_upto(n: usize) -> Vec<BinaryString> {
        Self::extensions(&BinaryString::empty(), n)
    }

    /// `x` and its extensions by at most `n` bits, shortest first.
    pub fn extensions(x: &BinaryString, n: usize) -> Vec<BinaryString> {
        let mut out = vec![x.clone()];
        let mut i = 0;
        while i < out.len() {
            if out[i].len() < x.len() + n {
                let (a, b) = (out[i].child(false), out[i].child(true));
                out.push(a);
                out.push(b);
            }
            i += 1;
        }
        out
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "λ" {
            return Ok(BinaryString::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("`{c}` is not a binary digit")),
            })
            .collect::<Result<_, _>>()
            .map(BinaryString)
    }
}

/// The onto map from binary strings to the nodes of a padded tree.
///
/// Reading a string left to right, a run of `m` zeros followed by a one
/// moves from node `k` to `g_k(m)`, the `m`-th neighbor of `k` taken round
/// robin over its neighbors sorted by name; trailing zeros stay put.
#[derive(Clone, Debug)]
pub struct BinaryUnraveling {
    source: KripkeModel,
    root: usize,
    neighbors: Vec<Vec<usize>>,
}

pub fn binary_unravel(m: &KripkeModel) -> Result<BinaryUnraveling, TransformError> {
    let root = m.root().ok_or(TransformError::NotRooted)?;
    if !m.is_tree() {
        return Err(TransformError::NotTree);
    }
    let neighbors: Vec<Vec<usize>> = (0..m.len()).map(|k| neighbor_set(m, k)).collect();
    if let Some(k) = neighbors.iter().position(Vec::is_empty) {
        return Err(TransformError::NoNeighbors(m.name(k).to_string()));
    }
    Ok(BinaryUnraveling {
        source: m.clone(),
        root,
        neighbors,
    })
}

impl BinaryUnraveling {
    pub fn source(&self) -> &KripkeModel {
        &self.source
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn neighbors(&self, k: usize) -> &[usize] {
        &self.neighbors[k]
    }

    /// `g_k(n)`.
    pub fn g(&self, k: usize, n: usize) -> usize {
        let ns = &self.neighbors[k];
        ns[n % ns.len()]
    }

    /// `f(x)`.
    pub fn f_eval(&self, x: &BinaryString) -> usize {
        self.state(x).0
    }

    /// `f(x)` and the residue of the current zero run modulo the number of
    /// neighbors. The cone above `x` depends only on this pair.
    fn state(&self, x: &BinaryString) -> (usize, usize) {
        let mut k = self.root;
        let mut zeros = 0;
        for &bit in &x.0 {
            if bit {
                k = self.g(k, zeros);
                zeros = 0;
            } else {
                zeros = (zeros + 1) % self.neighbors[k].len();
            }
        }
        (k, zeros)
    }
}

/// The staged construction run literally on strings of length at most
/// `max_len`: start from `λ ↦ root` and extend every anchor (a string in
/// the domain with neither child in it) until nothing changes.
pub fn f_eager(u: &BinaryUnraveling, max_len: usize) -> HashMap<BinaryString, usize> {
    let mut f: HashMap<BinaryString, usize> = HashMap::new();
    f.insert(BinaryString::empty(), u.root);
    loop {
        let anchors: Vec<BinaryString> = f
            .keys()
            .filter(|x| {
                x.len() < max_len
                    && !f.contains_key(&x.child(false))
                    && !f.contains_key(&x.child(true))
            })
            .cloned()
            .collect();
        if anchors.is_empty() {
            return f;
        }
        let mut next = f.clone();
        for y in anchors {
            let k = f[&y];
            let mut x = y.clone();
            for m in 0.. {
                if x.len() >= max_len {
                    break;
                }
                if m > 0 {
                    next.entry(x.clone()).or_insert(k);
                }
                next.entry(x.child(true)).or_insert_with(|| u.g(k, m));
                x = x.child(false);
            }
            next.entry(x).or_insert(k);
        }
        f = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    /// Every image of an extension lies above `f(x)`.
    pub cone_subset: bool,
    /// The images cover the whole cone above `f(x)`.
    pub cone_equal_at_depth: bool,
    /// Cone nodes not yet reached.
    pub missing: Vec<usize>,
}

/// Compare `{f(y) : x ⪯ y, |y| ≤ |x| + depth}` with the cone above `f(x)`.
pub fn cone_check(u: &BinaryUnraveling, x: &BinaryString, depth: usize) -> ConeReport {
    let k = u.f_eval(x);
    let image: BTreeSet<usize> = BinaryString::extensions(x, depth)
        .iter()
        .map(|y| u.f_eval(y))
        .collect();
    let missing: Vec<usize> = u
        .source
        .up(k)
        .iter()
        .copied()
        .filter(|j| !image.contains(j))
        .collect();
    ConeReport {
        cone_subset: image.iter().all(|&j| u.source.leq(k, j)),
        cone_equal_at_depth: missing.is_empty(),
        missing,
    }
}

/// `x ⊩ phi` in the binary model, read off at `f(x)` in the source.
pub fn forces_binary(
    u: &BinaryUnraveling,
    x: &BinaryString,
    phi: &Formula,
) -> Result<bool, KripkeError> {
    forces(&u.source, u.f_eval(x), phi)
}

/// `x ⊩ phi` evaluated on the binary model itself.
///
/// The subtree above `x` is determined by the state of [`BinaryUnraveling`]
/// at `x`, so the infinite frame is folded into the finite graph of states;
/// the cone above `x` is the set of states reachable from its state.
pub fn forces_binary_direct(
    u: &BinaryUnraveling,
    x: &BinaryString,
    phi: &Formula,
) -> Result<bool, KripkeError> {
    DirectForcing::new(u).forces(x, phi)
}

/// Forcing on the binary model itself.
///
/// The subtree above `x` is determined by the state of [`BinaryUnraveling`]
/// at `x`, so the infinite frame is folded into the finite graph of states;
/// the cone above `x` is the set of states reachable from its state. Build
/// once and query many strings.
pub struct DirectForcing<'a> {
    u: &'a BinaryUnraveling,
    states: Vec<(usize, usize)>,
    id: HashMap<(usize, usize), usize>,
    reach: Vec<Vec<usize>>,
}

impl<'a> DirectForcing<'a> {
    pub fn new(u: &'a BinaryUnraveling) -> DirectForcing<'a> {
        let mut states = Vec::new();
        let mut id = HashMap::new();
        for k in 0..u.source.len() {
            for j in 0..u.neighbors[k].len() {
                id.insert((k, j), states.len());
                states.push((k, j));
            }
        }
        let step = |&(k, j): &(usize, usize)| [(k, (j + 1) % u.neighbors[k].len()), (u.g(k, j), 0)];
        let reach = states
            .iter()
            .map(|s| {
                let mut seen = BTreeSet::from([id[s]]);
                let mut queue = VecDeque::from([*s]);
                while let Some(t) = queue.pop_front() {
                    for n in step(&t) {
                        if seen.insert(id[&n]) {
                            queue.push_back(n);
                        }
                    }
                }
                seen.into_iter().collect()
            })
            .collect();
        DirectForcing {
            u,
            states,
            id,
            reach,
        }
    }

    /// Number of states, `Σ_k |N_k|`.
    pub fn states(&self) -> usize {
        self.states.len()
    }

    /// `x ⊩ phi`.
    pub fn forces(&self, x: &BinaryString, phi: &Formula) -> Result<bool, KripkeError> {
        let c = compile(self.u.source.language(), phi)?;
        let s = self.id[&self.u.state(x)];
        if let Some(&e) = c.params.iter().find(|&&e| !self.dom(s).contains(&e)) {
            return Err(KripkeError::OutsideDomain(elem_name(e)));
        }
        self.force(s, &c.form, &mut Vec::new())
    }

    fn node(&self, s: usize) -> usize {
        self.states[s].0
    }

    fn dom(&self, s: usize) -> &BTreeSet<Elem> {
        self.u.source.structure(self.node(s)).domain()
    }

    fn force(&self, s: usize, f: &CForm, env: &mut Vec<Elem>) -> Result<bool, KripkeError> {
        let k = self.node(s);
        let m = &self.u.source;
        if m.is_frontier(k) {
            return sat(m.structure(k), f, env);
        }
        Ok(match f {
            CForm::Top | CForm::Bot | CForm::Eq(..) | CForm::Pred(..) => {
                eval_atom(m.structure(k), f, env)?
            }
            CForm::And(a, b) => self.force(s, a, env)? && self.force(s, b, env)?,
            CForm::Or(a, b) => self.force(s, a, env)? || self.force(s, b, env)?,
            CForm::Imp(a, b) => {
                for &t in &self.reach[s] {
                    if self.force(t, a, env)? && !self.force(t, b, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            CForm::Not(a) => {
                for &t in &self.reach[s] {
                    if self.force(t, a, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            CForm::All(a) => {
                for &t in &self.reach[s] {
                    for &d in self.dom(t) {
                        env.push(d);
                        let r = self.force(t, a, env);
                        env.pop();
                        if !r? {
                            return Ok(false);
                        }
                    }
                }
                true
            }
            CForm::Ex(a) => {
                for &d in self.dom(s) {
                    env.push(d);
                    let r = self.force(s, a, env);
                    env.pop();
                    if r? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}
