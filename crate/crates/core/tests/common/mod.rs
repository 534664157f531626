//! Generators and independent reference implementations shared by the
//! integration suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use heyting::kripke::{Elem, KripkeModel, Language, ModelKind, Structure};
use heyting::machine::{Instruction, Program};
use heyting::syntax::{Formula, Term};
use heyting::transform::pad_leaves;
use heyting::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// One unary predicate `P` and one constant `c`.
pub fn unary_language() -> Arc<Language> {
    Language::new(vec![("c".into(), 0)], vec![("P".into(), 1)]).unwrap()
}

/// A structure for [`unary_language`] with `c = e0`.
pub fn unary_structure(
    lang: &Arc<Language>,
    domain: &BTreeSet<Elem>,
    facts: &BTreeSet<Elem>,
) -> Structure {
    let mut s = Structure::new(lang, domain.iter().copied());
    s.set_function("c", &[], 0).unwrap();
    for &e in facts {
        s.add_fact("P", &[e]).unwrap();
    }
    s
}

/// Structures growing along the given order: each node inherits the
/// elements and facts of the nodes below it and may add more.
fn grow(
    rng: &mut StdRng,
    lang: &Arc<Language>,
    n: usize,
    edges: &[(usize, usize)],
    max_dom: u32,
    start: Option<(BTreeSet<Elem>, BTreeSet<Elem>)>,
) -> Vec<(String, Structure)> {
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for j in 0..n {
        for &(a, b) in edges {
            if b == j {
                let inherited = below[a].clone();
                below[j].extend(inherited);
                below[j].insert(a);
            }
        }
    }
    let mut doms: Vec<BTreeSet<Elem>> = Vec::new();
    let mut facts: Vec<BTreeSet<Elem>> = Vec::new();
    for j in 0..n {
        let mut d: BTreeSet<Elem> = BTreeSet::from([0]);
        let mut f: BTreeSet<Elem> = BTreeSet::new();
        if let (0, Some((sd, sf))) = (j, &start) {
            d.extend(sd);
            f.extend(sf);
        }
        for &i in &below[j] {
            d.extend(&doms[i]);
            f.extend(&facts[i]);
        }
        for e in 0..max_dom {
            if rng.gen_bool(0.3) {
                d.insert(e);
            }
        }
        for &e in &d {
            if rng.gen_bool(0.25) {
                f.insert(e);
            }
        }
        doms.push(d);
        facts.push(f);
    }
    (0..n)
        .map(|j| (format!("k{j}"), unary_structure(lang, &doms[j], &facts[j])))
        .collect()
}

/// A valid finite model over [`unary_language`] with at most `max_nodes`
/// nodes and domains inside `{e0, …, e(max_dom-1)}`.
pub fn random_model(rng: &mut StdRng, max_nodes: usize, max_dom: u32) -> KripkeModel {
    let lang = unary_language();
    let n = rng.gen_range(1..=max_nodes);
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(0.35) {
                edges.push((i, j));
            }
        }
    }
    let nodes = grow(rng, &lang, n, &edges, max_dom, None);
    KripkeModel::new(&lang, nodes, &edges, ModelKind::Finite).unwrap()
}

/// A valid finite tree model, not padded.
pub fn random_tree(rng: &mut StdRng, max_nodes: usize, max_dom: u32) -> KripkeModel {
    let lang = unary_language();
    let n = rng.gen_range(1..=max_nodes);
    let edges: Vec<(usize, usize)> = (1..n).map(|j| (rng.gen_range(0..j), j)).collect();
    let nodes = grow(rng, &lang, n, &edges, max_dom, None);
    KripkeModel::new(&lang, nodes, &edges, ModelKind::Finite).unwrap()
}

pub fn random_padded_tree(rng: &mut StdRng, max_nodes: usize, max_dom: u32) -> KripkeModel {
    pad_leaves(&random_tree(rng, max_nodes, max_dom))
}

/// A valid rooted model whose root contains `base` (domain, facts).
pub fn random_rooted(
    rng: &mut StdRng,
    max_nodes: usize,
    max_dom: u32,
    base: (BTreeSet<Elem>, BTreeSet<Elem>),
) -> KripkeModel {
    let lang = unary_language();
    let n = rng.gen_range(1..=max_nodes);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|j| (0, j)).collect();
    for j in 2..n {
        for i in 1..j {
            if rng.gen_bool(0.3) {
                edges.push((i, j));
            }
        }
    }
    let nodes = grow(rng, &lang, n, &edges, max_dom, Some(base));
    KripkeModel::new(&lang, nodes, &edges, ModelKind::Finite).unwrap()
}

/// Every partial order on `n` points, one per isomorphism class, as its
/// strict relation.
pub fn posets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel: BTreeSet<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let antisymmetric = rel.iter().all(|&(a, b)| !rel.contains(&(b, a)));
        let transitive = rel.iter().all(|&(a, b)| {
            rel.iter()
                .filter(|&&(c, _)| c == b)
                .all(|&(_, d)| rel.contains(&(a, d)))
        });
        if !antisymmetric || !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut r: Vec<(usize, usize)> = rel.iter().map(|&(a, b)| (p[a], p[b])).collect();
                r.sort();
                r
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

const VARS: [&str; 3] = ["x", "y", "z"];

pub fn random_term(rng: &mut StdRng, vars: &[&str], depth: usize) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if !vars.is_empty() && rng.gen_bool(0.6) {
            Term::var(vars[rng.gen_range(0..vars.len())])
        } else {
            Term::numeral(rng.gen_range(0..3))
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(random_term(rng, vars, depth - 1)),
        1 => Term::add(
            random_term(rng, vars, depth - 1),
            random_term(rng, vars, depth - 1),
        ),
        _ => Term::mul(
            random_term(rng, vars, depth - 1),
            random_term(rng, vars, depth - 1),
        ),
    }
}

/// A quantifier-free arithmetic formula over `vars`.
pub fn random_qf(rng: &mut StdRng, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::eq(random_term(rng, vars, 2), random_term(rng, vars, 2)),
        };
    }
    let op = rng.gen_range(0..4);
    let mut sub = || random_qf(rng, vars, depth - 1);
    match op {
        0 => Formula::and(sub(), sub()),
        1 => Formula::or(sub(), sub()),
        2 => Formula::implies(sub(), sub()),
        _ => Formula::not(sub()),
    }
}

/// An arbitrary formula with quantifiers and predicate atoms.
pub fn random_formula(rng: &mut StdRng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            2 => Formula::prop("p"),
            3 => Formula::pred(
                "R",
                vec![random_term(rng, &VARS, 2), random_term(rng, &VARS, 1)],
            ),
            _ => Formula::eq(random_term(rng, &VARS, 2), random_term(rng, &VARS, 2)),
        };
    }
    let v = VARS[rng.gen_range(0..VARS.len())];
    match rng.gen_range(0..6) {
        0 => Formula::and(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        ),
        1 => Formula::or(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        ),
        2 => Formula::implies(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        ),
        3 => Formula::not(random_formula(rng, depth - 1)),
        4 => Formula::forall(v, random_formula(rng, depth - 1)),
        _ => Formula::exists(v, random_formula(rng, depth - 1)),
    }
}

pub fn random_program(rng: &mut StdRng, max_len: usize, registers: usize) -> Program {
    let n = rng.gen_range(1..=max_len);
    let mut ins: Vec<Instruction> = (0..n - 1)
        .map(|_| match rng.gen_range(0..3) {
            0 => Instruction::Inc(rng.gen_range(0..registers)),
            _ => Instruction::DecJz(rng.gen_range(0..registers), rng.gen_range(0..n)),
        })
        .collect();
    ins.push(Instruction::Halt);
    Program::new(ins).unwrap()
}

// Reference implementations, written from the definitions and sharing no
// code with the library.

/// `2^x (2y + 1) - 1`.
pub fn pair_reference(x: u64, y: u64) -> BigUint {
    (BigUint::from(2 * y + 1) << x) - 1u32
}

/// The inverse of [`pair_reference`] by counting trailing ones.
pub fn unpair_reference(n: u64) -> (u64, u64) {
    let m = n + 1;
    let x = m.trailing_zeros() as u64;
    (x, ((m >> x) - 1) / 2)
}

/// Exponents of the first primes in `n`, by trial division.
pub fn prime_exponents(n: &BigUint) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    let mut p = 2u64;
    let zero = BigUint::from(0u32);
    while m > BigUint::from(1u32) {
        let mut k = 0;
        while &m % p == zero {
            m /= p;
            k += 1;
        }
        if k > 0 {
            out.insert(p, k);
        }
        p += 1;
        if p > 10_000 {
            break;
        }
    }
    out
}

pub fn first_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 2u64;
    while out.len() < n {
        if (2..c).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Classical truth of a quantifier-free arithmetic formula under `env`,
/// by direct recursion with machine integers.
pub fn qf_reference(f: &Formula, env: &BTreeMap<String, u64>) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Eq(a, b) => term_reference(a, env) == term_reference(b, env),
        Formula::And(a, b) => qf_reference(a, env) && qf_reference(b, env),
        Formula::Or(a, b) => qf_reference(a, env) || qf_reference(b, env),
        Formula::Implies(a, b) => !qf_reference(a, env) || qf_reference(b, env),
        Formula::Not(a) => !qf_reference(a, env),
        _ => panic!("not quantifier-free: {f}"),
    }
}

pub fn term_reference(t: &Term, env: &BTreeMap<String, u64>) -> u128 {
    match t {
        Term::Var(v) => u128::from(env[v]),
        Term::App(f, args) => {
            let a: Vec<u128> = args.iter().map(|s| term_reference(s, env)).collect();
            match f.as_str() {
                "0" => 0,
                "S" => a[0] + 1,
                "+" => a[0] + a[1],
                "*" => a[0] * a[1],
                _ => panic!("unexpected symbol {f}"),
            }
        }
    }
}

/// `pack` written out from its description: a leading 1 bit, then the
/// Elias gamma code of `a + 1` for each entry.
pub fn pack_reference(elems: &[BigUint]) -> BigUint {
    let mut bits = String::from("1");
    for a in elems {
        let v = (a + 1u32).to_str_radix(2);
        bits.push_str(&"0".repeat(v.len() - 1));
        bits.push_str(&v);
    }
    BigUint::parse_bytes(bits.as_bytes(), 2).unwrap()
}

fn name_reference(name: &str) -> BigUint {
    BigUint::from_bytes_be(name.as_bytes())
}

fn node_reference(tag: u32, rest: Vec<BigUint>) -> BigUint {
    let mut v = vec![BigUint::from(tag)];
    v.extend(rest);
    pack_reference(&v)
}

/// Gödel number of a term from the published tag table.
pub fn term_code_reference(t: &Term) -> BigUint {
    match t {
        Term::Var(v) => node_reference(1, vec![name_reference(v)]),
        Term::App(f, args) => {
            let sub: Vec<BigUint> = args.iter().map(term_code_reference).collect();
            match (f.as_str(), args.len()) {
                ("0", 0) => node_reference(2, sub),
                ("S", 1) => node_reference(3, sub),
                ("+", 2) => node_reference(4, sub),
                ("*", 2) => node_reference(5, sub),
                _ => {
                    let mut v = vec![name_reference(f)];
                    v.extend(sub);
                    node_reference(6, v)
                }
            }
        }
    }
}

/// Gödel number of a formula from the published tag table.
pub fn formula_code_reference(f: &Formula) -> BigUint {
    let t = term_code_reference;
    let g = formula_code_reference;
    match f {
        Formula::Top => node_reference(10, vec![]),
        Formula::Bottom => node_reference(11, vec![]),
        Formula::Eq(a, b) => node_reference(12, vec![t(a), t(b)]),
        Formula::Pred(p, args) => {
            let mut v = vec![name_reference(p)];
            v.extend(args.iter().map(t));
            node_reference(13, v)
        }
        Formula::And(a, b) => node_reference(14, vec![g(a), g(b)]),
        Formula::Or(a, b) => node_reference(15, vec![g(a), g(b)]),
        Formula::Implies(a, b) => node_reference(16, vec![g(a), g(b)]),
        Formula::Not(a) => node_reference(17, vec![g(a)]),
        Formula::Forall(v, a) => node_reference(18, vec![name_reference(v), g(a)]),
        Formula::Exists(v, a) => node_reference(19, vec![name_reference(v), g(a)]),
    }
}

pub mod proofs;
