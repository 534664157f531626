use std::collections::BTreeSet;

use super::{
    Axiom, AxiomRecognizer, Justification, ProofError, ProofLine, ProofObject, Rule, Sequent,
};
use crate::syntax::{fresh_name, Formula, PrBody, Term, ADD, MUL, SUCC, ZERO};

/// Largest intermediate value the equation prover will write as a numeral.
const MAX_VALUE: u64 = 10_000;

/// Appends lines and hands back their indices.
pub struct ProofBuilder<'a> {
    rec: &'a AxiomRecognizer,
    lines: Vec<ProofLine>,
}

fn union(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    let mut out = a.to_vec();
    for h in b {
        if !out.contains(h) {
            out.push(h.clone());
        }
    }
    out
}

impl<'a> ProofBuilder<'a> {
    pub fn new(rec: &'a AxiomRecognizer) -> Self {
        ProofBuilder {
            rec,
            lines: Vec::new(),
        }
    }

    pub fn conclusion(&self, l: usize) -> &Formula {
        &self.lines[l].sequent.conclusion
    }

    pub fn hypotheses(&self, l: usize) -> &[Formula] {
        &self.lines[l].sequent.hypotheses
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn push(&mut self, line: ProofLine) -> usize {
        self.lines.push(line);
        self.lines.len() - 1
    }

    pub fn rule(
        &mut self,
        rule: Rule,
        premises: Vec<usize>,
        hyps: Vec<Formula>,
        concl: Formula,
    ) -> usize {
        self.push(ProofLine::rule(rule, premises, Sequent::new(hyps, concl)))
    }

    pub fn axiom(&mut self, a: Axiom) -> Result<usize, ProofError> {
        let phi = self.rec.require(&a)?;
        Ok(self.push(ProofLine::axiom(&a, phi)))
    }

    pub fn hyp(&mut self, hyps: Vec<Formula>, phi: Formula) -> usize {
        self.rule(Rule::Hyp, vec![], hyps, phi)
    }

    /// From `a` and `a → b`, conclude `b`.
    pub fn mp(&mut self, a: usize, ab: usize) -> usize {
        let Formula::Implies(_, b) = self.conclusion(ab).clone() else {
            panic!("mp: line {ab} is not an implication");
        };
        let hyps = union(self.hypotheses(a), self.hypotheses(ab));
        self.rule(Rule::ImpE, vec![a, ab], hyps, *b)
    }

    /// From `∀x φ`, conclude `φ[x := t]`.
    pub fn inst(&mut self, l: usize, t: &Term) -> usize {
        let Formula::Forall(x, phi) = self.conclusion(l).clone() else {
            panic!("inst: line {l} is not universal");
        };
        let hyps = self.hypotheses(l).to_vec();
        self.rule(Rule::AllE, vec![l], hyps, phi.substitute(&x, t))
    }

    pub fn inst_all(&mut self, mut l: usize, ts: &[Term]) -> usize {
        for t in ts {
            l = self.inst(l, t);
        }
        l
    }

    /// `t = t`.
    pub fn refl(&mut self, t: &Term) -> Result<usize, ProofError> {
        let ax = self.axiom(Axiom::EqRefl)?;
        Ok(self.inst(ax, t))
    }

    /// `s = t → (φ[z:=s] → φ[z:=t])`.
    pub fn eq_subst(
        &mut self,
        phi: &Formula,
        z: &str,
        s: &Term,
        t: &Term,
    ) -> Result<usize, ProofError> {
        let mut l = self.axiom(Axiom::EqSubst {
            phi: phi.clone(),
            var: z.to_string(),
        })?;
        let mut f = self.conclusion(l).clone();
        let mut binders = Vec::new();
        while let Formula::Forall(v, body) = f {
            binders.push(v);
            f = *body;
        }
        let Formula::Implies(eq, _) = &f else {
            unreachable!()
        };
        let Formula::Eq(Term::Var(a), Term::Var(b)) = &**eq else {
            unreachable!()
        };
        for v in binders {
            let by = if v == *a {
                s.clone()
            } else if v == *b {
                t.clone()
            } else {
                Term::var(v)
            };
            l = self.inst(l, &by);
        }
        Ok(l)
    }

    fn fresh_for(terms: &[&Term]) -> String {
        let mut avoid = BTreeSet::new();
        for t in terms {
            avoid.extend(t.free_vars());
        }
        fresh_name("z", &avoid)
    }

    fn eq_sides(&self, l: usize) -> (Term, Term) {
        match self.conclusion(l) {
            Formula::Eq(a, b) => (a.clone(), b.clone()),
            f => panic!("line {l} is not an equation: {f}"),
        }
    }

    /// From `a = b`, conclude `b = a`.
    pub fn symm(&mut self, l: usize) -> Result<usize, ProofError> {
        let (a, b) = self.eq_sides(l);
        let z = Self::fresh_for(&[&a, &b]);
        let phi = Formula::eq(Term::var(&z), a.clone());
        let ax = self.eq_subst(&phi, &z, &a, &b)?;
        let step = self.mp(l, ax);
        let r = self.refl(&a)?;
        Ok(self.mp(r, step))
    }

    /// From `a = b` and `b = c`, conclude `a = c`.
    pub fn trans(&mut self, l1: usize, l2: usize) -> Result<usize, ProofError> {
        let (a, b) = self.eq_sides(l1);
        let (b2, c) = self.eq_sides(l2);
        assert_eq!(b, b2, "trans: middle terms differ");
        let z = Self::fresh_for(&[&a, &b, &c]);
        let phi = Formula::eq(a.clone(), Term::var(&z));
        let ax = self.eq_subst(&phi, &z, &b, &c)?;
        let step = self.mp(l2, ax);
        Ok(self.mp(l1, step))
    }

    /// From `a = b` with `args[i] = a`, conclude `f(args) = f(args[i := b])`.
    pub fn cong(
        &mut self,
        f: &str,
        args: &[Term],
        i: usize,
        l: usize,
    ) -> Result<usize, ProofError> {
        let (a, b) = self.eq_sides(l);
        assert_eq!(args[i], a, "cong: argument does not match the equation");
        let whole = Term::app(f, args.to_vec());
        let mut refs: Vec<&Term> = args.iter().collect();
        refs.push(&b);
        let z = Self::fresh_for(&refs);
        let mut hole = args.to_vec();
        hole[i] = Term::var(&z);
        let phi = Formula::eq(whole.clone(), Term::app(f, hole));
        let ax = self.eq_subst(&phi, &z, &a, &b)?;
        let step = self.mp(l, ax);
        let r = self.refl(&whole)?;
        Ok(self.mp(r, step))
    }

    /// Chain `l1: a = b` with `l2: b = c` unless one side is trivial.
    fn then(&mut self, l1: usize, l2: usize) -> Result<usize, ProofError> {
        let (a, b) = self.eq_sides(l1);
        let (_, c) = self.eq_sides(l2);
        if a == b {
            return Ok(l2);
        }
        if b == c {
            return Ok(l1);
        }
        self.trans(l1, l2)
    }

    /// A line proving `t = n` for the numeral `n` of `t`'s value.
    pub fn evaluate(&mut self, t: &Term) -> Result<(usize, u64), ProofError> {
        match t {
            Term::Var(v) => Err(ProofError::Unsupported(format!("free variable `{v}`"))),
            Term::App(f, args) => {
                let mut current = args.clone();
                let mut values = Vec::new();
                let mut line: Option<usize> = None;
                for i in 0..args.len() {
                    let (l, v) = self.evaluate(&args[i])?;
                    values.push(v);
                    let (a, b) = self.eq_sides(l);
                    if a == b {
                        continue;
                    }
                    let c = self.cong(f, &current, i, l)?;
                    current[i] = b;
                    line = Some(match line {
                        Some(prev) => self.trans(prev, c)?,
                        None => c,
                    });
                }
                let (l, v) = self.apply(f, &values)?;
                let l = match line {
                    Some(prev) => self.then(prev, l)?,
                    None => l,
                };
                Ok((l, v))
            }
        }
    }

    /// A line proving `f(n̄s) = k̄`.
    fn apply(&mut self, f: &str, ns: &[u64]) -> Result<(usize, u64), ProofError> {
        let num = |n: u64| Term::numeral(n);
        let nums: Vec<Term> = ns.iter().map(|&n| num(n)).collect();
        let bound = |v: u64| {
            if v > MAX_VALUE {
                Err(ProofError::Unsupported(format!(
                    "intermediate value {v} is too large"
                )))
            } else {
                Ok(v)
            }
        };
        match f {
            _ if f == ZERO => Ok((self.refl(&Term::zero())?, 0)),
            _ if f == SUCC => Ok((self.refl(&Term::succ(nums[0].clone()))?, bound(ns[0] + 1)?)),
            _ if f == ADD => self.add(ns[0], ns[1]),
            _ if f == MUL => self.mul(ns[0], ns[1]),
            _ => {
                let Some(d) = self.rec.signature().pr_definition(f).cloned() else {
                    return Err(ProofError::Unsupported(format!(
                        "`{f}` has no defining equations"
                    )));
                };
                match &d.body {
                    PrBody::Zero => {
                        let ax = self.pr(f, 0)?;
                        Ok((self.inst_all(ax, &nums), 0))
                    }
                    PrBody::Successor => {
                        let ax = self.pr(f, 0)?;
                        Ok((self.inst_all(ax, &nums), bound(ns[0] + 1)?))
                    }
                    PrBody::Projection(i) => {
                        let ax = self.pr(f, 0)?;
                        Ok((self.inst_all(ax, &nums), ns[*i]))
                    }
                    PrBody::Composition { .. } => {
                        let ax = self.pr(f, 0)?;
                        let def = self.inst_all(ax, &nums);
                        let (_, rhs) = self.eq_sides(def);
                        let (l, v) = self.evaluate(&rhs)?;
                        Ok((self.then(def, l)?, v))
                    }
                    PrBody::Recursion { base, step } => {
                        let rest: Vec<Term> = nums[1..].to_vec();
                        if ns[0] == 0 {
                            let ax = self.pr(f, 0)?;
                            let def = self.inst_all(ax, &rest);
                            let (l, v) = self.apply(base, &ns[1..])?;
                            return Ok((self.then(def, l)?, v));
                        }
                        let c = ns[0] - 1;
                        let ax = self.pr(f, 1)?;
                        let mut args = vec![num(c)];
                        args.extend(rest.iter().cloned());
                        let def = self.inst_all(ax, &args);
                        let mut inner = vec![c];
                        inner.extend(&ns[1..]);
                        let (lr, r) = self.apply(f, &inner)?;
                        let mut step_args = vec![num(c), Term::app(f, args.clone())];
                        step_args.extend(rest.iter().cloned());
                        let eq = self.cong(step, &step_args, 1, lr)?;
                        let l1 = self.then(def, eq)?;
                        let mut vals = vec![c, r];
                        vals.extend(&ns[1..]);
                        let (ls, v) = self.apply(step, &vals)?;
                        Ok((self.then(l1, ls)?, v))
                    }
                }
            }
        }
    }

    fn pr(&mut self, name: &str, clause: u8) -> Result<usize, ProofError> {
        self.axiom(Axiom::Pr {
            name: name.to_string(),
            clause,
        })
    }

    /// `n̄ + m̄ = k̄`.
    fn add(&mut self, n: u64, m: u64) -> Result<(usize, u64), ProofError> {
        let num = Term::numeral;
        if m == 0 {
            let ax = self.axiom(Axiom::Q(4))?;
            return Ok((self.inst(ax, &num(n)), n));
        }
        let ax = self.axiom(Axiom::Q(5))?;
        let def = self.inst_all(ax, &[num(n), num(m - 1)]);
        let (l, k) = self.add(n, m - 1)?;
        let c = self.cong(SUCC, &[Term::add(num(n), num(m - 1))], 0, l)?;
        let v = k + 1;
        if v > MAX_VALUE {
            return Err(ProofError::Unsupported(format!(
                "intermediate value {v} is too large"
            )));
        }
        Ok((self.trans(def, c)?, v))
    }

    /// `n̄ * m̄ = k̄`.
    fn mul(&mut self, n: u64, m: u64) -> Result<(usize, u64), ProofError> {
        let num = Term::numeral;
        if m == 0 {
            let ax = self.axiom(Axiom::Q(6))?;
            return Ok((self.inst(ax, &num(n)), 0));
        }
        let ax = self.axiom(Axiom::Q(7))?;
        let def = self.inst_all(ax, &[num(n), num(m - 1)]);
        let (l, p) = self.mul(n, m - 1)?;
        let c = self.cong(ADD, &[Term::mul(num(n), num(m - 1)), num(n)], 0, l)?;
        let l1 = self.then(def, c)?;
        let (l2, q) = self.add(p, n)?;
        Ok((self.then(l1, l2)?, q))
    }

    /// Make line `l` the last line by passing through `φ ∧ φ`.
    pub fn restate(&mut self, l: usize) -> usize {
        if l + 1 == self.lines.len() {
            return l;
        }
        let phi = self.conclusion(l).clone();
        let hyps = self.hypotheses(l).to_vec();
        let other = (0..self.lines.len()).rev().find(|&m| {
            self.conclusion(m) != &phi && self.hypotheses(m).iter().all(|h| hyps.contains(h))
        });
        let Some(m) = other else {
            let both = self.rule(
                Rule::AndI,
                vec![l, l],
                hyps.clone(),
                Formula::and(phi.clone(), phi.clone()),
            );
            return self.rule(Rule::AndE1, vec![both], hyps, phi);
        };
        let psi = self.conclusion(m).clone();
        let both = self.rule(
            Rule::AndI,
            vec![l, m],
            hyps.clone(),
            Formula::and(phi.clone(), psi),
        );
        self.rule(Rule::AndE1, vec![both], hyps, phi)
    }

    pub fn finish(self) -> ProofObject {
        ProofObject::new(self.lines)
    }
}

/// A proof of the closed equation `t = s` by computing both sides from the
/// defining equations.
pub fn prove_equation(
    rec: &AxiomRecognizer,
    t: &Term,
    s: &Term,
) -> Result<ProofObject, ProofError> {
    let mut b = ProofBuilder::new(rec);
    let (lt, a) = b.evaluate(t)?;
    let (ls, c) = b.evaluate(s)?;
    if a != c {
        return Err(ProofError::False(format!("{t} = {a} but {s} = {c}")));
    }
    let back = if t == s {
        lt
    } else {
        let sym = if matches!(b.conclusion(ls), Formula::Eq(x, y) if x == y) {
            ls
        } else {
            b.symm(ls)?
        };
        b.then(lt, sym)?
    };
    debug_assert_eq!(*b.conclusion(back), Formula::eq(t.clone(), s.clone()));
    b.restate(back);
    Ok(b.finish())
}

/// From a proof of `φ` and a proof of `φ → ψ`, a proof of `ψ`.
pub fn compose_mp(p: &ProofObject, q: &ProofObject) -> Result<ProofObject, ProofError> {
    let phi = p
        .conclusion()
        .ok_or_else(|| ProofError::Unsupported("empty proof".into()))?;
    let imp = q
        .conclusion()
        .ok_or_else(|| ProofError::Unsupported("empty proof".into()))?;
    let Formula::Implies(a, b) = imp else {
        return Err(ProofError::Mismatch {
            expected: format!("{phi} -> ..."),
            found: imp.to_string(),
        });
    };
    if **a != *phi {
        return Err(ProofError::Mismatch {
            expected: phi.to_string(),
            found: a.to_string(),
        });
    }
    let shift = p.len();
    let mut lines = p.lines.clone();
    lines.extend(q.lines.iter().map(|line| ProofLine {
        sequent: line.sequent.clone(),
        justification: match &line.justification {
            Justification::Rule(r, ps) => {
                Justification::Rule(*r, ps.iter().map(|&j| j + shift).collect())
            }
            j => j.clone(),
        },
    }));
    let n = lines.len();
    lines.push(ProofLine::rule(
        Rule::ImpE,
        vec![shift - 1, n - 1],
        Sequent::closed((**b).clone()),
    ));
    Ok(ProofObject::new(lines))
}
