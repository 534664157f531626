//! Twenty hand-built proofs in HA.

use heyting::proofkit::{
    compose_mp, prove_equation, Axiom, AxiomRecognizer, ProofBuilder, ProofObject, Rule, Theory,
};
use heyting::syntax::{parse_formula, parse_term, Formula, Term};

pub fn ha() -> AxiomRecognizer {
    AxiomRecognizer::new(Theory::Ha)
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn equation(rec: &AxiomRecognizer, l: &str, r: &str) -> ProofObject {
    prove_equation(rec, &t(l), &t(r)).unwrap()
}

/// `⊢ ∀x (A → ¬¬A)` for `A = phi(x)`, or `⊢ A → ¬¬A` when `x` is `None`.
fn not_not_intro(rec: &AxiomRecognizer, a: &str, x: Option<&str>) -> ProofObject {
    let a = f(a);
    let na = Formula::not(a.clone());
    let mut b = ProofBuilder::new(rec);
    let hyps = vec![a.clone(), na.clone()];
    let l0 = b.hyp(hyps.clone(), a.clone());
    let l1 = b.hyp(hyps.clone(), na.clone());
    let l2 = b.rule(Rule::NotE, vec![l0, l1], hyps, Formula::Bottom);
    let l3 = b.rule(Rule::NotI, vec![l2], vec![a.clone()], Formula::not(na));
    let imp = Formula::implies(a, b.conclusion(l3).clone());
    let l4 = b.rule(Rule::ImpI, vec![l3], vec![], imp.clone());
    if let Some(x) = x {
        b.rule(Rule::AllI, vec![l4], vec![], Formula::forall(x, imp));
    }
    b.finish()
}

fn compose_chain(rec: &AxiomRecognizer) -> ProofObject {
    let mut b = ProofBuilder::new(rec);
    b.refl(&t("S(0)")).unwrap();
    let p = b.finish();

    let mut b = ProofBuilder::new(rec);
    let q2 = b.axiom(Axiom::Q(2)).unwrap();
    b.inst_all(q2, &[Term::zero(), Term::zero()]);
    let q = b.finish();

    let r1 = compose_mp(&p, &q).unwrap();

    let mut b = ProofBuilder::new(rec);
    let h = b.hyp(vec![f("0 = 0")], f("0 = 0"));
    let o = b.rule(Rule::OrI1, vec![h], vec![f("0 = 0")], f("0 = 0 \\/ false"));
    b.rule(Rule::ImpI, vec![o], vec![], f("0 = 0 -> 0 = 0 \\/ false"));
    let r2 = compose_mp(&r1, &b.finish()).unwrap();

    compose_mp(&r2, &not_not_intro(rec, "0 = 0 \\/ false", None)).unwrap()
}

pub fn corpus() -> Vec<(&'static str, ProofObject)> {
    let rec = ha();
    let rec = &rec;
    let mut out = vec![
        ("S0+S0=SS0", equation(rec, "S(0) + S(0)", "S(S(0))")),
        (
            "SS0*S0=S0+S0",
            equation(rec, "S(S(0)) * S(0)", "S(0) + S(0)"),
        ),
        ("S0*SS0=SS0", equation(rec, "S(0) * S(S(0))", "S(S(0))")),
        ("compose chain", compose_chain(rec)),
    ];

    let mut b = ProofBuilder::new(rec);
    let l0 = b.hyp(vec![f("x = 0")], f("x = 0"));
    let l1 = b.rule(Rule::ImpI, vec![l0], vec![], f("x = 0 -> x = 0"));
    b.rule(Rule::AllI, vec![l1], vec![], f("forall x. x = 0 -> x = 0"));
    out.push(("identity", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let h = vec![f("x = 0 /\\ y = 0")];
    let l0 = b.hyp(h.clone(), f("x = 0 /\\ y = 0"));
    let l1 = b.rule(Rule::AndE2, vec![l0], h.clone(), f("y = 0"));
    let l2 = b.rule(Rule::AndE1, vec![l0], h.clone(), f("x = 0"));
    let l3 = b.rule(Rule::AndI, vec![l1, l2], h, f("y = 0 /\\ x = 0"));
    let l4 = b.rule(
        Rule::ImpI,
        vec![l3],
        vec![],
        f("x = 0 /\\ y = 0 -> y = 0 /\\ x = 0"),
    );
    let l5 = b.rule(
        Rule::AllI,
        vec![l4],
        vec![],
        f("forall y. x = 0 /\\ y = 0 -> y = 0 /\\ x = 0"),
    );
    b.rule(
        Rule::AllI,
        vec![l5],
        vec![],
        f("forall x. forall y. x = 0 /\\ y = 0 -> y = 0 /\\ x = 0"),
    );
    out.push(("and commutes", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let (a, c) = (f("x = 0"), f("S(x) = 0"));
    let h = f("x = 0 \\/ S(x) = 0");
    let goal = f("S(x) = 0 \\/ x = 0");
    let l0 = b.hyp(vec![h.clone()], h.clone());
    let l1 = b.hyp(vec![a.clone()], a.clone());
    let l2 = b.rule(Rule::OrI2, vec![l1], vec![a], goal.clone());
    let l3 = b.hyp(vec![c.clone()], c.clone());
    let l4 = b.rule(Rule::OrI1, vec![l3], vec![c], goal.clone());
    let l5 = b.rule(Rule::OrE, vec![l0, l2, l4], vec![h.clone()], goal.clone());
    let l6 = b.rule(
        Rule::ImpI,
        vec![l5],
        vec![],
        Formula::implies(h.clone(), goal.clone()),
    );
    b.rule(
        Rule::AllI,
        vec![l6],
        vec![],
        Formula::forall("x", Formula::implies(h, goal)),
    );
    out.push(("or commutes", b.finish()));

    out.push(("double negation", not_not_intro(rec, "x = 0", Some("x"))));

    let mut b = ProofBuilder::new(rec);
    let l0 = b.hyp(vec![Formula::Bottom], Formula::Bottom);
    let l1 = b.rule(Rule::BotE, vec![l0], vec![Formula::Bottom], f("0 = S(0)"));
    b.rule(Rule::ImpI, vec![l1], vec![], f("false -> 0 = S(0)"));
    out.push(("ex falso", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let h = vec![f("forall x. x = x")];
    let l0 = b.hyp(h.clone(), f("forall x. x = x"));
    let l1 = b.rule(Rule::AllE, vec![l0], h.clone(), f("0 = 0"));
    let l2 = b.rule(Rule::ExI, vec![l1], h, f("exists x. x = x"));
    b.rule(
        Rule::ImpI,
        vec![l2],
        vec![],
        f("(forall x. x = x) -> exists x. x = x"),
    );
    out.push(("forall to exists", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let q1 = b.axiom(Axiom::Q(1)).unwrap();
    let l1 = b.inst(q1, &Term::zero());
    b.rule(Rule::ExI, vec![l1], vec![], f("exists x. ~S(x) = 0"));
    out.push(("Q1 witness", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let (hx, g) = (f("exists x. x = 0"), f("forall x. ~x = 0"));
    let inner = vec![f("x = 0"), g.clone()];
    let l0 = b.hyp(vec![hx.clone()], hx.clone());
    let l1 = b.hyp(inner.clone(), f("x = 0"));
    let l2 = b.hyp(inner.clone(), g.clone());
    let l3 = b.rule(Rule::AllE, vec![l2], inner.clone(), f("~x = 0"));
    let l4 = b.rule(Rule::NotE, vec![l1, l3], inner, Formula::Bottom);
    let l5 = b.rule(
        Rule::ExE,
        vec![l0, l4],
        vec![hx.clone(), g.clone()],
        Formula::Bottom,
    );
    let l6 = b.rule(
        Rule::NotI,
        vec![l5],
        vec![hx.clone()],
        Formula::not(g.clone()),
    );
    b.rule(
        Rule::ImpI,
        vec![l6],
        vec![],
        Formula::implies(hx, Formula::not(g)),
    );
    out.push(("exists refutes forall-not", b.finish()));

    let mut b = ProofBuilder::new(rec);
    b.axiom(Axiom::EqRefl).unwrap();
    out.push(("reflexivity", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let ind = b
        .axiom(Axiom::Induction {
            phi: f("0 + x = x"),
            var: "x".into(),
        })
        .unwrap();
    let q4 = b.axiom(Axiom::Q(4)).unwrap();
    let base = b.inst(q4, &Term::zero());
    let h = b.hyp(vec![f("0 + x = x")], f("0 + x = x"));
    let q5 = b.axiom(Axiom::Q(5)).unwrap();
    let q5 = b.inst_all(q5, &[Term::zero(), Term::var("x")]);
    let c = b.cong("S", &[t("0 + x")], 0, h).unwrap();
    let step = b.trans(q5, c).unwrap();
    let imp = b.rule(
        Rule::ImpI,
        vec![step],
        vec![],
        f("0 + x = x -> 0 + S(x) = S(x)"),
    );
    let all = b.rule(
        Rule::AllI,
        vec![imp],
        vec![],
        f("forall x. 0 + x = x -> 0 + S(x) = S(x)"),
    );
    let conj = b.rule(
        Rule::AndI,
        vec![base, all],
        vec![],
        f("0 + 0 = 0 /\\ forall x. 0 + x = x -> 0 + S(x) = S(x)"),
    );
    b.mp(conj, ind);
    out.push(("induction: 0 + x = x", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let q3 = b.axiom(Axiom::Q(3)).unwrap();
    let l1 = b.inst(q3, &Term::var("x"));
    let concl = Formula::forall("x", b.conclusion(l1).clone());
    b.rule(Rule::AllI, vec![l1], vec![], concl);
    out.push(("Q3 regeneralised", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let q1 = b.axiom(Axiom::Q(1)).unwrap();
    b.inst(q1, &Term::zero());
    out.push(("S0 is not 0", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let q2 = b.axiom(Axiom::Q(2)).unwrap();
    b.inst_all(q2, &[Term::zero(), t("S(0)")]);
    out.push(("Q2 instance", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let (a, c) = (f("x = 0"), f("S(x) = 0"));
    let h = Formula::implies(a.clone(), c.clone());
    let (na, nc) = (Formula::not(a.clone()), Formula::not(c.clone()));
    let all3 = vec![h.clone(), nc.clone(), a.clone()];
    let l0 = b.hyp(all3.clone(), a);
    let l1 = b.hyp(all3.clone(), h.clone());
    let l2 = b.rule(Rule::ImpE, vec![l0, l1], all3.clone(), c);
    let l3 = b.hyp(all3.clone(), nc.clone());
    let l4 = b.rule(Rule::NotE, vec![l2, l3], all3, Formula::Bottom);
    let l5 = b.rule(
        Rule::NotI,
        vec![l4],
        vec![h.clone(), nc.clone()],
        na.clone(),
    );
    let inner = Formula::implies(nc, na);
    let l6 = b.rule(Rule::ImpI, vec![l5], vec![h.clone()], inner.clone());
    let whole = Formula::implies(h, inner);
    let l7 = b.rule(Rule::ImpI, vec![l6], vec![], whole.clone());
    b.rule(Rule::AllI, vec![l7], vec![], Formula::forall("x", whole));
    out.push(("contraposition", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let h = b.hyp(vec![f("x = y")], f("x = y"));
    let s = b.symm(h).unwrap();
    let l = b.rule(Rule::ImpI, vec![s], vec![], f("x = y -> y = x"));
    let l = b.rule(Rule::AllI, vec![l], vec![], f("forall y. x = y -> y = x"));
    b.rule(
        Rule::AllI,
        vec![l],
        vec![],
        f("forall x. forall y. x = y -> y = x"),
    );
    out.push(("symmetry", b.finish()));

    let mut b = ProofBuilder::new(rec);
    let hx = f("forall x. x = 0 /\\ S(x) = S(0)");
    let h = vec![hx.clone()];
    let l0 = b.hyp(h.clone(), hx.clone());
    let l1 = b.rule(Rule::AllE, vec![l0], h.clone(), f("x = 0 /\\ S(x) = S(0)"));
    let l2 = b.rule(Rule::AndE1, vec![l1], h.clone(), f("x = 0"));
    let l3 = b.rule(Rule::AllI, vec![l2], h, f("forall x. x = 0"));
    b.rule(
        Rule::ImpI,
        vec![l3],
        vec![],
        Formula::implies(hx, f("forall x. x = 0")),
    );
    out.push(("forall distributes over and", b.finish()));

    out
}
