use super::*;

fn unary() -> Arc<Language> {
    Language::new(vec![("c".into(), 0)], vec![("P".into(), 1)]).unwrap()
}

fn prop() -> Arc<Language> {
    Language::new(vec![], vec![("p".into(), 0)]).unwrap()
}

fn two_chain() -> KripkeModel {
    model_from_toml(
        r#"
nodes = ["r", "a"]
order = [["r", "a"]]
[signature]
predicates = { p = 0 }
[structure.r]
domain = [0]
[structure.a]
domain = [0]
facts = ["p"]
"#,
    )
    .unwrap()
}

#[test]
fn chain_example() {
    let m = two_chain();
    assert!(validate_model(&m).is_empty());
    let r = m.index("r").unwrap();
    let f = |s: &str| m.parse(s).unwrap();
    assert!(forces(&m, r, &f("~~p")).unwrap());
    assert!(!forces(&m, r, &f("p")).unwrap());
    assert!(!forces(&m, r, &f("p \\/ ~p")).unwrap());
    assert!(forces(&m, 1, &f("p \\/ ~p")).unwrap());
    for k in 0..2 {
        assert!(forces(&m, k, &Formula::Top).unwrap());
        assert!(!forces(&m, k, &Formula::Bottom).unwrap());
    }
}

#[test]
fn single_node() {
    let lang = prop();
    let mut s = Structure::new(&lang, [0]);
    s.add_fact("p", &[]).unwrap();
    let m = KripkeModel::new(&lang, vec![("k".into(), s)], &[], ModelKind::Finite).unwrap();
    assert!(validate_model(&m).is_empty());
    assert!(forces(&m, 0, &Formula::prop("p")).unwrap());
}

#[test]
fn violations() {
    let lang = unary();
    let mut lo = Structure::new(&lang, [0, 1]);
    lo.set_function("c", &[], 0).unwrap();
    lo.add_fact("P", &[1]).unwrap();
    let mut hi = Structure::new(&lang, [0, 1]);
    hi.set_function("c", &[], 0).unwrap();
    let m = KripkeModel::new(
        &lang,
        vec![("r".into(), lo.clone()), ("a".into(), hi)],
        &[(0, 1)],
        ModelKind::Finite,
    )
    .unwrap();
    let v = validate_model(&m);
    assert_eq!(
        v,
        vec![Violation::AtomLost {
            lower: "r".into(),
            upper: "a".into(),
            atom: "P(e1)".into()
        }]
    );

    let mut small = Structure::new(&lang, [0]);
    small.set_function("c", &[], 0).unwrap();
    let m = KripkeModel::new(
        &lang,
        vec![("r".into(), lo), ("a".into(), small)],
        &[(0, 1)],
        ModelKind::Finite,
    )
    .unwrap();
    let v = validate_model(&m);
    assert!(v.contains(&Violation::DomainShrinks {
        lower: "r".into(),
        upper: "a".into(),
        element: "e1".into()
    }));
}

#[test]
fn partial_tables_and_cycles() {
    let lang = unary();
    let s = Structure::new(&lang, [0]);
    let m = KripkeModel::new(
        &lang,
        vec![("a".into(), s.clone()), ("b".into(), s)],
        &[(0, 1), (1, 0)],
        ModelKind::Finite,
    )
    .unwrap();
    let v = validate_model(&m);
    assert!(v
        .iter()
        .any(|x| matches!(x, Violation::NotAntisymmetric { .. })));
    assert!(v.iter().any(|x| matches!(x, Violation::Undefined { .. })));
}

#[test]
fn classical() {
    let lang = unary();
    let mut s = Structure::new(&lang, [0]);
    s.set_function("c", &[], 0).unwrap();
    let f = |t: &str| parse_sentence(&lang, t).unwrap();
    assert!(classical_sat(&s, &f("forall x. x = x")).unwrap());
    assert!(!classical_sat(&s, &f("exists x. P(x)")).unwrap());
    s.add_fact("P", &[0]).unwrap();
    assert!(classical_sat(&s, &f("exists x. P(x)")).unwrap());
    assert!(classical_sat(&s, &f("P(e0) /\\ c = e0")).unwrap());
    assert_eq!(
        classical_sat(&s, &f("P(e3)")),
        Err(KripkeError::OutsideDomain("e3".into()))
    );
    assert!(parse_sentence(&lang, "Q(c)").is_err());
    assert!(parse_sentence(&lang, "P(y)").is_err());
}

#[test]
fn diagrams() {
    let lang = Language::new(vec![], vec![("P".into(), 1)]).unwrap();
    let s = Structure::new(&lang, [0]);
    let d = diagram(&s);
    assert!(d.positive.is_empty());
    let neg = Formula::not(parse_sentence(&lang, "P(e0)").unwrap());
    assert!(d.full().contains(&neg));

    let lang = unary();
    let mut s = Structure::new(&lang, [0, 1, 2]);
    s.set_function("c", &[], 2).unwrap();
    s.add_fact("P", &[1]).unwrap();
    let d = diagram(&s);
    assert_eq!(d.positive.len() + d.negative.len(), 3 + 3);
    for a in &d.positive {
        assert!(classical_sat(&s, a).unwrap());
    }
    for a in &d.negative {
        assert!(!classical_sat(&s, a).unwrap());
    }
}

#[test]
fn frontier_collapse() {
    let m = two_chain().with_kind(ModelKind::EventuallyConstant { frontier_depth: 1 });
    assert!(validate_model(&m).is_empty());
    assert!(m.is_frontier(1) && !m.is_frontier(0));
    let f = m.parse("p \\/ ~p").unwrap();
    assert!(forces(&m, 1, &f).unwrap());
    assert!(!forces(&m, 0, &f).unwrap());
    let shallow = two_chain().with_kind(ModelKind::EventuallyConstant { frontier_depth: 0 });
    assert_eq!(validate_model(&shallow).len(), 1);
}

struct Corrupt;

impl ForcingOracle for Corrupt {
    fn forces(&self, m: &KripkeModel, k: usize, phi: &Formula) -> Result<bool, KripkeError> {
        let r = forces(m, k, phi)?;
        Ok(if m.root() == Some(k) { !r } else { r })
    }
}

#[test]
fn harness_catches_faulty_oracle() {
    let m = two_chain();
    let s = sentences(m.language(), 2);
    assert!(check_monotonicity(&m, &s));
    assert!(monotonicity_violations(&m, &s, &Recursive).is_empty());
    assert!(!monotonicity_violations(&m, &s, &Corrupt).is_empty());
}

#[test]
fn bulk_matches_recursive() {
    let m = two_chain();
    for phi in sentences(m.language(), 3) {
        let bulk = forced_nodes(&m, &phi).unwrap();
        let rec = Recursive.forced_nodes(&m, &phi).unwrap();
        assert_eq!(bulk, rec, "{}", Sentence(&phi));
    }
}

#[test]
fn enumeration() {
    let lang = unary();
    let s0 = sentences(&lang, 0);
    assert_eq!(s0.len(), 2);
    let s1 = sentences(&lang, 1);
    // ¬ and the binary connectives over the two atoms, quantifiers over the
    // four atoms in scope of x0
    assert_eq!(s1.len(), 2 + 2 + 3 * 4 + 2 * 4);
    assert!(s1.iter().all(|f| f.free_vars().is_empty()));
    let mut sorted = sentences(&lang, 2);
    let n = sorted.len();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), n);
}

#[test]
fn toml_round_trip() {
    let m = two_chain();
    let text = model_to_toml(&m);
    let back = model_from_toml(&text).unwrap();
    assert_eq!(back.names(), m.names());
    assert_eq!(back.structures(), m.structures());
    assert!(back.leq(0, 1) && !back.leq(1, 0));

    let bad =
        model_from_toml("nodes = [\"a\"]\n[structure.a]\ndomain = [0]\nfacts = [\"Q(e0)\"]\n");
    assert!(matches!(bad, Err(KripkeError::File(m)) if m.contains("fact 1")));
}
