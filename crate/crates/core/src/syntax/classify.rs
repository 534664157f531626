use super::Formula;

/// Syntactic complexity flags of a formula.
///
/// The arithmetical classes are read off the quantifier prefix: `Σ1` is an
/// `∃`-prefix over a quantifier-free matrix, `Π1` an `∀`-prefix, and `Π2` an
/// `∀`-block followed by an `∃`-block. Blocks may be empty, so
/// quantifier-free formulas belong to every class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FormulaClass {
    pub is_atomic: bool,
    pub is_quantifier_free: bool,
    pub is_almost_negative: bool,
    pub is_sigma1: bool,
    pub is_pi1: bool,
    pub is_pi2: bool,
}

pub fn classify(f: &Formula) -> FormulaClass {
    let (foralls, rest) = strip(f, true);
    let (exists_after_forall, matrix_pi2) = strip(rest, false);
    let (exists, matrix_sigma) = strip(f, false);
    let qf = f.is_quantifier_free();
    FormulaClass {
        is_atomic: f.is_atomic(),
        is_quantifier_free: qf,
        is_almost_negative: almost_negative(f),
        is_sigma1: matrix_sigma.is_quantifier_free() && (exists > 0 || qf),
        is_pi1: rest.is_quantifier_free() && (foralls > 0 || qf),
        is_pi2: matrix_pi2.is_quantifier_free() && (foralls + exists_after_forall > 0 || qf),
    }
}

fn strip(f: &Formula, universal: bool) -> (usize, &Formula) {
    let mut n = 0;
    let mut cur = f;
    loop {
        match cur {
            Formula::Forall(_, body) if universal => cur = body,
            Formula::Exists(_, body) if !universal => cur = body,
            _ => return (n, cur),
        }
        n += 1;
    }
}

/// No `\/`, and `exists` only immediately in front of an atomic formula.
fn almost_negative(f: &Formula) -> bool {
    match f {
        Formula::Top | Formula::Bottom | Formula::Eq(..) | Formula::Pred(..) => true,
        Formula::Or(..) => false,
        Formula::And(a, b) | Formula::Implies(a, b) => almost_negative(a) && almost_negative(b),
        Formula::Not(a) | Formula::Forall(_, a) => almost_negative(a),
        Formula::Exists(_, a) => a.is_atomic(),
    }
}
