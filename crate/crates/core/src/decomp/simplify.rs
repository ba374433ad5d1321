use super::expr::{Monomial, ThetaExpr};
use crate::thetafun::ThetaIndex;
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// A rewrite `lhs[0] + lhs[1] → Σ rhs`, each side a list of theta products.
struct Rule {
    lhs: [[ThetaIndex; 2]; 2],
    rhs: Vec<(i64, Vec<ThetaIndex>)>,
}

fn t(m: i64, b: i64) -> ThetaIndex {
    ThetaIndex::int(m, b)
}

fn rules() -> Vec<Rule> {
    vec![
        // θ_{2,2}θ_{6,0} + θ_{2,0}θ_{6,6} = 2θ_{2,1}θ_{6,3}
        Rule {
            lhs: [[t(2, 2), t(6, 0)], [t(2, 0), t(6, 6)]],
            rhs: vec![(2, vec![t(2, 1), t(6, 3)])],
        },
        // θ_{2,2}θ_{6,4} + θ_{2,0}θ_{6,2} = θ_{2,1}(θ_{6,1} + θ_{6,5})
        Rule {
            lhs: [[t(2, 2), t(6, 4)], [t(2, 0), t(6, 2)]],
            rhs: vec![(1, vec![t(2, 1), t(6, 1)]), (1, vec![t(2, 1), t(6, 5)])],
        },
    ]
}

/// Finds one applicable rewrite and returns the rewritten expression.
fn rewrite_once(e: &ThetaExpr, rules: &[Rule]) -> Option<ThetaExpr> {
    for rule in rules {
        for (m, c) in e.terms() {
            let Some(rest) = m.divide(&rule.lhs[0]) else { continue };
            let partner = rest.mul(&Monomial::new(rule.lhs[1].to_vec(), Rational64::zero()));
            let c2 = e.coeff(&partner);
            if c2.is_zero() || c2.is_negative() != c.is_negative() {
                continue;
            }
            let amount = if c.abs() < c2.abs() { c.clone() } else { c2 };
            let mut out = e.clone();
            out.add_term(m.clone(), -amount.clone());
            out.add_term(partner, -amount.clone());
            for (k, fs) in &rule.rhs {
                let mono = rest.mul(&Monomial::new(fs.clone(), Rational64::zero()));
                out.add_term(mono, &amount * BigInt::from(*k));
            }
            return Some(out);
        }
    }
    None
}

/// Rewrites with the two level-six theta product identities until no rule
/// applies. Each step removes `θ_{2,0}`/`θ_{2,2}` factors, so this terminates.
pub fn sym_simplify(e: &ThetaExpr) -> ThetaExpr {
    let rules = rules();
    let mut cur = e.clone();
    while let Some(next) = rewrite_once(&cur, &rules) {
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::h_vector;
    use crate::int;

    #[test]
    fn first_identity() {
        let e = ThetaExpr::from_products(&[(1, &[t(2, 2), t(6, 0)]), (1, &[t(2, 0), t(6, 6)])]);
        assert_eq!(sym_simplify(&e), ThetaExpr::from_products(&[(2, &[t(2, 1), t(6, 3)])]));
    }

    #[test]
    fn second_identity() {
        let e = ThetaExpr::from_products(&[(1, &[t(2, 2), t(6, 4)]), (1, &[t(2, 0), t(6, 2)])]);
        let want = ThetaExpr::from_products(&[(1, &[t(2, 1), t(6, 1)]), (1, &[t(2, 1), t(6, 5)])]);
        assert_eq!(sym_simplify(&e), want);
    }

    #[test]
    fn unmatched_is_fixed() {
        let e = ThetaExpr::from_products(&[(1, &[t(2, 2), t(6, 6)]), (3, &[t(2, 0), t(6, 0)])]);
        assert_eq!(sym_simplify(&e), e);
        let opposite = ThetaExpr::from_products(&[(1, &[t(2, 2), t(6, 0)]), (-1, &[t(2, 0), t(6, 6)])]);
        assert_eq!(sym_simplify(&opposite), opposite);
    }

    #[test]
    fn partial_match_keeps_remainder() {
        let e = ThetaExpr::from_products(&[(3, &[t(1, 0), t(2, 2), t(6, 0)]), (1, &[t(1, 0), t(2, 0), t(6, 6)])]);
        let want = ThetaExpr::from_products(&[(2, &[t(1, 0), t(2, 2), t(6, 0)]), (2, &[t(1, 0), t(2, 1), t(6, 3)])]);
        assert_eq!(sym_simplify(&e), want);
    }

    #[test]
    fn central_entry_at_six() {
        let h = h_vector(6).unwrap();
        let s = sym_simplify(h.entry(6));
        let want = ThetaExpr::from_products(&[
            (6, &[t(1, 0), t(1, 1), t(1, 1), t(2, 1), t(6, 3)]),
            (1, &[t(1, 0), t(1, 0), t(1, 0), t(2, 2), t(6, 6)]),
            (1, &[t(1, 0), t(1, 0), t(1, 0), t(2, 0), t(6, 0)]),
        ]);
        assert_eq!(s, want);
        assert_eq!(s.evaluate(int(40)), h.entry(6).evaluate(int(40)));
    }
}
