//! Theta-product identities that the recursion is built from, as checks.

use super::expr::ThetaExpr;
use crate::qseries::ZetaSeries;
use crate::thetafun::{jacobi_theta_shifted, theta_two_var, ThetaIndex};
use num_rational::Rational64;
use serde::Serialize;

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn two_var(m2: i64, b2: i64, prec: Rational64) -> ZetaSeries {
    theta_two_var(ThetaIndex::new(m2, b2), prec)
}

/// `(−ϑ(z+½))² = θ_{1,1}ϑ_{1,0} + θ_{1,0}ϑ_{1,1}`.
pub fn square_identity(prec: Rational64) -> IdentityCheck {
    let lhs = jacobi_theta_shifted(prec).pow(2);
    let t = |b| ThetaExpr::theta(ThetaIndex::int(1, b)).evaluate(prec);
    let rhs = two_var(2, 0, prec).mul_q(&t(1)).add(&two_var(2, 2, prec).mul_q(&t(0)));
    IdentityCheck { name: "square of the shifted Jacobi theta".into(), holds: lhs == rhs }
}

/// `−ϑ(z+½)ϑ_{ℓ,c} = Σ_{a mod 2ℓ+1} θ_{ℓ(2ℓ+1), c−2ℓa−ℓ} ϑ_{ℓ+½, a+c+½}`.
pub fn half_step_identity(l: i64, c: i64, prec: Rational64) -> IdentityCheck {
    let lhs = jacobi_theta_shifted(prec).mul(&two_var(2 * l, 2 * c, prec));
    let mut rhs = ZetaSeries::zero(prec);
    for a in 0..=2 * l {
        let coeff = ThetaExpr::theta(ThetaIndex::int(l * (2 * l + 1), c - 2 * l * a - l)).evaluate(prec);
        rhs = rhs.add(&two_var(2 * l + 1, 2 * (a + c) + 1, prec).mul_q(&coeff));
    }
    IdentityCheck { name: format!("half step, l = {l}, c = {c}"), holds: lhs == rhs }
}

/// `ϑ_{1,ε}ϑ_{ℓ,c} = Σ_{a mod ℓ+1} θ_{ℓ(ℓ+1),(2a+ε)ℓ−c} ϑ_{ℓ+1, 2a+c+ε}`.
pub fn full_step_identity(l: i64, c: i64, eps: i64, prec: Rational64) -> IdentityCheck {
    let lhs = two_var(2, 2 * eps, prec).mul(&two_var(2 * l, 2 * c, prec));
    let mut rhs = ZetaSeries::zero(prec);
    for a in 0..=l {
        let coeff = ThetaExpr::theta(ThetaIndex::int(l * (l + 1), (2 * a + eps) * l - c)).evaluate(prec);
        rhs = rhs.add(&two_var(2 * (l + 1), 2 * (2 * a + c + eps), prec).mul_q(&coeff));
    }
    IdentityCheck { name: format!("full step, l = {l}, c = {c}, eps = {eps}"), holds: lhs == rhs }
}

fn products(items: &[(i64, &[(i64, i64)])]) -> ThetaExpr {
    let mut e = ThetaExpr::zero();
    for (c, fs) in items {
        let fs: Vec<ThetaIndex> = fs.iter().map(|&(m, b)| ThetaIndex::int(m, b)).collect();
        e = e.add(&ThetaExpr::from_products(&[(*c, &fs)]));
    }
    e
}

/// The two level-six identities used by the simplifier.
pub fn level_six_identities(prec: Rational64) -> Vec<IdentityCheck> {
    let a_lhs = products(&[(1, &[(2, 2), (6, 0)]), (1, &[(2, 0), (6, 6)])]);
    let a_rhs = products(&[(2, &[(2, 1), (6, 3)])]);
    let b_lhs = products(&[(1, &[(2, 2), (6, 4)]), (1, &[(2, 0), (6, 2)])]);
    let b_rhs = products(&[(1, &[(2, 1), (6, 1)]), (1, &[(2, 1), (6, 5)])]);
    vec![
        IdentityCheck {
            name: "θ2,2θ6,0 + θ2,0θ6,6 = 2θ2,1θ6,3".into(),
            holds: a_lhs.evaluate(prec) == a_rhs.evaluate(prec),
        },
        IdentityCheck {
            name: "θ2,2θ6,4 + θ2,0θ6,2 = θ2,1(θ6,1 + θ6,5)".into(),
            holds: b_lhs.evaluate(prec) == b_rhs.evaluate(prec),
        },
    ]
}

/// Every identity above: both step identities for `ℓ ≤ l_max`, `0 ≤ c < ℓ`.
pub fn all_identities(l_max: i64, prec: Rational64) -> Vec<IdentityCheck> {
    let mut out = vec![square_identity(prec)];
    for l in 1..=l_max {
        for c in 0..l {
            out.push(half_step_identity(l, c, prec));
            for eps in 0..=1 {
                out.push(full_step_identity(l, c, eps, prec));
            }
        }
    }
    out.extend(level_six_identities(prec));
    out
}
