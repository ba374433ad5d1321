//! Closed forms for several `CΨ_{k,a}` and `CΦ_k`, each paired with the
//! series it should reproduce.

use crate::congruence::series_4_0_odd;
use crate::decomp::{ProductSum, ThetaExpr};
use crate::error::Result;
use crate::frobgen::cpsi_direct;
use crate::qseries::QSeries;
use crate::thetafun::{euler, ThetaIndex};
use num_bigint::BigInt;
use num_rational::Rational64;

pub const ANDREWS2: &str = "(q²;q⁴)/((q;q²)⁴(q⁴;q⁴))";
pub const ANDREWS3: &str = "(q¹²;q¹²)(q⁶;q¹²)³/((q;q⁶)⁵(q⁵;q⁶)⁵(q⁴;q⁴)²(q³;q⁶)⁷) \
                            + 4q(q¹²;q¹²)(q⁴;q⁴)/((q⁶;q¹²)(q²;q⁴)(q;q)³)";
pub const DRAKE_2_0: &str = "2/((q;q)(q;q⁴)(q²;q⁴)²(q³;q⁴))";

fn th(m: i64, b: i64) -> ThetaExpr {
    ThetaExpr::theta(ThetaIndex::int(m, b))
}

fn c(n: i64) -> ThetaExpr {
    ThetaExpr::constant(n)
}

/// `6θ_{1,0}θ_{1,1}²θ_{2,1}θ_{6,3} + θ_{1,0}³(θ_{2,2}θ_{6,6} + θ_{2,0}θ_{6,0})`,
/// the numerator of `CΦ_6`.
pub fn cphi6_numerator() -> ThetaExpr {
    let t10 = th(1, 0);
    let t11 = th(1, 1);
    c(6).mul(&t10).mul(&t11).mul(&t11).mul(&th(2, 1)).mul(&th(6, 3)).add(
        &t10.mul(&t10).mul(&t10).mul(&th(2, 2).mul(&th(6, 6)).add(&th(2, 0).mul(&th(6, 0)))),
    )
}

/// The `CΦ_6` numerator with `θ_{3,1}(3τ) = θ_{9,3}` in place of `θ_{6,3}`.
/// It does not reproduce `CΦ_6`; kept to document the discrepancy.
pub fn cphi6_numerator_misprint() -> ThetaExpr {
    let t10 = th(1, 0);
    let t11 = th(1, 1);
    c(6).mul(&t10).mul(&t11).mul(&t11).mul(&th(2, 1)).mul(&th(9, 3)).add(
        &t10.mul(&t10).mul(&t10).mul(&th(2, 2).mul(&th(6, 6)).add(&th(2, 0).mul(&th(6, 0)))),
    )
}

/// The numerator of `CΦ_7` in closed form.
pub fn cphi7_numerator() -> ThetaExpr {
    let (t10, t11) = (th(1, 0), th(1, 1));
    let cube = |e: &ThetaExpr| e.mul(e).mul(e);
    let a = t10.mul(&th(21, 21)).add(&t11.mul(&th(21, 0)));
    let b = t11.mul(&th(21, 14)).add(&t10.mul(&th(21, 7)));
    let first = c(6)
        .mul(&t10)
        .mul(&t11)
        .mul(&th(2, 1))
        .mul(&th(6, 3).mul(&a).add(&b.mul(&th(6, 1).add(&th(6, 5)))));
    let second = cube(&t10)
        .mul(&th(21, 0))
        .add(&cube(&t11).mul(&th(21, 21)))
        .mul(&th(2, 0).mul(&th(6, 0)).add(&th(2, 2).mul(&th(6, 6))));
    let third = c(2)
        .mul(&cube(&t10).mul(&th(21, 14)).add(&cube(&t11).mul(&th(21, 7))))
        .mul(&th(2, 0).mul(&th(6, 4)).add(&th(2, 2).mul(&th(6, 2))));
    first.add(&second).add(&third)
}

/// `θ_{1,1}²θ_{2,0} + θ_{1,0}²θ_{2,2}`, the numerator of `q^{1/2}(q;q)⁴ CΨ_{4,0}`.
pub fn cpsi40_numerator() -> ThetaExpr {
    let (t10, t11) = (th(1, 0), th(1, 1));
    t11.mul(&t11).mul(&th(2, 0)).add(&t10.mul(&t10).mul(&th(2, 2)))
}

/// `numerator · q^{shift} / (q;q)^k` through `prec`.
pub fn over_euler(numerator: &ThetaExpr, shift: Rational64, k: i64, prec: Rational64) -> Result<QSeries> {
    let p = prec - shift;
    let num = numerator.evaluate(p);
    Ok(num.mul(&euler(p).pow(k)?.inv()?).shift(shift).truncate(prec))
}

fn product(s: &str, prec: Rational64) -> Result<QSeries> {
    s.parse::<ProductSum>()?.evaluate(prec)
}

/// What a closed form is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `CΨ_{k,a}` itself.
    Cpsi { k: u32, a2: i64 },
    /// `Σ cψ_{k,a}(2n+1) qⁿ`.
    OddPart { k: u32, a2: i64 },
}

impl Target {
    pub fn series(&self, prec: Rational64) -> Result<QSeries> {
        match *self {
            Target::Cpsi { k, a2 } => cpsi_direct(k, a2, prec),
            Target::OddPart { k, a2 } => {
                let p = prec * 2 + 1;
                Ok(cpsi_direct(k, a2, p)?.sift(2, 1).truncate(prec))
            }
        }
    }
}

/// A named closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    Andrews2,
    Andrews3,
    Drake20,
    Cphi6,
    Cphi7,
    Cpsi40,
    Cpsi40Odd,
}

impl Formula {
    pub const ALL: [Formula; 7] = [
        Formula::Andrews2,
        Formula::Andrews3,
        Formula::Drake20,
        Formula::Cphi6,
        Formula::Cphi7,
        Formula::Cpsi40,
        Formula::Cpsi40Odd,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Formula::Andrews2 => "CΦ2 product",
            Formula::Andrews3 => "CΦ3 product",
            Formula::Drake20 => "CΨ2,0 product",
            Formula::Cphi6 => "CΦ6 theta form",
            Formula::Cphi7 => "CΦ7 theta form",
            Formula::Cpsi40 => "CΨ4,0 theta form",
            Formula::Cpsi40Odd => "CΨ4,0 odd part",
        }
    }

    pub fn target(&self) -> Target {
        match self {
            Formula::Andrews2 => Target::Cpsi { k: 2, a2: 2 },
            Formula::Andrews3 => Target::Cpsi { k: 3, a2: 3 },
            Formula::Drake20 => Target::Cpsi { k: 2, a2: 0 },
            Formula::Cphi6 => Target::Cpsi { k: 6, a2: 6 },
            Formula::Cphi7 => Target::Cpsi { k: 7, a2: 7 },
            Formula::Cpsi40 => Target::Cpsi { k: 4, a2: 0 },
            Formula::Cpsi40Odd => Target::OddPart { k: 4, a2: 0 },
        }
    }

    /// Human-readable statement.
    pub fn display(&self) -> String {
        match self {
            Formula::Andrews2 => ANDREWS2.into(),
            Formula::Andrews3 => ANDREWS3.split_whitespace().collect::<Vec<_>>().join(" "),
            Formula::Drake20 => DRAKE_2_0.into(),
            Formula::Cphi6 => format!("({})/(q;q)⁶", cphi6_numerator()),
            Formula::Cphi7 => format!("({})/(q;q)⁷", cphi7_numerator()),
            Formula::Cpsi40 => format!("({})/(q^{{1/2}}(q;q)⁴)", cpsi40_numerator()),
            Formula::Cpsi40Odd => "32(q²;q²)⁷(q⁴;q⁴)²/((q;q)¹⁰(q;q²)⁴)".into(),
        }
    }

    pub fn evaluate(&self, prec: Rational64) -> Result<QSeries> {
        let zero = Rational64::from_integer(0);
        match self {
            Formula::Andrews2 => product(ANDREWS2, prec),
            Formula::Andrews3 => product(ANDREWS3, prec),
            Formula::Drake20 => product(DRAKE_2_0, prec),
            Formula::Cphi6 => over_euler(&cphi6_numerator(), zero, 6, prec),
            Formula::Cphi7 => over_euler(&cphi7_numerator(), zero, 7, prec),
            Formula::Cpsi40 => over_euler(&cpsi40_numerator(), Rational64::new(-1, 2), 4, prec),
            Formula::Cpsi40Odd => series_4_0_odd(prec),
        }
    }

    /// Compares with the target through `prec`; returns the first
    /// differing exponent, if any.
    pub fn check(&self, prec: Rational64) -> Result<Option<(Rational64, BigInt, BigInt)>> {
        let lhs = self.evaluate(prec)?;
        let rhs = self.target().series(prec)?;
        Ok(first_difference(&lhs, &rhs))
    }
}

/// First exponent where two series differ below their common precision,
/// with the two (integral) coefficients.
pub fn first_difference(a: &QSeries, b: &QSeries) -> Option<(Rational64, BigInt, BigInt)> {
    let d = a.sub(b);
    let (e, _) = d.terms().next()?;
    let ca = a.coeff(e);
    let cb = b.coeff(e);
    Some((e, ca.to_integer(), cb.to_integer()))
}
