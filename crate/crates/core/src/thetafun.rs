//! Named special series: q-Pochhammer products, Dedekind eta, theta series
//! `θ_{m,b}` and `ϑ_{m,b}(z)`, and Klein forms.

use crate::error::{Error, Result};
use crate::qseries::{key_bound, QSeries, ZetaSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use std::fmt;

/// Index `(m, b)` of a theta series, stored doubled as `(m2, b2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThetaIndex {
    pub m2: i64,
    pub b2: i64,
}

impl ThetaIndex {
    pub fn new(m2: i64, b2: i64) -> Self {
        assert!(m2 > 0, "theta index needs m > 0");
        ThetaIndex { m2, b2 }
    }

    /// `θ_{m,b}` with integer `m` and `b`.
    pub fn int(m: i64, b: i64) -> Self {
        Self::new(2 * m, 2 * b)
    }

    /// Residue reduced into `0 ≤ b2 < 2·m2` (the period of `ϑ_{m,b}`).
    pub fn reduced(self) -> Self {
        ThetaIndex { m2: self.m2, b2: self.b2.rem_euclid(2 * self.m2) }
    }

    /// Normal form for the one-variable `θ_{m,b}`: reduce mod `2m`, then fold
    /// `b ↦ 2m − b` so that `0 ≤ b ≤ m`.
    pub fn canonical(self) -> Self {
        let r = self.reduced();
        if r.b2 > r.m2 {
            ThetaIndex { m2: r.m2, b2: 2 * r.m2 - r.b2 }
        } else {
            r
        }
    }

    /// `θ_{m,b}(tτ) = θ_{tm,tb}(τ)`.
    pub fn scaled(self, t: i64) -> Self {
        ThetaIndex { m2: self.m2 * t, b2: self.b2 * t }
    }

    pub fn m(self) -> Rational64 {
        Rational64::new(self.m2, 2)
    }

    pub fn b(self) -> Rational64 {
        Rational64::new(self.b2, 2)
    }
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        format!("{}", x / 2)
    } else {
        format!("{x}/2")
    }
}

impl fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", half(self.m2), half(self.b2))
    }
}

/// Values `X = 2·m2·n + b2` over `n ∈ ℤ` with `X²/(8·m2) < prec`.
fn lattice_points(idx: ThetaIndex, prec: Rational64) -> Vec<i64> {
    if prec <= Rational64::zero() {
        return Vec::new();
    }
    let m2 = idx.m2;
    // X² < 8·m2·prec  ⇔  X²·den < 8·m2·num
    let (num, den) = (*prec.numer() as i128, *prec.denom() as i128);
    let lim = 8 * m2 as i128 * num;
    let xmax = ((lim as f64 / den as f64).sqrt() as i64) + 2;
    let step = 2 * m2;
    let lo = (-xmax - idx.b2).div_euclid(step) - 1;
    let hi = (xmax - idx.b2).div_euclid(step) + 1;
    (lo..=hi)
        .map(|n| step * n + idx.b2)
        .filter(|x| (*x as i128) * (*x as i128) * den < lim)
        .collect()
}

/// `θ_{m,b}(τ) = Σ_n q^{(2mn+b)²/4m}` through `prec`.
pub fn theta_const(idx: ThetaIndex, prec: Rational64) -> QSeries {
    let one = BigRational::one();
    let terms = lattice_points(idx, prec)
        .into_iter()
        .map(|x| (Rational64::new(x * x, 8 * idx.m2), one.clone()));
    QSeries::from_terms(terms, prec)
}

/// `ϑ_{m,b}(z;τ) = Σ_n q^{(2mn+b)²/4m} ζ^{2mn+b}` through `prec`.
pub fn theta_two_var(idx: ThetaIndex, prec: Rational64) -> ZetaSeries {
    let one = BigRational::one();
    let items = lattice_points(idx, prec)
        .into_iter()
        .map(|x| (x, QSeries::monomial(one.clone(), Rational64::new(x * x, 8 * idx.m2), prec)));
    ZetaSeries::from_coeffs(items, prec)
}

/// `−ϑ(z+½;τ) = Σ_n q^{(n+½)²/2} ζ^{n+½}`, which is `ϑ_{1/2,1/2}`.
pub fn jacobi_theta_shifted(prec: Rational64) -> ZetaSeries {
    theta_two_var(ThetaIndex::new(1, 1), prec)
}

/// `∏_{n≥0} (1 − sign·q^{c + n·step})` with rational `c ≥ 0`, `step > 0`.
fn product_series(c: Rational64, step: Rational64, sign: i64, prec: Rational64) -> QSeries {
    let d = c.denom().lcm(step.denom());
    let n = key_bound(prec, d).max(0) as usize;
    let mut arr = vec![BigInt::zero(); n.max(1)];
    arr[0] = BigInt::one();
    let c_key = (c * Rational64::from_integer(d)).to_integer() as usize;
    let s_key = (step * Rational64::from_integer(d)).to_integer() as usize;
    let mut e = c_key;
    if e == 0 {
        // (1 − sign·q^0) is the constant 1 − sign.
        let f = BigInt::from(1 - sign);
        for v in arr.iter_mut() {
            *v *= &f;
        }
        e += s_key;
    }
    while e < n {
        for i in (e..n).rev() {
            if !arr[i - e].is_zero() {
                let t = &arr[i - e] * sign;
                arr[i] -= t;
            }
        }
        e += s_key;
    }
    if n == 0 {
        return QSeries::zero(prec);
    }
    QSeries::from_dense(d, 0, arr, prec)
}

/// `(q^{a};q^{step})_∞` with `a = a_num/a_den > 0`.
pub fn pochhammer(a_num: i64, a_den: i64, step: i64, prec: Rational64) -> Result<QSeries> {
    if a_den <= 0 || step <= 0 {
        return Err(Error::Domain("pochhammer needs a positive denominator and step".into()));
    }
    if a_num <= 0 {
        return Err(Error::Domain(format!(
            "(q^{{{a_num}/{a_den}}};q^{step}) has a vanishing or divergent factor"
        )));
    }
    Ok(product_series(Rational64::new(a_num, a_den), Rational64::from_integer(step), 1, prec))
}

/// `(q^c;q^s)_∞` for positive rationals `c`, `s`.
pub fn pochhammer_rat(c: Rational64, s: Rational64, prec: Rational64) -> Result<QSeries> {
    if c <= Rational64::zero() || s <= Rational64::zero() {
        return Err(Error::Domain(format!("(q^{c};q^{s}) is not a convergent product")));
    }
    Ok(product_series(c, s, 1, prec))
}

/// `(−q^c;q^s)_∞ = ∏ (1 + q^{c+ns})` for rational `c ≥ 0`, `s > 0`.
pub fn pochhammer_neg(c: Rational64, s: Rational64, prec: Rational64) -> Result<QSeries> {
    if c < Rational64::zero() || s <= Rational64::zero() {
        return Err(Error::Domain(format!("(-q^{c};q^{s}) is not a convergent product")));
    }
    Ok(product_series(c, s, -1, prec))
}

/// `(q;q)_∞` through `prec`.
pub fn euler(prec: Rational64) -> QSeries {
    product_series(Rational64::one(), Rational64::one(), 1, prec)
}

/// `(q^t;q^t)_∞` through `prec`.
pub fn euler_at(t: i64, prec: Rational64) -> QSeries {
    product_series(Rational64::from_integer(t), Rational64::from_integer(t), 1, prec)
}

/// `η(τ) = q^{1/24} (q;q)_∞`.
pub fn eta_series(prec: Rational64) -> QSeries {
    let s = Rational64::new(1, 24);
    euler(prec - s).shift(s)
}

fn klein_prefactor(a: Rational64) -> Rational64 {
    a * a / 2 - a / 2 + Rational64::new(1, 12)
}

/// Klein form `t_{a,0}(τ) = −q^{a²/2−a/2+1/12} (q^a;q)(q^{1−a};q)/(q;q)²`
/// for `0 < a < 1`.
pub fn klein_form(a_num: i64, a_den: i64, prec: Rational64) -> Result<QSeries> {
    if a_den <= 0 {
        return Err(Error::Domain("klein form needs a positive denominator".into()));
    }
    let a = Rational64::new(a_num, a_den);
    if a <= Rational64::zero() || a >= Rational64::one() {
        return Err(Error::Domain(format!("klein form t_{{{a},0}} needs 0 < a < 1")));
    }
    let e0 = klein_prefactor(a);
    let p = prec - e0;
    let one = Rational64::one();
    let num = pochhammer_rat(a, one, p)?.mul(&pochhammer_rat(one - a, one, p)?);
    let den = euler(p).pow(2)?.inv()?;
    Ok(num.mul(&den).shift(e0).neg())
}

/// Sign-twisted Klein form
/// `t⁻_A(τ) = −q^{A²/2−A/2+1/12} (−q^A;q)(−q^{1−A};q)/(q;q)²` for `0 ≤ A ≤ 1`.
///
/// With this form `θ_{m,b} = −q^{m/12} (q^{2m};q^{2m})³ t⁻_{1/2+b/2m}(2mτ)`
/// holds for every `0 ≤ b ≤ m`.
pub fn klein_form_twisted(a: Rational64, prec: Rational64) -> Result<QSeries> {
    if a < Rational64::zero() || a > Rational64::one() {
        return Err(Error::Domain(format!("twisted klein form needs 0 <= A <= 1, got {a}")));
    }
    let e0 = klein_prefactor(a);
    let p = prec - e0;
    let one = Rational64::one();
    let num = pochhammer_neg(a, one, p)?.mul(&pochhammer_neg(one - a, one, p)?);
    let den = euler(p).pow(2)?.inv()?;
    Ok(num.mul(&den).shift(e0).neg())
}

/// Triple-product form `q^{b²/4m} (q^{2m};q^{2m})(−q^{m−b};q^{2m})(−q^{m+b};q^{2m})`
/// of `θ_{m,b}`, for a canonical index (`0 ≤ b ≤ m`).
pub fn theta_product_form(idx: ThetaIndex, prec: Rational64) -> Result<QSeries> {
    let idx = idx.canonical();
    let (m, b) = (idx.m(), idx.b());
    let e0 = b * b / (m * 4);
    let p = prec - e0;
    let s = m * 2;
    let prod = pochhammer_rat(s, s, p)?
        .mul(&pochhammer_neg(m - b, s, p)?)
        .mul(&pochhammer_neg(m + b, s, p)?);
    Ok(prod.shift(e0))
}

/// The eta/Klein form `−q^{m/12}(q^{2m};q^{2m})³ t⁻_{1/2+b/2m}(2mτ)` of `θ_{m,b}`.
pub fn theta_klein_form(idx: ThetaIndex, prec: Rational64) -> Result<QSeries> {
    let idx = idx.canonical();
    let (m, b) = (idx.m(), idx.b());
    let s = m * 2;
    if !s.is_integer() {
        return Err(Error::Domain("eta/Klein form needs integer 2m".into()));
    }
    let t = s.to_integer();
    let lead = m / 12;
    let a = Rational64::new(1, 2) + b / s;
    let p = prec - lead;
    let klein = klein_form_twisted(a, p / s)?.substitute(t);
    let eta3 = euler_at(t, p).pow(3)?;
    Ok(eta3.mul(&klein).shift(lead).neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn ints(v: &[i64], prec: i64) -> QSeries {
        QSeries::from_ints(v, int(prec))
    }

    #[test]
    fn canonical_folds() {
        assert_eq!(ThetaIndex::int(1, 3).canonical(), ThetaIndex::int(1, 1));
        assert_eq!(ThetaIndex::int(6, 7).canonical(), ThetaIndex::int(6, 5));
        assert_eq!(ThetaIndex::int(6, 5).canonical(), ThetaIndex::int(6, 5));
        assert_eq!(ThetaIndex::int(1, 2).canonical(), ThetaIndex::int(1, 0));
        assert_eq!(ThetaIndex::int(21, -21).canonical(), ThetaIndex::int(21, 21));
        assert_eq!(ThetaIndex::int(2, 3).reduced(), ThetaIndex::int(2, 3));
    }

    #[test]
    fn small_thetas() {
        assert!(theta_const(ThetaIndex::int(1, 0), int(5)).eq_exact(&ints(&[1, 2, 0, 0, 2], 5)));
        let t11 = theta_const(ThetaIndex::int(1, 1), int(3));
        let expect = QSeries::from_terms(
            vec![(rat(1, 4), BigRational::from_integer(2.into())), (rat(9, 4), BigRational::from_integer(2.into()))],
            int(3),
        );
        assert!(t11.eq_exact(&expect));
    }

    #[test]
    fn euler_pentagonal() {
        assert!(euler(int(8)).eq_exact(&ints(&[1, -1, -1, 0, 0, 1, 0, 1], 8)));
        assert!(euler(int(1)).eq_exact(&ints(&[1], 1)));
        let p = pochhammer(2, 1, 4, int(7)).unwrap();
        assert!(p.eq_exact(&ints(&[1, 0, -1, 0, 0, 0, -1], 7)));
        assert!(pochhammer(0, 1, 1, int(3)).is_err());
    }

    #[test]
    fn eta_leading_terms() {
        let e = eta_series(int(3));
        let expect = ints(&[1, -1, -1], 3).truncate(int(3) - rat(1, 24)).shift(rat(1, 24));
        assert!(e.eq_exact(&expect));
        assert_eq!(e.valuation(), Some(rat(1, 24)));
    }

    #[test]
    fn klein_half_leading_term() {
        let t = klein_form(1, 2, int(2)).unwrap();
        assert_eq!(t.valuation(), Some(rat(-1, 24)));
        assert_eq!(t.coeff(rat(-1, 24)), BigRational::from_integer((-1).into()));
        assert!(klein_form(0, 1, int(2)).is_err());
        assert!(klein_form(1, 1, int(2)).is_err());
    }

    #[test]
    fn two_variable_small() {
        let v = theta_two_var(ThetaIndex::int(1, 0), int(2));
        assert_eq!(v.support().collect::<Vec<_>>(), vec![-4, 0, 4]);
        assert_eq!(v.coeff(4), QSeries::monomial(BigRational::one(), int(1), int(2)));
        let j = jacobi_theta_shifted(int(2));
        assert_eq!(j.coeff(1), QSeries::monomial(BigRational::one(), rat(1, 8), int(2)));
        assert_eq!(j.coeff(3), QSeries::monomial(BigRational::one(), rat(9, 8), int(2)));
    }
}
