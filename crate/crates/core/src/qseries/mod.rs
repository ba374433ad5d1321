//! Truncated Laurent series in `q^{1/D}` with exact rational coefficients.
//!
//! A [`QSeries`] is known modulo `q^P` for a rational precision `P`. Every
//! binary operation propagates the smallest precision it can justify, so a
//! result never claims more than its inputs determine.

mod format;
mod zeta;

pub use format::{QSeriesJson, ZetaSeriesJson};
pub use zeta::ZetaSeries;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A truncated Laurent series `Σ c_e q^{e/D} + O(q^P)`.
#[derive(Clone, Debug)]
pub struct QSeries {
    denom: i64,
    terms: BTreeMap<i64, BigRational>,
    prec: Rational64,
}

/// Smallest exponent numerator (over `d`) that is not below `prec`.
pub(crate) fn key_bound(prec: Rational64, d: i64) -> i64 {
    (prec * Rational64::from_integer(d)).ceil().to_integer()
}

fn exp_of(key: i64, d: i64) -> Rational64 {
    Rational64::new(key, d)
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

fn min_rat(a: Rational64, b: Rational64) -> Rational64 {
    if a < b {
        a
    } else {
        b
    }
}

fn coeff_lcm<'a, I: Iterator<Item = &'a BigRational>>(it: I) -> BigInt {
    let mut l = BigInt::one();
    for c in it {
        let d = c.denom();
        if !d.is_one() {
            l = l.lcm(d);
        }
    }
    l
}

impl QSeries {
    fn build(denom: i64, terms: BTreeMap<i64, BigRational>, prec: Rational64) -> Self {
        assert!(denom >= 1, "exponent denominator must be positive");
        let bound = key_bound(prec, denom);
        let mut terms = terms;
        terms.retain(|k, c| *k < bound && !c.is_zero());
        let mut s = QSeries { denom, terms, prec };
        s.reduce_denom();
        s
    }

    /// The zero series known modulo `q^prec`.
    pub fn zero(prec: Rational64) -> Self {
        QSeries { denom: 1, terms: BTreeMap::new(), prec }
    }

    /// The constant series 1.
    pub fn one(prec: Rational64) -> Self {
        Self::constant(BigRational::one(), prec)
    }

    /// A constant series.
    pub fn constant(c: BigRational, prec: Rational64) -> Self {
        Self::monomial(c, Rational64::zero(), prec)
    }

    /// The single term `c q^e`.
    pub fn monomial(c: BigRational, e: Rational64, prec: Rational64) -> Self {
        let d = *e.denom();
        let mut terms = BTreeMap::new();
        terms.insert(*e.numer(), c);
        Self::build(d, terms, prec)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I>(terms: I, prec: Rational64) -> Self
    where
        I: IntoIterator<Item = (Rational64, BigRational)>,
    {
        let items: Vec<_> = terms.into_iter().collect();
        let d = items.iter().fold(*prec.denom(), |d, (e, _)| lcm(d, *e.denom()));
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in items {
            let key = *e.numer() * (d / *e.denom());
            *map.entry(key).or_insert_with(BigRational::zero) += c;
        }
        Self::build(d, map, prec)
    }

    /// Builds `Σ coeffs[i] q^{(offset + i)/denom}`.
    pub fn from_dense(denom: i64, offset: i64, coeffs: Vec<BigInt>, prec: Rational64) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, BigRational::from_integer(c)))
            .collect();
        Self::build(denom, terms, prec)
    }

    /// Builds `Σ coeffs[n] q^n` from integer coefficients.
    pub fn from_ints<T: Into<BigInt> + Clone>(coeffs: &[T], prec: Rational64) -> Self {
        let v = coeffs.iter().cloned().map(Into::into).collect();
        Self::from_dense(1, 0, v, prec)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn prec(&self) -> Rational64 {
        self.prec
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms as `(exponent numerator, coefficient)` over [`Self::denom`].
    pub fn raw_terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    /// Terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        self.terms.iter().map(move |(k, c)| (exp_of(*k, self.denom), c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms.keys().next().map(|k| exp_of(*k, self.denom))
    }

    /// The valuation, or the precision for the zero series.
    pub fn val_or_prec(&self) -> Rational64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: Rational64) -> BigRational {
        let scaled = e * Rational64::from_integer(self.denom);
        if !scaled.is_integer() {
            return BigRational::zero();
        }
        self.terms.get(&scaled.to_integer()).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients of `q^0 .. q^{count-1}` as integers.
    ///
    /// Fails if the precision does not reach `q^{count-1}` or a coefficient in
    /// that range is not an integer; terms with negative or fractional
    /// exponents are ignored.
    pub fn integer_coeffs(&self, count: usize) -> Result<Vec<BigInt>> {
        if count > 0 && Rational64::from_integer(count as i64 - 1) >= self.prec {
            return Err(Error::Precision {
                needed: format!("{count}"),
                available: self.prec.to_string(),
            });
        }
        let mut out = vec![BigInt::zero(); count];
        for (k, c) in &self.terms {
            if k % self.denom != 0 {
                continue;
            }
            let n = k / self.denom;
            if n < 0 || n as usize >= count {
                continue;
            }
            if !c.is_integer() {
                return Err(Error::Domain(format!("coefficient of q^{n} is not an integer: {c}")));
            }
            out[n as usize] = c.to_integer();
        }
        Ok(out)
    }

    fn reduce_denom(&mut self) {
        if self.denom == 1 {
            return;
        }
        let mut g = self.denom;
        for k in self.terms.keys() {
            g = g.gcd(k);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.denom /= g;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(k, c)| (k / g, c)).collect();
        }
    }

    fn rescaled(&self, d: i64) -> BTreeMap<i64, BigRational> {
        let f = d / self.denom;
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    /// Lowers the precision to `min(prec, self.prec)`.
    pub fn truncate(&self, prec: Rational64) -> Self {
        let p = min_rat(prec, self.prec);
        Self::build(self.denom, self.terms.clone(), p)
    }

    /// Multiplies by `q^r`.
    pub fn shift(&self, r: Rational64) -> Self {
        let d = lcm(self.denom, *r.denom());
        let off = *r.numer() * (d / *r.denom());
        let terms = self.rescaled(d).into_iter().map(|(k, c)| (k + off, c)).collect();
        Self::build(d, terms, self.prec + r)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        let terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        Self::build(self.denom, terms, self.prec)
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let d = lcm(self.denom, other.denom);
        let mut terms = self.rescaled(d);
        for (k, c) in other.rescaled(d) {
            let e = terms.entry(k).or_insert_with(BigRational::zero);
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        Self::build(d, terms, min_rat(self.prec, other.prec))
    }

    /// Termwise sum; the result is known to the smaller precision.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c)).collect();
        QSeries { denom: self.denom, terms, prec: self.prec }
    }

    /// Cauchy product.
    ///
    /// If `a` is known modulo `q^{Pa}` with lowest exponent `va`, and likewise
    /// for `b`, the product is known modulo `q^{min(Pa + vb, Pb + va)}`.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = min_rat(self.prec + other.val_or_prec(), other.prec + self.val_or_prec());
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let d = lcm(self.denom, other.denom);
        let bound = key_bound(prec, d);
        let la = coeff_lcm(self.terms.values());
        let lb = coeff_lcm(other.terms.values());
        let ints = |s: &Self, l: &BigInt| -> Vec<(i64, BigInt)> {
            let f = d / s.denom;
            s.terms
                .iter()
                .map(|(k, c)| (k * f, (c * BigRational::from_integer(l.clone())).to_integer()))
                .collect()
        };
        let a = ints(self, &la);
        let b = ints(other, &lb);
        let prod = int_convolve(&a, &b, bound);
        let scale = la * lb;
        let terms = prod
            .into_iter()
            .map(|(k, c)| (k, BigRational::new(c, scale.clone())))
            .collect();
        Self::build(d, terms, prec)
    }

    /// Multiplicative inverse.
    ///
    /// With lowest term `c q^α` and precision `P`, the inverse has lowest term
    /// `c^{-1} q^{-α}` and is known modulo `q^{P - 2α}`.
    pub fn inv(&self) -> Result<Self> {
        let (&k0, c0) = self.terms.iter().next().ok_or(Error::ZeroInverse)?;
        let d = self.denom;
        let alpha = exp_of(k0, d);
        let out_prec = self.prec - alpha - alpha;
        // B = 1/A where A = q^{-α} a, known modulo q^{P-α}.
        let n = key_bound(self.prec - alpha, d).max(0) as usize;
        let u: Vec<(usize, &BigRational)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(k, c)| ((k - k0) as usize, c))
            .take_while(|(t, _)| *t < n)
            .collect();
        let integral = c0.is_integer()
            && c0.to_integer().abs().is_one()
            && u.iter().all(|(_, c)| c.is_integer());
        let mut terms = BTreeMap::new();
        if integral {
            let c0i = c0.to_integer();
            let ui: Vec<(usize, BigInt)> = u.iter().map(|(t, c)| (*t, c.to_integer())).collect();
            let mut b: Vec<BigInt> = Vec::with_capacity(n);
            for j in 0..n {
                let v = if j == 0 {
                    c0i.clone()
                } else {
                    let mut s = BigInt::zero();
                    for (t, ut) in &ui {
                        if *t > j {
                            break;
                        }
                        if !b[j - t].is_zero() {
                            s += ut * &b[j - t];
                        }
                    }
                    -(s * &c0i)
                };
                b.push(v);
            }
            for (j, v) in b.into_iter().enumerate() {
                if !v.is_zero() {
                    terms.insert(j as i64 - k0, BigRational::from_integer(v));
                }
            }
        } else {
            let inv0 = c0.recip();
            let mut b: Vec<BigRational> = Vec::with_capacity(n);
            for j in 0..n {
                let v = if j == 0 {
                    inv0.clone()
                } else {
                    let mut s = BigRational::zero();
                    for (t, ut) in &u {
                        if *t > j {
                            break;
                        }
                        if !b[j - t].is_zero() {
                            s += *ut * &b[j - t];
                        }
                    }
                    -(s * &inv0)
                };
                b.push(v);
            }
            for (j, v) in b.into_iter().enumerate() {
                if !v.is_zero() {
                    terms.insert(j as i64 - k0, v);
                }
            }
        }
        Ok(Self::build(d, terms, out_prec))
    }

    /// Integer power by repeated squaring; negative powers go through [`Self::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            return Ok(Self::one(self.prec));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result.expect("positive exponent"))
    }

    /// The substitution `q ↦ q^t`.
    pub fn substitute(&self, t: i64) -> Self {
        assert!(t >= 1, "substitution exponent must be positive");
        let terms = self.terms.iter().map(|(k, c)| (k * t, c.clone())).collect();
        Self::build(self.denom, terms, self.prec * Rational64::from_integer(t))
    }

    /// The series `Σ_n c(A n + B) q^n` built from the integer exponents of `self`.
    pub fn sift(&self, a: i64, b: i64) -> Self {
        assert!(a >= 1);
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if k % self.denom != 0 {
                continue;
            }
            let x = k / self.denom;
            if (x - b).rem_euclid(a) == 0 {
                terms.insert((x - b).div_euclid(a), c.clone());
            }
        }
        let prec = (self.prec - Rational64::from_integer(b)) / Rational64::from_integer(a);
        Self::build(1, terms, prec)
    }

    /// True iff every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Structural equality: same denominator, terms and precision.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.denom == other.denom && self.prec == other.prec && self.terms == other.terms
    }
}

/// Convolution of integer term lists keeping keys below `bound`.
fn int_convolve(a: &[(i64, BigInt)], b: &[(i64, BigInt)], bound: i64) -> Vec<(i64, BigInt)> {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let base = a[0].0 + b[0].0;
    if base >= bound {
        return Vec::new();
    }
    let span = (bound - base) as usize;
    let bits = |v: &[(i64, BigInt)]| v.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let len_bits = 64 - (a.len() as u64).leading_zeros() as u64;
    let small = bits(a) + bits(b) + len_bits <= 125;
    let pairs = a.len().saturating_mul(b.len());
    let dense = span <= pairs.saturating_mul(4).saturating_add(1 << 16);
    if small {
        let a128: Vec<(i64, i128)> = a.iter().map(|(k, c)| (*k, c.to_i128().unwrap())).collect();
        let b128: Vec<(i64, i128)> = b.iter().map(|(k, c)| (*k, c.to_i128().unwrap())).collect();
        if dense {
            let mut acc = vec![0i128; span];
            for (ka, ca) in &a128 {
                for (kb, cb) in &b128 {
                    let k = ka + kb;
                    if k >= bound {
                        break;
                    }
                    acc[(k - base) as usize] += ca * cb;
                }
            }
            acc.into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (base + i as i64, BigInt::from(c)))
                .collect()
        } else {
            let mut acc: BTreeMap<i64, i128> = BTreeMap::new();
            for (ka, ca) in &a128 {
                for (kb, cb) in &b128 {
                    let k = ka + kb;
                    if k >= bound {
                        break;
                    }
                    *acc.entry(k).or_insert(0) += ca * cb;
                }
            }
            acc.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, BigInt::from(c))).collect()
        }
    } else if dense {
        let mut acc = vec![BigInt::zero(); span];
        for (ka, ca) in a {
            for (kb, cb) in b {
                let k = ka + kb;
                if k >= bound {
                    break;
                }
                acc[(k - base) as usize] += ca * cb;
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (base + i as i64, c))
            .collect()
    } else {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let k = ka + kb;
                if k >= bound {
                    break;
                }
                *acc.entry(k).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

impl PartialEq for QSeries {
    /// Equal iff the term maps agree below the smaller precision.
    fn eq(&self, other: &Self) -> bool {
        let p = min_rat(self.prec, other.prec);
        let d = lcm(self.denom, other.denom);
        let bound = key_bound(p, d);
        let a = self.rescaled(d);
        let b = other.rescaled(d);
        let a: Vec<_> = a.range(..bound).collect();
        let b: Vec<_> = b.range(..bound).collect();
        a == b
    }
}

fn fmt_exp(e: Rational64) -> String {
    if e.is_integer() {
        format!("{}", e.to_integer())
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_const = e.is_zero();
            if !abs.is_one() || is_const {
                if abs.is_integer() {
                    write!(f, "{}", abs.to_integer())?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            if !is_const {
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{{{}}}", fmt_exp(e))?;
                }
            }
        }
        if first {
            write!(f, "O(q^{{{}}})", fmt_exp(self.prec))
        } else {
            write!(f, " + O(q^{{{}}})", fmt_exp(self.prec))
        }
    }
}

// Operators are implemented on references only so that method calls such as
// `a.mul(&b)` on owned values resolve to the inherent methods.
macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                QSeries::$m(self, rhs)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn q(coeffs: &[i64], prec: i64) -> QSeries {
        QSeries::from_ints(coeffs, int(prec))
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn add_cancels() {
        let s = &q(&[1, 1], 5) + &q(&[-1, 1], 5);
        assert!(s.eq_exact(&q(&[0, 2], 5)));
    }

    #[test]
    fn add_rescales_denominators() {
        let a = QSeries::monomial(r(1), rat(1, 4), int(2));
        let b = QSeries::monomial(r(1), rat(1, 6), int(2));
        let s = &a + &b;
        assert_eq!(s.denom(), 12);
        assert_eq!(s.coeff(rat(3, 12)), r(1));
        assert_eq!(s.coeff(rat(2, 12)), r(1));
        assert_eq!(&a + &QSeries::zero(int(2)), a);
    }

    #[test]
    fn geometric_inverse() {
        let geo = q(&[1; 6], 6);
        let one_minus = q(&[1, -1], 6);
        assert_eq!(one_minus.mul(&geo), QSeries::one(int(6)));
        let inv = q(&[1, -1], 4).inv().unwrap();
        assert!(inv.eq_exact(&q(&[1, 1, 1, 1], 4)));
    }

    #[test]
    fn fractional_exponents_add() {
        let a = QSeries::monomial(r(1), rat(1, 4), int(3));
        let b = QSeries::monomial(r(1), rat(1, 6), int(3));
        let p = a.mul(&b);
        assert_eq!(p.coeff(rat(5, 12)), r(1));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn laurent_inverse() {
        let s = q(&[0, 1, -1], 3);
        let inv = s.inv().unwrap();
        assert_eq!(inv.prec(), int(1));
        let expect = QSeries::from_terms(vec![(int(-1), r(1)), (int(0), r(1))], int(1));
        assert!(inv.eq_exact(&expect));
        // One more order of the original gives one more order of the inverse.
        let inv2 = q(&[0, 1, -1, 0, 0], 5).inv().unwrap();
        assert_eq!(inv2.coeff(int(1)), r(1));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(QSeries::zero(int(3)).inv().unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn rational_inverse() {
        let s = q(&[2, 1], 4);
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeff(int(0)), BigRational::new(1.into(), 2.into()));
        assert_eq!(inv.coeff(int(3)), BigRational::new((-1).into(), 16.into()));
        assert_eq!(s.mul(&inv), QSeries::one(int(4)));
    }

    #[test]
    fn powers() {
        let s = q(&[1, 1], 10);
        assert!(s.pow(2).unwrap().eq_exact(&q(&[1, 2, 1], 10)));
        assert_eq!(s.pow(0).unwrap(), QSeries::one(int(10)));
        assert_eq!(s.pow(-2).unwrap().mul(&s.pow(2).unwrap()), QSeries::one(int(10)));
    }

    #[test]
    fn substitution() {
        let s = q(&[1, 1], 4).substitute(2);
        assert!(s.eq_exact(&q(&[1, 0, 1], 8)));
    }

    #[test]
    fn sift_progression() {
        let s = q(&[0, 1, 2, 3, 4, 5, 6, 7], 8);
        let t = s.sift(3, 1);
        assert!(t.eq_exact(&QSeries::from_terms(
            vec![(int(0), r(1)), (int(1), r(4)), (int(2), r(7))],
            rat(7, 3)
        )));
    }

    #[test]
    fn equality_uses_smaller_precision() {
        assert_eq!(q(&[1, 2, 3], 3), q(&[1, 2], 2));
        assert_ne!(q(&[1, 2, 3], 3), q(&[1, 2, 4], 3));
    }

    #[test]
    fn display() {
        let s = QSeries::from_terms(vec![(rat(1, 4), r(2)), (rat(9, 4), r(-1))], int(3));
        assert_eq!(s.to_string(), "2q^{1/4} - q^{9/4} + O(q^{3})");
        assert_eq!(QSeries::zero(int(2)).to_string(), "O(q^{2})");
        assert_eq!(q(&[1, -1], 2).to_string(), "1 - q + O(q^{2})");
    }

    #[test]
    fn integer_coeffs_checks_precision() {
        let s = q(&[1, 2, 3], 3);
        assert_eq!(s.integer_coeffs(3).unwrap(), vec![1.into(), 2.into(), 3.into()]);
        assert!(s.integer_coeffs(4).is_err());
    }

    #[test]
    fn large_coefficients_take_bigint_path() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let s = QSeries::from_ints(&[big.clone(), big.clone()], int(3));
        let p = s.mul(&s);
        assert_eq!(p.coeff(int(1)), BigRational::from_integer(&big * &big * 2));
    }
}
