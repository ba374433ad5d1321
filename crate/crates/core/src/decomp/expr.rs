use crate::qseries::QSeries;
use crate::thetafun::{theta_const, ThetaIndex};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

/// A product `q^{qpow} ∏ θ_{m,b}` with canonical, sorted indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub factors: Vec<ThetaIndex>,
    pub qpow: Rational64,
}

impl Monomial {
    pub fn new(mut factors: Vec<ThetaIndex>, qpow: Rational64) -> Self {
        for f in factors.iter_mut() {
            *f = f.canonical();
        }
        factors.sort();
        Monomial { factors, qpow }
    }

    pub fn one() -> Self {
        Monomial { factors: Vec::new(), qpow: Rational64::zero() }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort();
        Monomial { factors, qpow: self.qpow + other.qpow }
    }

    /// Factors with multiplicities, in index order.
    pub fn grouped(&self) -> Vec<(ThetaIndex, usize)> {
        let mut out: Vec<(ThetaIndex, usize)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((g, n)) if g == f => *n += 1,
                _ => out.push((*f, 1)),
            }
        }
        out
    }

    /// Removes one copy of each index in `sub`, if all are present.
    pub fn divide(&self, sub: &[ThetaIndex]) -> Option<Monomial> {
        let mut factors = self.factors.clone();
        for s in sub {
            let pos = factors.iter().position(|f| f == s)?;
            factors.remove(pos);
        }
        Some(Monomial { factors, qpow: self.qpow })
    }
}

/// Integer combination of theta monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ThetaExpr {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ThetaExpr {
    pub fn zero() -> Self {
        ThetaExpr::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one(), BigInt::one())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_monomial(Monomial::one(), BigInt::from(c))
    }

    /// The single symbol `θ_{m,b}` (canonicalized).
    pub fn theta(idx: ThetaIndex) -> Self {
        Self::from_monomial(Monomial::new(vec![idx], Rational64::zero()), BigInt::one())
    }

    pub fn from_monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ThetaExpr { terms }
    }

    /// Builds from `(coefficient, factors)` pairs.
    pub fn from_products(items: &[(i64, &[ThetaIndex])]) -> Self {
        let mut e = ThetaExpr::zero();
        for (c, fs) in items {
            e.add_term(Monomial::new(fs.to_vec(), Rational64::zero()), BigInt::from(*c));
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ThetaExpr) -> ThetaExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ThetaExpr) -> ThetaExpr {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> ThetaExpr {
        if c.is_zero() {
            return ThetaExpr::zero();
        }
        ThetaExpr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &ThetaExpr) -> ThetaExpr {
        let mut out = ThetaExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Largest `m2` among all factors (0 for a constant).
    pub fn max_m2(&self) -> i64 {
        self.terms.keys().flat_map(|m| m.factors.iter().map(|f| f.m2)).max().unwrap_or(0)
    }

    /// Numerical value through `prec`.
    pub fn evaluate(&self, prec: Rational64) -> QSeries {
        let cache = ThetaCache::new();
        self.evaluate_with(prec, &cache)
    }

    /// Numerical value through `prec`, sharing theta series through `cache`.
    pub fn evaluate_with(&self, prec: Rational64, cache: &ThetaCache) -> QSeries {
        let terms: Vec<_> = self.terms.iter().collect();
        terms
            .par_iter()
            .map(|(m, c)| {
                let p = prec - m.qpow;
                let mut acc = QSeries::one(p);
                for f in &m.factors {
                    acc = acc.mul(&cache.get(*f, p));
                }
                acc.shift(m.qpow).scale(&BigRational::from_integer((*c).clone())).truncate(prec)
            })
            .reduce(|| QSeries::zero(prec), |a, b| a.add(&b))
            .truncate(prec)
    }
}

/// Memo of evaluated `θ_{m,b}` series; entries are recomputed when a higher
/// precision is requested.
#[derive(Default)]
pub struct ThetaCache {
    map: RwLock<HashMap<ThetaIndex, QSeries>>,
}

impl ThetaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, idx: ThetaIndex, prec: Rational64) -> QSeries {
        if let Some(s) = self.map.read().expect("cache lock").get(&idx) {
            if s.prec() >= prec {
                return s.truncate(prec);
            }
        }
        let s = theta_const(idx, prec);
        self.map.write().expect("cache lock").insert(idx, s.clone());
        s
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub(crate) fn superscript(n: u64) -> String {
    n.to_string().chars().map(|d| SUPERSCRIPTS[d.to_digit(10).unwrap() as usize]).collect()
}

pub(crate) fn rat_str(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Output flavour for [`ThetaExpr::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaStyle {
    Plain,
    Latex,
}

impl ThetaExpr {
    /// Renders as a signed sum of monomials in index order.
    pub fn render(&self, style: ThetaStyle) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let bare = m.factors.is_empty() && m.qpow.is_zero();
            if !abs.is_one() || bare {
                out.push_str(&abs.to_string());
            }
            if !m.qpow.is_zero() {
                out.push_str(&format!("q^{{{}}}", rat_str(m.qpow)));
            }
            for (idx, n) in m.grouped() {
                match style {
                    ThetaStyle::Plain => {
                        out.push_str(&format!("θ_{{{idx}}}"));
                        if n > 1 {
                            out.push_str(&superscript(n as u64));
                        }
                    }
                    ThetaStyle::Latex => {
                        out.push_str(&format!("\\theta_{{{idx}}}"));
                        if n > 1 {
                            out.push_str(&format!("^{{{n}}}"));
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ThetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(ThetaStyle::Plain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn t(m: i64, b: i64) -> ThetaIndex {
        ThetaIndex::int(m, b)
    }

    #[test]
    fn canonical_merging() {
        let a = ThetaExpr::theta(t(1, 3));
        let b = ThetaExpr::theta(t(1, 1));
        assert_eq!(a.add(&b), ThetaExpr::theta(t(1, 1)).scale(&BigInt::from(2)));
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn rendering() {
        let e = ThetaExpr::from_products(&[(1, &[t(1, 1), t(1, 1), t(2, 0)]), (1, &[t(1, 0), t(1, 0), t(2, 2)])]);
        assert_eq!(e.to_string(), "θ_{1,0}²θ_{2,2} + θ_{1,1}²θ_{2,0}");
        assert_eq!(e.render(ThetaStyle::Latex), "\\theta_{1,0}^{2}\\theta_{2,2} + \\theta_{1,1}^{2}\\theta_{2,0}");
        assert_eq!(ThetaExpr::constant(-3).to_string(), "-3");
        assert_eq!(ThetaExpr::zero().to_string(), "0");
        assert_eq!(ThetaExpr::theta(ThetaIndex::new(7, 7)).to_string(), "θ_{7/2,7/2}");
    }

    #[test]
    fn evaluation_of_square() {
        let e = ThetaExpr::theta(t(1, 0)).mul(&ThetaExpr::theta(t(1, 0)));
        let s = e.evaluate(int(6));
        assert!(s.eq_exact(&QSeries::from_ints(&[1, 4, 4, 0, 4, 8], int(6))));
    }
}
