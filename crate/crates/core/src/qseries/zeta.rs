use super::{min_rat, QSeries};
use num_rational::Rational64;
use std::collections::BTreeMap;
use std::fmt;

/// A finite Laurent expansion `Σ_r f_r(q) ζ^{r/2}` with q-series coefficients.
///
/// Keys are doubled ζ-exponents so half-integer powers need no special case.
/// All coefficients share one precision.
#[derive(Clone, Debug)]
pub struct ZetaSeries {
    coeffs: BTreeMap<i64, QSeries>,
    prec: Rational64,
}

impl ZetaSeries {
    pub fn zero(prec: Rational64) -> Self {
        ZetaSeries { coeffs: BTreeMap::new(), prec }
    }

    /// Builds from `(doubled exponent, coefficient)` pairs, truncating every
    /// coefficient to `prec` and summing repeated keys.
    pub fn from_coeffs<I: IntoIterator<Item = (i64, QSeries)>>(items: I, prec: Rational64) -> Self {
        let mut coeffs: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (r2, s) in items {
            let s = s.truncate(prec);
            match coeffs.remove(&r2) {
                Some(prev) => {
                    coeffs.insert(r2, prev.add(&s));
                }
                None => {
                    coeffs.insert(r2, s);
                }
            }
        }
        Self::finish(coeffs, prec)
    }

    fn finish(coeffs: BTreeMap<i64, QSeries>, prec: Rational64) -> Self {
        let prec = coeffs.values().map(|s| s.prec()).fold(prec, min_rat);
        let coeffs = coeffs
            .into_iter()
            .map(|(k, s)| (k, s.truncate(prec)))
            .filter(|(_, s)| !s.is_zero())
            .collect();
        ZetaSeries { coeffs, prec }
    }

    pub fn prec(&self) -> Rational64 {
        self.prec
    }

    /// The `ζ^{r2/2}` coefficient, or zero at this series' precision.
    pub fn coeff(&self, r2: i64) -> QSeries {
        self.coeffs.get(&r2).cloned().unwrap_or_else(|| QSeries::zero(self.prec))
    }

    /// Doubled exponents with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &QSeries)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest valuation among the coefficients (the precision if zero).
    pub fn min_val(&self) -> Rational64 {
        self.coeffs.values().filter_map(|s| s.valuation()).min().unwrap_or(self.prec)
    }

    pub fn truncate(&self, prec: Rational64) -> Self {
        Self::finish(self.coeffs.clone(), min_rat(prec, self.prec))
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let prec = min_rat(self.prec, other.prec);
        let mut out = self.coeffs.clone();
        for (k, s) in &other.coeffs {
            let cur = out.remove(k).unwrap_or_else(|| QSeries::zero(prec));
            out.insert(*k, if sign > 0 { cur.add(s) } else { cur.sub(s) });
        }
        Self::finish(out, prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, s)| (*k, s.neg())).collect();
        ZetaSeries { coeffs, prec: self.prec }
    }

    /// Convolution in ζ with q-series products on the coefficients.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = min_rat(self.prec + other.min_val(), other.prec + self.min_val());
        let mut acc: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (r, f) in &self.coeffs {
            let vf = f.val_or_prec();
            for (s, g) in &other.coeffs {
                if vf + g.val_or_prec() >= prec {
                    continue;
                }
                let p = f.mul(g).truncate(prec);
                let e = acc.remove(&(r + s));
                acc.insert(r + s, match e {
                    Some(cur) => cur.add(&p),
                    None => p,
                });
            }
        }
        Self::finish(acc, prec)
    }

    /// Multiplies every coefficient by the one-variable series `s`.
    pub fn mul_q(&self, s: &QSeries) -> Self {
        let prec = min_rat(self.prec + s.val_or_prec(), s.prec() + self.min_val());
        let coeffs = self.coeffs.iter().map(|(k, f)| (*k, f.mul(s))).collect();
        Self::finish(coeffs, prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out: Option<Self> = None;
        for _ in 0..e {
            out = Some(match out {
                None => self.clone(),
                Some(o) => o.mul(self),
            });
        }
        out.unwrap_or_else(|| Self::from_coeffs([(0, QSeries::one(self.prec))], self.prec))
    }

    /// Specialization at `z = 0`, i.e. the sum of all coefficients.
    pub fn collapse(&self) -> QSeries {
        self.coeffs.values().fold(QSeries::zero(self.prec), |acc, s| acc.add(s))
    }

    /// Structural equality: same keys, coefficients and precision.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.prec == other.prec
            && self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|((a, s), (b, t))| a == b && s.eq_exact(t))
    }
}

impl PartialEq for ZetaSeries {
    /// Equal iff every ζ-coefficient agrees below the smaller precision.
    fn eq(&self, other: &Self) -> bool {
        let p = min_rat(self.prec, other.prec);
        let keys: std::collections::BTreeSet<i64> = self.support().chain(other.support()).collect();
        keys.into_iter().all(|k| {
            let a = self.coeff(k).truncate(p);
            let b = other.coeff(k).truncate(p);
            a == b
        })
    }
}

impl fmt::Display for ZetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "O(q^{{{}}})", self.prec);
        }
        for (i, (r2, s)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let r = if r2 % 2 == 0 { format!("{}", r2 / 2) } else { format!("{r2}/2") };
            write!(f, "ζ^{{{r}}}: {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use num_rational::BigRational;
    use num_traits::One;

    fn mono(r2: i64, e: i64, prec: i64) -> ZetaSeries {
        ZetaSeries::from_coeffs(
            [(r2, QSeries::monomial(BigRational::one(), int(e), int(prec)))],
            int(prec),
        )
    }

    #[test]
    fn square_of_zeta_plus_inverse() {
        let s = mono(2, 0, 5).add(&mono(-2, 0, 5));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(4), QSeries::one(int(5)));
        assert_eq!(sq.coeff(0), QSeries::one(int(5)).scale_int(2));
        assert_eq!(sq.coeff(-4), QSeries::one(int(5)));
        assert_eq!(sq.support().count(), 3);
    }

    #[test]
    fn half_powers_combine() {
        let h = mono(1, 0, 5);
        let p = h.mul(&h);
        assert_eq!(p.support().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn missing_coefficient_is_zero_at_prec() {
        let h = mono(1, 0, 5);
        let c = h.coeff(3);
        assert!(c.is_zero());
        assert_eq!(c.prec(), int(5));
    }
}
