use super::expr::{ThetaCache, ThetaExpr};
use crate::error::{check_parity, Error, Result};
use crate::qseries::{QSeries, ZetaSeries};
use crate::thetafun::{euler, jacobi_theta_shifted, theta_two_var, ThetaIndex};
use num_rational::Rational64;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Theta-decomposition coefficients of `(−ϑ(z+½;τ))^k`.
///
/// `entries[c2]` is the coefficient of `ϑ_{k/2, c2/2}` for `c2` in
/// `0..2k` with `c2 ≡ k (mod 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HVector {
    k: u32,
    entries: BTreeMap<i64, ThetaExpr>,
}

impl HVector {
    fn from_fn<F>(k: u32, f: F) -> Self
    where
        F: Fn(i64) -> ThetaExpr + Sync,
    {
        let keys: Vec<i64> = (0..2 * k as i64).filter(|c2| (c2 - k as i64) % 2 == 0).collect();
        let entries = keys.par_iter().map(|&c2| (c2, f(c2))).collect();
        HVector { k, entries }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Coefficient of `ϑ_{k/2, c2/2}`; `c2` is taken mod `2k`.
    pub fn entry(&self, c2: i64) -> &ThetaExpr {
        let r = c2.rem_euclid(2 * self.k as i64);
        self.entries.get(&r).expect("residue of the right parity")
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &ThetaExpr)> {
        self.entries.iter().map(|(c, e)| (*c, e))
    }

    /// Checks `h_c = h_{k−c}` (doubled: `c2 ↦ 2k − c2`).
    pub fn is_symmetric(&self) -> bool {
        let k2 = 2 * self.k as i64;
        self.entries.iter().all(|(c, e)| self.entry(k2 - c) == e)
    }

    /// Applies `f` to every entry.
    pub fn map<F: Fn(&ThetaExpr) -> ThetaExpr + Sync>(&self, f: F) -> HVector {
        let entries = self.entries.par_iter().map(|(c, e)| (*c, f(e))).collect();
        HVector { k: self.k, entries }
    }

    /// Evaluates every entry through `prec`, sharing one theta cache.
    pub fn evaluate(&self, prec: Rational64) -> BTreeMap<i64, QSeries> {
        let cache = ThetaCache::new();
        self.entries.iter().map(|(c, e)| (*c, e.evaluate_with(prec, &cache))).collect()
    }
}

fn th(m: i64, b: i64) -> ThetaExpr {
    ThetaExpr::theta(ThetaIndex::int(m, b))
}

/// `h_{1,j} = θ_{1,j+1}`: the decomposition at `k = 2`.
pub fn h_base() -> HVector {
    HVector::from_fn(2, |c2| th(1, c2 / 2 + 1))
}

/// Level `2ℓ → 2ℓ+2` by the product recursion.
pub fn h_step_full(h: &HVector) -> Result<HVector> {
    if !h.k.is_multiple_of(2) {
        return Err(Error::Domain(format!("full step needs an even level, got {}", h.k)));
    }
    let l = (h.k / 2) as i64;
    let m = l * (l + 1);
    let h1 = |j: i64| th(1, j.rem_euclid(2) + 1);
    let hl = |c: i64| h.entry(2 * c).clone();
    let k_new = h.k + 2;
    let half = |b: i64| -> ThetaExpr {
        let mut acc = h1(b).mul(&th(m, b * l)).mul(&hl(0));
        acc = acc.add(&h1(b - l).mul(&th(m, b * l - m)).mul(&hl(l)));
        for c in 1..l {
            let pair = th(m, b * l - c * (l + 1)).add(&th(m, b * l + c * (l + 1)));
            acc = acc.add(&h1(b - c).mul(&pair).mul(&hl(c)));
        }
        acc
    };
    Ok(HVector::from_fn(k_new, |c2| {
        let b = c2 / 2;
        half(if b <= l + 1 { b } else { 2 * (l + 1) - b })
    }))
}

/// Level `2ℓ → 2ℓ+1`, producing half-integer residues.
pub fn h_step_half(h: &HVector) -> Result<HVector> {
    if !h.k.is_multiple_of(2) {
        return Err(Error::Domain(format!("half step needs an even level, got {}", h.k)));
    }
    let l = (h.k / 2) as i64;
    let m = l * (2 * l + 1);
    Ok(HVector::from_fn(h.k + 1, |c2| {
        // c2 = 2b + 1
        let mut acc = ThetaExpr::zero();
        for c in 0..2 * l {
            acc = acc.add(&h.entry(2 * c).mul(&th(m, c * (2 * l + 1) - l * c2)));
        }
        acc
    }))
}

/// Level `2ℓ+1 → 2ℓ+2`, summing over half-integer residues.
pub fn h_step_half_to_full(h: &HVector) -> Result<HVector> {
    if h.k % 2 != 1 {
        return Err(Error::Domain(format!("half-to-full step needs an odd level, got {}", h.k)));
    }
    let l = (h.k / 2) as i64;
    let m = (2 * l + 1) * (l + 1);
    Ok(HVector::from_fn(h.k + 1, |c2| {
        let b = c2 / 2;
        let mut acc = ThetaExpr::zero();
        for c in 0..=2 * l {
            acc = acc.add(&h.entry(2 * c + 1).mul(&th(m, (2 * c + 1) * (l + 1) - (2 * l + 1) * b)));
        }
        acc
    }))
}

/// `−ϑ(z+½;τ) = ϑ_{1/2,1/2}(z;τ)`: the decomposition at `k = 1`.
pub fn h_trivial() -> HVector {
    HVector { k: 1, entries: BTreeMap::from([(1, ThetaExpr::one())]) }
}

/// Decomposition of `(−ϑ(z+½;τ))^k` by repeated full steps and a final half step.
pub fn h_vector(k: u32) -> Result<HVector> {
    match k {
        0 => Err(Error::Domain("k must be positive".into())),
        1 => Ok(h_trivial()),
        _ => {
            let mut h = h_base();
            while h.k + 2 <= k {
                h = h_step_full(&h)?;
            }
            if h.k < k {
                h = h_step_half(&h)?;
            }
            Ok(h)
        }
    }
}

/// Decomposition at even level `k` reached through odd levels only
/// (`1 → 2 → 3 → 4 → …`), as an independent check on [`h_vector`].
pub fn h_vector_via_half_steps(k: u32) -> Result<HVector> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let mut h = h_trivial();
    while h.k < k {
        h = if h.k % 2 == 1 { h_step_half_to_full(&h)? } else { h_step_half(&h)? };
    }
    Ok(h)
}

/// `Σ_c h_c(τ) ϑ_{k/2,c/2}(z;τ)` through `prec`.
pub fn resum(h: &HVector, prec: Rational64) -> ZetaSeries {
    let values = h.evaluate(prec);
    let k2 = h.k as i64;
    values
        .into_par_iter()
        .map(|(c2, v)| theta_two_var(ThetaIndex::new(k2, c2), prec).mul_q(&v))
        .reduce(|| ZetaSeries::zero(prec), |a, b| a.add(&b))
}

/// Re-sums the decomposition at level `k`; equals `(−ϑ(z+½;τ))^k`.
pub fn reconstruct(k: u32, prec: Rational64) -> Result<ZetaSeries> {
    Ok(resum(&h_vector(k)?, prec))
}

/// `(−ϑ(z+½;τ))^k` computed directly by repeated multiplication.
pub fn direct_power(k: u32, prec: Rational64) -> ZetaSeries {
    jacobi_theta_shifted(prec).pow(k)
}

/// `CΨ_{k,a} = q^{(a²−k²/4)/2k} h_{k/2,a}(τ) / (q;q)^k`.
pub fn cpsi_from_h(k: u32, a2: i64, prec: Rational64) -> Result<QSeries> {
    check_parity(k, a2)?;
    let h = h_vector(k)?;
    cpsi_from_hvector(&h, a2, prec)
}

/// [`cpsi_from_h`] for an already built decomposition.
pub fn cpsi_from_hvector(h: &HVector, a2: i64, prec: Rational64) -> Result<QSeries> {
    let k = h.k;
    check_parity(k, a2)?;
    let kk = k as i64;
    let s = Rational64::new(a2 * a2 - kk * kk, 8 * kk);
    let p = prec - s;
    let hv = h.entry(a2).evaluate(p);
    let den = euler(p).pow(kk)?.inv()?;
    Ok(hv.mul(&den).shift(s).truncate(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn t(m: i64, b: i64) -> ThetaIndex {
        ThetaIndex::int(m, b)
    }

    #[test]
    fn base_entries() {
        let h = h_base();
        assert_eq!(h.entry(0), &ThetaExpr::theta(t(1, 1)));
        assert_eq!(h.entry(2), &ThetaExpr::theta(t(1, 0)));
        let v = h.entry(0).evaluate(int(3));
        assert_eq!(v.to_string(), "2q^{1/4} + 2q^{9/4} + O(q^{3})");
    }

    #[test]
    fn level_four_entries() {
        let h = h_vector(4).unwrap();
        let e = |items: &[(i64, &[ThetaIndex])]| ThetaExpr::from_products(items);
        assert_eq!(h.entry(0), &e(&[(1, &[t(1, 1), t(1, 1), t(2, 0)]), (1, &[t(1, 0), t(1, 0), t(2, 2)])]));
        assert_eq!(h.entry(2), &e(&[(2, &[t(1, 0), t(1, 1), t(2, 1)])]));
        assert_eq!(h.entry(4), &e(&[(1, &[t(1, 1), t(1, 1), t(2, 2)]), (1, &[t(1, 0), t(1, 0), t(2, 0)])]));
        assert!(h.is_symmetric());
    }

    #[test]
    fn level_six_middle_entry() {
        let h4 = h_vector(4).unwrap();
        let h6 = h_vector(6).unwrap();
        let expected = ThetaExpr::from_products(&[(1, &[t(1, 0), t(6, 6)])])
            .mul(h4.entry(0))
            .add(&ThetaExpr::from_products(&[(2, &[t(1, 1), t(6, 3)])]).mul(h4.entry(2)))
            .add(&ThetaExpr::from_products(&[(1, &[t(1, 0), t(6, 0)])]).mul(h4.entry(4)));
        assert_eq!(h6.entry(6), &expected);
        assert_eq!(h6.entry(2), h6.entry(10));
        assert!(h6.is_symmetric());
    }

    #[test]
    fn half_step_central_entry() {
        let h6 = h_vector(6).unwrap();
        let h7 = h_vector(7).unwrap();
        let th = |m, b| ThetaExpr::theta(t(m, b));
        let two = num_bigint::BigInt::from(2);
        let expected = h6
            .entry(0)
            .mul(&th(21, 21))
            .add(&h6.entry(2).mul(&th(21, 14)).scale(&two))
            .add(&h6.entry(4).mul(&th(21, 7)).scale(&two))
            .add(&h6.entry(6).mul(&th(21, 0)));
        assert_eq!(h7.entry(7), &expected);
        assert!(h7.is_symmetric());
    }

    #[test]
    fn parity_errors() {
        assert!(h_step_full(&h_vector(3).unwrap()).is_err());
        assert!(h_step_half(&h_vector(3).unwrap()).is_err());
        assert!(h_step_half_to_full(&h_base()).is_err());
        assert!(h_vector(0).is_err());
    }

    #[test]
    fn small_reconstructions() {
        for k in 1..=4 {
            assert_eq!(reconstruct(k, int(10)).unwrap(), direct_power(k, int(10)), "k = {k}");
        }
    }

    #[test]
    fn two_paths_agree_at_four() {
        let a = h_vector(4).unwrap().evaluate(int(20));
        let b = h_vector_via_half_steps(4).unwrap().evaluate(int(20));
        assert_eq!(a, b);
    }
}
