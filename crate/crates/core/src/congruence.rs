//! Divisibility of `cψ_{k,a}(An+B)` along arithmetic progressions.

use crate::decomp::cpsi_from_h;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::thetafun::{euler_at, pochhammer};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Proved,
    Conjectured,
    Discovered,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Proved => "proved",
            ClaimStatus::Conjectured => "conjectured",
            ClaimStatus::Discovered => "discovered",
        })
    }
}

/// `cψ_{k,a}(A·n + B) ≡ 0 (mod M)` for all `0 ≤ A·n + B ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub k: u32,
    pub a2: i64,
    #[serde(rename = "A")]
    pub modulus: u64,
    #[serde(rename = "B")]
    pub residue: u64,
    #[serde(rename = "M")]
    pub divisor: u64,
    pub status: ClaimStatus,
    pub n_max: u64,
}

impl CongruenceClaim {
    pub fn new(k: u32, a2: i64, modulus: u64, residue: u64, divisor: u64, status: ClaimStatus, n_max: u64) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::Domain(format!("need 0 <= B < A, got A = {modulus}, B = {residue}")));
        }
        if divisor < 2 {
            return Err(Error::Domain(format!("divisor must be at least 2, got {divisor}")));
        }
        Ok(CongruenceClaim { k, a2, modulus, residue, divisor, status, n_max })
    }

    /// One JSON object per line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json_line(s: &str) -> Result<Self> {
        let c: CongruenceClaim = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        CongruenceClaim::new(c.k, c.a2, c.modulus, c.residue, c.divisor, c.status, c.n_max)
    }

    fn a_str(&self) -> String {
        if self.a2 % 2 == 0 {
            (self.a2 / 2).to_string()
        } else {
            format!("{}/2", self.a2)
        }
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cψ_{{{},{}}}({}n+{}) ≡ 0 (mod {})",
            self.k,
            self.a_str(),
            self.modulus,
            self.residue,
            self.divisor
        )
    }
}

/// Fixed-width table of claims.
pub fn claims_table(claims: &[CongruenceClaim]) -> String {
    let mut out = format!("{:>3} {:>5} {:>4} {:>4} {:>6} {:>6}  {}\n", "k", "a", "A", "B", "M", "n_max", "status");
    for c in claims {
        out.push_str(&format!(
            "{:>3} {:>5} {:>4} {:>4} {:>6} {:>6}  {}\n",
            c.k,
            c.a_str(),
            c.modulus,
            c.residue,
            c.divisor,
            c.n_max,
            c.status
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub holds: bool,
    /// Number of coefficients tested.
    pub tested: u64,
    /// First failure as `(index An+B, coefficient)`.
    pub counterexample: Option<(u64, String)>,
}

/// Checks a claim against the coefficients of `series` (which must be
/// `CΨ_{k,a}` with precision above `n_max`).
pub fn verify(claim: &CongruenceClaim, series: &QSeries) -> Result<VerifyReport> {
    let coeffs = series.integer_coeffs(claim.n_max as usize + 1)?;
    let m = BigInt::from(claim.divisor);
    let mut tested = 0;
    for idx in (claim.residue..=claim.n_max).step_by(claim.modulus as usize) {
        tested += 1;
        let c = &coeffs[idx as usize];
        if !c.is_multiple_of(&m) {
            return Ok(VerifyReport { holds: false, tested, counterexample: Some((idx, c.to_string())) });
        }
    }
    Ok(VerifyReport { holds: true, tested, counterexample: None })
}

/// The congruences for `k = 4` known from the literature, with their status.
pub fn known_claims(n_max: u64) -> Vec<CongruenceClaim> {
    let c = |a2, a, b, m, status| CongruenceClaim { k: 4, a2, modulus: a, residue: b, divisor: m, status, n_max };
    vec![
        c(0, 2, 1, 32, ClaimStatus::Proved),
        c(0, 4, 3, 64, ClaimStatus::Proved),
        c(2, 1, 0, 4, ClaimStatus::Proved),
        c(0, 7, 2, 7, ClaimStatus::Conjectured),
        c(2, 7, 3, 7, ClaimStatus::Conjectured),
    ]
}

/// `CΨ_{k,a}` through `q^{n_max}`.
pub fn cpsi_series(k: u32, a2: i64, n_max: u64) -> Result<QSeries> {
    cpsi_from_h(k, a2, Rational64::from_integer(n_max as i64 + 1))
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|p| (2..*p).take_while(|d| d * d <= *p).all(|d| p % d != 0)).collect()
}

/// Largest `p^e ≤ cap` dividing `g`, for each prime `p ≤ cap`.
fn prime_power_divisors(g: &BigInt, cap: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in primes_upto(cap) {
        let mut q = 1u64;
        while q * p <= cap && g.is_multiple_of(&BigInt::from(q * p)) {
            q *= p;
        }
        if q > 1 {
            out.push(q);
        }
    }
    out
}

/// True if `(a, b, m)` follows from `(a2, b2, m2)`.
fn implied(a: u64, b: u64, m: u64, by: (u64, u64, u64)) -> bool {
    let (a2, b2, m2) = by;
    (a2, b2, m2) != (a, b, m) && a.is_multiple_of(a2) && b % a2 == b2 && m2 % m == 0
}

/// Finds all `(A ≤ a_max, B < A, M ≤ m_max)` with `cψ(An+B) ≡ 0 (mod M)` up
/// to `n_max`, reporting the largest prime power per prime and dropping
/// claims implied by one with a coarser progression.
pub fn scan_series(k: u32, a2: i64, series: &QSeries, a_max: u64, m_max: u64, n_max: u64) -> Result<Vec<CongruenceClaim>> {
    let coeffs = series.integer_coeffs(n_max as usize + 1)?;
    let cells: Vec<(u64, u64)> = (1..=a_max).flat_map(|a| (0..a).map(move |b| (a, b))).collect();
    let found: Vec<(u64, u64, u64)> = cells
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let g = (b..=n_max).step_by(a as usize).fold(BigInt::zero(), |g, i| g.gcd(&coeffs[i as usize]));
            let ms = if g.is_zero() || b > n_max { Vec::new() } else { prime_power_divisors(&g, m_max) };
            ms.into_iter().map(move |m| (a, b, m))
        })
        .collect();
    let known = known_claims(n_max);
    let mut out: Vec<CongruenceClaim> = found
        .iter()
        .filter(|&&(a, b, m)| !found.iter().any(|&other| implied(a, b, m, other)))
        .map(|&(a, b, m)| {
            let status = known
                .iter()
                .find(|c| c.k == k && c.a2 == a2 && c.modulus == a && c.residue == b && m % c.divisor == 0)
                .map_or(ClaimStatus::Discovered, |c| c.status);
            CongruenceClaim { k, a2, modulus: a, residue: b, divisor: m, status, n_max }
        })
        .collect();
    out.sort_by_key(|c| (c.modulus, c.residue, c.divisor));
    Ok(out)
}

/// [`scan_series`] on `CΨ_{k,a}` computed through the theta decomposition.
pub fn scan(k: u32, a2: i64, a_max: u64, m_max: u64, n_max: u64) -> Result<Vec<CongruenceClaim>> {
    let s = cpsi_series(k, a2, n_max)?;
    scan_series(k, a2, &s, a_max, m_max, n_max)
}

/// `32(q²;q²)⁷(q⁴;q⁴)²/((q;q)¹⁰(q;q²)⁴) = Σ cψ_{4,0}(2n+1) qⁿ`.
pub fn series_4_0_odd(prec: Rational64) -> Result<QSeries> {
    let num = euler_at(2, prec).pow(7)?.mul(&euler_at(4, prec).pow(2)?);
    let den = euler_at(1, prec).pow(10)?.mul(&pochhammer(1, 1, 2, prec)?.pow(4)?);
    Ok(num.mul(&den.inv()?).scale(&BigRational::from_integer(BigInt::from(32))))
}

/// Returns the claim list with `verify` applied, for reporting.
pub fn check_known(n_max: u64) -> Result<Vec<(CongruenceClaim, VerifyReport)>> {
    let s0 = cpsi_series(4, 0, n_max)?;
    let s2 = cpsi_series(4, 2, n_max)?;
    known_claims(n_max)
        .into_iter()
        .map(|c| {
            let s = if c.a2 == 0 { &s0 } else { &s2 };
            let r = verify(&c, s)?;
            Ok((c, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobgen::cpsi_direct;
    use crate::int;

    #[test]
    fn odd_part_series() {
        let s = series_4_0_odd(int(60)).unwrap();
        let c = s.integer_coeffs(60).unwrap();
        assert_eq!(c[0], BigInt::from(32));
        assert!(c.iter().all(|x| x.is_multiple_of(&BigInt::from(32))));
        let odd = cpsi_direct(4, 0, int(121)).unwrap().sift(2, 1);
        assert_eq!(s, odd);
    }

    #[test]
    fn failing_claim_has_counterexample() {
        let s = cpsi_direct(4, 0, int(20)).unwrap();
        let c = CongruenceClaim::new(4, 0, 2, 0, 32, ClaimStatus::Discovered, 19).unwrap();
        let r = verify(&c, &s).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some((0, "6".into())));
    }

    #[test]
    fn precision_is_checked() {
        let s = cpsi_direct(4, 0, int(20)).unwrap();
        let c = CongruenceClaim::new(4, 0, 2, 1, 32, ClaimStatus::Proved, 50).unwrap();
        assert!(verify(&c, &s).is_err());
    }

    #[test]
    fn claim_validation_and_json() {
        assert!(CongruenceClaim::new(4, 0, 2, 2, 32, ClaimStatus::Proved, 10).is_err());
        assert!(CongruenceClaim::new(4, 0, 2, 1, 1, ClaimStatus::Proved, 10).is_err());
        let c = known_claims(399)[0].clone();
        let line = c.to_json_line();
        assert!(line.contains("\"A\":2") && line.contains("\"status\":\"proved\""));
        assert_eq!(CongruenceClaim::from_json_line(&line).unwrap(), c);
    }

    #[test]
    fn implication_pruning() {
        assert!(implied(4, 3, 32, (2, 1, 32)));
        assert!(!implied(4, 3, 64, (2, 1, 32)));
        assert!(!implied(4, 2, 32, (2, 1, 32)));
    }

    #[test]
    fn small_scan() {
        let claims = scan(4, 0, 4, 64, 99).unwrap();
        let has = |a, b, m| claims.iter().any(|c| (c.modulus, c.residue, c.divisor) == (a, b, m));
        assert!(has(2, 1, 32) && has(4, 3, 64));
        let s = cpsi_series(4, 2, 50).unwrap();
        let claims = scan_series(4, 2, &s, 1, 8, 50).unwrap();
        assert_eq!(claims.len(), 1);
        assert_eq!((claims[0].divisor, claims[0].status), (4, ClaimStatus::Proved));
        let s = cpsi_series(4, 4, 50).unwrap();
        assert!(scan_series(4, 4, &s, 1, 64, 50).unwrap().is_empty());
    }
}
