//! Colored `a`-shifted Motzkin paths.
//!
//! A `(k,a)`-path of length `L` starts at height 0, never goes below the axis
//! and ends at height `a(L−1)`. Each step `(1, j)` has `a − k/2 ≤ j ≤ a + k/2`
//! and carries a subset of `{1..k}` of size `k/2 − a + j`. For odd length
//! `2n+1` the area deficit `b_M` (maximal area minus area) generates `CΨ_{k,a}`
//! as `n → ∞`.

use crate::error::{check_parity, Error, Result};
use crate::frobgen::{cpsi_direct, FrobPartitionDrake};
use crate::qseries::{key_bound, QSeries};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotzkinStep {
    pub rise: i64,
    pub colors: BTreeSet<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotzkinPath {
    k: u32,
    a2: i64,
    steps: Vec<MotzkinStep>,
}

/// Rise bounds `[a − k/2, a + k/2]`.
fn rise_range(k: u32, a2: i64) -> (i64, i64) {
    ((a2 - k as i64) / 2, (a2 + k as i64) / 2)
}

/// Number of colors carried by a step of the given rise.
fn color_count(k: u32, a2: i64, rise: i64) -> i64 {
    (k as i64 - a2) / 2 + rise
}

/// Doubled end height `2a(L−1)`, halved; `None` if it is not an integer.
fn end_height(a2: i64, len: usize) -> Option<i64> {
    let t = a2 * (len as i64 - 1);
    (t % 2 == 0).then_some(t / 2)
}

/// Height at position `i` of the maximal-area path of length `2n+1`: `n`
/// rises of `a + k/2`, one flat step, `n` rises of `a − k/2`. For `a > k/2`
/// the flat step is not admissible, so this bounds but is never attained.
fn max_height(k: u32, a2: i64, len: usize, i: usize) -> i64 {
    let (lo, hi) = rise_range(k, a2);
    let n = (len / 2) as i64;
    let i = i as i64;
    if i <= n {
        i * hi
    } else {
        n * hi + (i - n - 1) * lo
    }
}

impl MotzkinPath {
    pub fn new(k: u32, a2: i64, steps: Vec<MotzkinStep>) -> Result<Self> {
        check_parity(k, a2)?;
        if steps.is_empty() {
            return Err(Error::Domain("a path needs at least one step".into()));
        }
        let (lo, hi) = rise_range(k, a2);
        let mut h = 0i64;
        for (i, s) in steps.iter().enumerate() {
            if s.rise < lo || s.rise > hi {
                return Err(Error::Domain(format!("step {} has rise {} outside [{lo}, {hi}]", i + 1, s.rise)));
            }
            if s.colors.iter().any(|&c| c == 0 || c > k) {
                return Err(Error::Domain(format!("step {} uses a color outside 1..={k}", i + 1)));
            }
            if s.colors.len() as i64 != color_count(k, a2, s.rise) {
                return Err(Error::Domain(format!(
                    "step {} carries {} colors, needs {}",
                    i + 1,
                    s.colors.len(),
                    color_count(k, a2, s.rise)
                )));
            }
            h += s.rise;
            if h < 0 {
                return Err(Error::Domain(format!("path goes below the axis after step {}", i + 1)));
            }
        }
        match end_height(a2, steps.len()) {
            Some(e) if e == h => Ok(MotzkinPath { k, a2, steps }),
            _ => Err(Error::Domain(format!("path ends at height {h}, not a(L-1)"))),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a2(&self) -> i64 {
        self.a2
    }

    pub fn steps(&self) -> &[MotzkinStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `h_0 = 0, h_1, …, h_L`.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = vec![0];
        for s in &self.steps {
            out.push(out.last().unwrap() + s.rise);
        }
        out
    }

    /// Area under the path (sum of trapezoids).
    pub fn area(&self) -> Rational64 {
        let h = self.heights();
        let twice: i64 = h.windows(2).map(|w| w[0] + w[1]).sum();
        Rational64::new(twice, 2)
    }

    /// Deficit `(k/2)n(n+1) + an(2n+1) − area` for a path of odd length `2n+1`.
    pub fn b_m(&self) -> u64 {
        assert!(self.len() % 2 == 1, "b_M is defined for odd lengths");
        let h = self.heights();
        let l = self.len();
        (1..l).map(|i| (max_height(self.k, self.a2, l, i) - h[i]) as u64).sum()
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.steps.iter().map(|s| format!("{}{{{}}}", s.rise, s.colors.iter().join(","))).join(" ");
        f.write_str(&s)
    }
}

/// Maximal area `(k/2)n(n+1) + an(2n+1)` of a length `2n+1` path.
pub fn max_area(k: u32, a2: i64, n: u64) -> Rational64 {
    let n = n as i64;
    Rational64::new(k as i64 * n * (n + 1) + a2 * n * (2 * n + 1), 2)
}

/// Sum of `q^{b_M}` over paths of length `2n+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AreaPolynomial {
    pub series: QSeries,
    pub len: usize,
    pub k: u32,
    pub a2: i64,
}

impl AreaPolynomial {
    pub fn coeffs(&self, count: usize) -> Result<Vec<BigInt>> {
        self.series.integer_coeffs(count)
    }
}

/// Geometric paths (rise sequences) of length `len`, by depth-first search.
fn rise_sequences(k: u32, a2: i64, len: usize) -> Vec<Vec<i64>> {
    let Some(end) = end_height(a2, len) else { return Vec::new() };
    let (lo, hi) = rise_range(k, a2);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(h: i64, end: i64, len: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let left = (len - cur.len()) as i64;
        if left == 0 {
            if h == end {
                out.push(cur.clone());
            }
            return;
        }
        for r in lo..=hi {
            let h2 = h + r;
            let rest = left - 1;
            if h2 < 0 || end - h2 < lo * rest || end - h2 > hi * rest {
                continue;
            }
            cur.push(r);
            go(h2, end, len, lo, hi, cur, out);
            cur.pop();
        }
    }
    go(0, end, len, lo, hi, &mut cur, &mut out);
    out
}

/// Calls `f` on every colored path of length `len`.
pub fn for_each_path<F: FnMut(&MotzkinPath)>(k: u32, a2: i64, len: usize, mut f: F) -> Result<()> {
    check_parity(k, a2)?;
    for rises in rise_sequences(k, a2, len) {
        let choices: Vec<Vec<BTreeSet<u32>>> = rises
            .iter()
            .map(|&r| (1..=k).combinations(color_count(k, a2, r) as usize).map(|c| c.into_iter().collect()).collect())
            .collect();
        for colors in choices.iter().multi_cartesian_product() {
            let steps = rises
                .iter()
                .zip(colors)
                .map(|(&rise, c)| MotzkinStep { rise, colors: c.clone() })
                .collect();
            f(&MotzkinPath { k, a2, steps });
        }
    }
    Ok(())
}

/// Every colored `(k,a)`-path of length `len`.
pub fn enumerate_paths(k: u32, a2: i64, len: usize) -> Result<Vec<MotzkinPath>> {
    let mut out = Vec::new();
    for_each_path(k, a2, len, |p| out.push(p.clone()))?;
    Ok(out)
}

/// [`cm_poly`] by exhaustive enumeration.
pub fn cm_enumerated(k: u32, a2: i64, n: u64, prec: Rational64) -> Result<AreaPolynomial> {
    let len = 2 * n as usize + 1;
    let cap = key_bound(prec, 1).max(0) as u64;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for_each_path(k, a2, len, |p| {
        let b = p.b_m();
        if b < cap {
            *counts.entry(b).or_insert(0) += 1;
        }
    })?;
    let series = QSeries::from_terms(counts.into_iter().map(|(e, c)| (Rational64::from_integer(e as i64), num_rational::BigRational::from_integer(c.into()))), prec);
    Ok(AreaPolynomial { series, len, k, a2 })
}

/// `Σ_w q^{b_M(w)}` over paths of length `2n+1`, through `prec`, by dynamic
/// programming over (position, height) with binomial color weights.
pub fn cm_poly(k: u32, a2: i64, n: u64, prec: Rational64) -> Result<AreaPolynomial> {
    check_parity(k, a2)?;
    let len = 2 * n as usize + 1;
    let cap = key_bound(prec, 1).max(0) as usize;
    let end = n as i64 * a2;
    let (lo, hi) = rise_range(k, a2);
    let weight: BTreeMap<i64, BigInt> =
        (lo..=hi).map(|r| (r, binomial(BigInt::from(k), BigInt::from(color_count(k, a2, r))))).collect();
    // height -> coefficients indexed by accumulated deficit
    let mut layer: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    if cap > 0 {
        let mut v = vec![BigInt::zero(); cap];
        v[0] = BigInt::from(1);
        layer.insert(0, v);
    }
    for i in 1..=len {
        let rest = (len - i) as i64;
        let top = max_height(k, a2, len, i);
        let mut next: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
        for (&h, v) in &layer {
            for (&r, w) in &weight {
                let h2 = h + r;
                if h2 < 0 || end - h2 < lo * rest || end - h2 > hi * rest {
                    continue;
                }
                let d = if i < len { (top - h2) as usize } else { 0 };
                if d >= cap {
                    continue;
                }
                let dst = next.entry(h2).or_insert_with(|| vec![BigInt::zero(); cap]);
                for (e, c) in v.iter().enumerate().take(cap - d) {
                    if !c.is_zero() {
                        dst[e + d] += c * w;
                    }
                }
            }
        }
        layer = next;
    }
    let coeffs = layer.remove(&end).unwrap_or_default();
    let series = QSeries::from_dense(1, 0, coeffs, prec);
    Ok(AreaPolynomial { series, len, k, a2 })
}

/// Builds the length `2n+1` path of a partition in the alternative form.
///
/// Step `n−p` (for `p < n`) rises `k/2 + a − α(p)` and carries the colors
/// missing from the top parts equal to `p`; step `n+1` rises `r − s` with
/// colors `T`; step `n+1+q` rises `β(q−1) + a − k/2` with the colors of the
/// bottom parts equal to `q−1`.
pub fn partition_to_path(p: &FrobPartitionDrake, n: u64) -> Result<MotzkinPath> {
    let (k, a2) = (p.k(), p.a2());
    let biggest = |row: &[crate::frobgen::ColoredPart]| row.first().map_or(0, |c| c.value as u64 + 1);
    let need = 2 * biggest(p.top()).max(biggest(p.bottom()));
    if n <= need {
        return Err(Error::Domain(format!("n = {n} must exceed {need}")));
    }
    let (lo, hi) = rise_range(k, a2);
    let colors_at = |row: &[crate::frobgen::ColoredPart], v: u64| -> BTreeSet<u32> {
        row.iter().filter(|c| c.value as u64 == v).map(|c| c.color).collect()
    };
    let mut steps = Vec::with_capacity(2 * n as usize + 1);
    for p_val in (0..n).rev() {
        let used = colors_at(p.top(), p_val);
        let colors = (1..=k).filter(|c| !used.contains(c)).collect();
        steps.push(MotzkinStep { rise: hi - used.len() as i64, colors });
    }
    let d = p.top().len() as i64 - p.bottom().len() as i64;
    steps.push(MotzkinStep { rise: d, colors: p.tset().clone() });
    for q in 1..=n {
        let colors = colors_at(p.bottom(), q - 1);
        steps.push(MotzkinStep { rise: colors.len() as i64 + lo, colors });
    }
    MotzkinPath::new(k, a2, steps)
}

/// Prepends a full-color `a + k/2` step and appends an empty `a − k/2` step.
pub fn extend_path(p: &MotzkinPath) -> MotzkinPath {
    let (lo, hi) = rise_range(p.k, p.a2);
    let mut steps = Vec::with_capacity(p.len() + 2);
    steps.push(MotzkinStep { rise: hi, colors: (1..=p.k).collect() });
    steps.extend(p.steps.iter().cloned());
    steps.push(MotzkinStep { rise: lo, colors: BTreeSet::new() });
    MotzkinPath { k: p.k, a2: p.a2, steps }
}

/// Outcome of comparing path counts with `CΨ_{k,a}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub k: u32,
    pub a2: i64,
    pub n: u64,
    pub depth: u64,
    /// Agreement through `q^guaranteed` is implied by the bijection; negative
    /// means nothing is guaranteed.
    pub guaranteed: i64,
    /// Largest `d ≤ depth` with agreement through `q^d`, or −1.
    pub agreed: i64,
    pub path_coeffs: Vec<String>,
    pub cpsi_coeffs: Vec<String>,
    pub ok: bool,
}

/// Compares `cm_poly(k, a, n)` with `cpsi_direct(k, a)` through `q^depth`.
pub fn convergence_check(k: u32, a2: i64, n: u64, depth: u64) -> Result<ConvergenceReport> {
    let count = depth as usize + 1;
    let prec = Rational64::from_integer(count as i64);
    let cm = cm_poly(k, a2, n, prec)?.coeffs(count)?;
    let cp = cpsi_direct(k, a2, prec)?.integer_coeffs(count)?;
    let agreed = cm.iter().zip(&cp).take_while(|(x, y)| x == y).count() as i64 - 1;
    let guaranteed = (n as i64 + 1) / 2 - 2;
    let ok = agreed >= guaranteed.min(depth as i64);
    Ok(ConvergenceReport {
        k,
        a2,
        n,
        depth,
        guaranteed,
        agreed,
        path_coeffs: cm.iter().map(ToString::to_string).collect(),
        cpsi_coeffs: cp.iter().map(ToString::to_string).collect(),
        ok,
    })
}

/// Coefficients as machine integers, for tests and display.
pub fn small_coeffs(s: &AreaPolynomial, count: usize) -> Result<Vec<i64>> {
    s.coeffs(count)?
        .iter()
        .map(|c| c.to_i64().ok_or_else(|| Error::Domain("coefficient exceeds i64".into())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobgen::ColoredPart;
    use crate::int;

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    fn worked_example() -> FrobPartitionDrake {
        let cp = ColoredPart::new;
        FrobPartitionDrake::new(
            4,
            2,
            vec![cp(1, 4), cp(1, 3), cp(1, 2), cp(1, 1), cp(0, 2), cp(0, 1)],
            vec![cp(1, 2), cp(1, 1), cp(0, 4), cp(0, 3)],
            set(&[1, 2, 3]),
        )
        .unwrap()
    }

    #[test]
    fn single_step_counts() {
        assert_eq!(enumerate_paths(2, 0, 1).unwrap().len(), 2);
        assert_eq!(enumerate_paths(2, 2, 1).unwrap().len(), 1);
        assert_eq!(enumerate_paths(4, 0, 1).unwrap().len(), 6);
    }

    #[test]
    fn constant_polynomials() {
        assert_eq!(small_coeffs(&cm_poly(2, 0, 0, int(3)).unwrap(), 3).unwrap(), vec![2, 0, 0]);
        assert_eq!(small_coeffs(&cm_poly(4, 0, 0, int(1)).unwrap(), 1).unwrap(), vec![6]);
    }

    #[test]
    fn dp_matches_enumeration() {
        for (k, a2) in [(1, 1), (2, 0), (2, 2), (3, 1), (4, 2)] {
            for n in 0..=2 {
                let dp = cm_poly(k, a2, n, int(40)).unwrap();
                let en = cm_enumerated(k, a2, n, int(40)).unwrap();
                assert_eq!(dp.series, en.series, "k={k} a2={a2} n={n}");
            }
        }
    }

    #[test]
    fn maximal_area_formula() {
        for (k, a2) in [(1, 1), (1, 3), (2, 0), (3, 3), (4, 2), (4, 8)] {
            for n in 0..6u64 {
                let len = 2 * n as usize + 1;
                let top: i64 = (1..len).map(|i| max_height(k, a2, len, i)).sum();
                let want = Rational64::from_integer(top) + Rational64::new(n as i64 * a2, 2);
                assert_eq!(max_area(k, a2, n), want);
            }
        }
    }

    #[test]
    fn area_and_deficit_add_up() {
        for (k, a2) in [(3, 1), (2, 4)] {
            for p in enumerate_paths(k, a2, 5).unwrap() {
                assert_eq!(p.area() + Rational64::from_integer(p.b_m() as i64), max_area(k, a2, 2));
            }
        }
    }

    #[test]
    fn shifted_range_has_no_flat_maximum() {
        // a − k/2 = 2: the smallest deficit is the smallest weight, 1 + 2.
        let cm = cm_poly(1, 5, 4, int(5)).unwrap();
        assert_eq!(small_coeffs(&cm, 5).unwrap(), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn worked_example_path() {
        let part = worked_example();
        assert_eq!(part.weight(), 16);
        let path = partition_to_path(&part, 5).unwrap();
        assert_eq!(path.heights(), vec![0, 3, 6, 9, 8, 9, 11, 12, 13, 12, 11, 10]);
        assert_eq!(path.b_m(), 16);
        assert_eq!(extend_path(&path).b_m(), 16);
        assert!(partition_to_path(&part, 4).is_err());
    }

    #[test]
    fn invalid_paths_rejected() {
        let st = |rise, c: &[u32]| MotzkinStep { rise, colors: set(c) };
        assert!(MotzkinPath::new(2, 0, vec![st(0, &[1])]).is_ok());
        assert!(MotzkinPath::new(2, 0, vec![st(0, &[1, 2])]).is_err());
        assert!(MotzkinPath::new(2, 0, vec![st(-1, &[]), st(1, &[1, 2]), st(0, &[2])]).is_err());
        assert!(MotzkinPath::new(2, 0, vec![st(1, &[1, 2])]).is_err());
    }

    #[test]
    fn convergence_windows() {
        let r = convergence_check(4, 0, 12, 6).unwrap();
        assert_eq!(r.guaranteed, 4);
        assert!(r.ok && r.agreed >= 4);
        assert!(convergence_check(2, 0, 6, 4).unwrap().agreed >= 1);
        assert!(convergence_check(1, 1, 12, 6).unwrap().agreed >= 4);
    }
}
