//! Generating functions `CΨ_{k,a}(q)` by coefficient extraction, and the
//! colored Frobenius partitions they count.
//!
//! `CΨ_{k,a}` is the `ζ^{a−k/2}` coefficient of
//! `∏_{n≥0} (1+ζq^{n+1})^k (1+ζ^{-1}q^n)^k`; a top-row part `v` comes from a
//! factor `ζq^{v+1}` and a bottom-row part `v` from `ζ^{-1}q^v`.

use crate::error::{check_parity, Error, Result};
use crate::qseries::{key_bound, QSeries};
use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::{CheckedAdd, One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// A part `value` drawn from copy `color` (1-based) of the nonnegative integers.
///
/// Ordering is lexicographic: by value, then by color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPart {
    pub value: u32,
    pub color: u32,
}

impl ColoredPart {
    pub fn new(value: u32, color: u32) -> Self {
        ColoredPart { value, color }
    }
}

fn check_row(k: u32, row: &[ColoredPart]) -> Result<()> {
    for p in row {
        if p.color == 0 || p.color > k {
            return Err(Error::Domain(format!("color {} outside 1..={k}", p.color)));
        }
    }
    if row.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Domain("rows must be strictly decreasing".into()));
    }
    Ok(())
}

fn row_sum(row: &[ColoredPart]) -> u64 {
    row.iter().map(|p| p.value as u64).sum()
}

/// A `(k,a)`-colored F-partition: rows strictly decreasing and `r − s = a − k/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobPartition {
    k: u32,
    a2: i64,
    top: Vec<ColoredPart>,
    bottom: Vec<ColoredPart>,
}

impl FrobPartition {
    pub fn new(k: u32, a2: i64, top: Vec<ColoredPart>, bottom: Vec<ColoredPart>) -> Result<Self> {
        check_parity(k, a2)?;
        check_row(k, &top)?;
        check_row(k, &bottom)?;
        let diff2 = 2 * (top.len() as i64 - bottom.len() as i64);
        if diff2 != a2 - k as i64 {
            return Err(Error::Domain(format!(
                "row lengths {} and {} do not differ by a - k/2",
                top.len(),
                bottom.len()
            )));
        }
        Ok(FrobPartition { k, a2, top, bottom })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a2(&self) -> i64 {
        self.a2
    }

    pub fn top(&self) -> &[ColoredPart] {
        &self.top
    }

    pub fn bottom(&self) -> &[ColoredPart] {
        &self.bottom
    }

    /// `r + Σ top + Σ bottom`.
    pub fn weight(&self) -> u64 {
        self.top.len() as u64 + row_sum(&self.top) + row_sum(&self.bottom)
    }
}

/// The alternative form: a pair of rows plus a color set `T` with
/// `a − k/2 ≤ r − s ≤ a + k/2` and `|T| = k/2 − a + r − s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobPartitionDrake {
    k: u32,
    a2: i64,
    top: Vec<ColoredPart>,
    bottom: Vec<ColoredPart>,
    tset: BTreeSet<u32>,
}

impl FrobPartitionDrake {
    pub fn new(
        k: u32,
        a2: i64,
        top: Vec<ColoredPart>,
        bottom: Vec<ColoredPart>,
        tset: BTreeSet<u32>,
    ) -> Result<Self> {
        check_parity(k, a2)?;
        check_row(k, &top)?;
        check_row(k, &bottom)?;
        if tset.iter().any(|&c| c == 0 || c > k) {
            return Err(Error::Domain(format!("T must be a subset of 1..={k}")));
        }
        let d = top.len() as i64 - bottom.len() as i64;
        let j = (a2 - k as i64) / 2;
        if d < j || d > j + k as i64 {
            return Err(Error::Domain(format!("r - s = {d} outside [a-k/2, a+k/2]")));
        }
        if tset.len() as i64 != d - j {
            return Err(Error::Domain(format!("|T| = {} but k/2 - a + r - s = {}", tset.len(), d - j)));
        }
        Ok(FrobPartitionDrake { k, a2, top, bottom, tset })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a2(&self) -> i64 {
        self.a2
    }

    pub fn top(&self) -> &[ColoredPart] {
        &self.top
    }

    pub fn bottom(&self) -> &[ColoredPart] {
        &self.bottom
    }

    pub fn tset(&self) -> &BTreeSet<u32> {
        &self.tset
    }

    /// `r + s + Σ top + Σ bottom`.
    pub fn weight(&self) -> u64 {
        (self.top.len() + self.bottom.len()) as u64 + row_sum(&self.top) + row_sum(&self.bottom)
    }
}

/// Adds one to each bottom part and appends zeros colored by `T`.
pub fn drake_to_plain(p: &FrobPartitionDrake) -> Result<FrobPartition> {
    let mut bottom: Vec<ColoredPart> =
        p.bottom.iter().map(|c| ColoredPart::new(c.value + 1, c.color)).collect();
    bottom.extend(p.tset.iter().rev().map(|&c| ColoredPart::new(0, c)));
    FrobPartition::new(p.k, p.a2, p.top.clone(), bottom)
}

/// Inverse of [`drake_to_plain`]: bottom zeros become `T`, other parts drop by one.
pub fn plain_to_drake(p: &FrobPartition) -> Result<FrobPartitionDrake> {
    let tset = p.bottom.iter().filter(|c| c.value == 0).map(|c| c.color).collect();
    let bottom = p
        .bottom
        .iter()
        .filter(|c| c.value > 0)
        .map(|c| ColoredPart::new(c.value - 1, c.color))
        .collect();
    FrobPartitionDrake::new(p.k, p.a2, p.top.clone(), bottom, tset)
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn part_str(p: &ColoredPart) -> String {
    let sub: String = p.color.to_string().chars().map(|d| SUBSCRIPTS[d.to_digit(10).unwrap() as usize]).collect();
    format!("{}{}", p.value, sub)
}

fn two_rows(f: &mut fmt::Formatter<'_>, top: &[ColoredPart], bottom: &[ColoredPart]) -> fmt::Result {
    let t: Vec<String> = top.iter().map(part_str).collect();
    let b: Vec<String> = bottom.iter().map(part_str).collect();
    let cols = t.len().max(b.len());
    let width = |i: usize| {
        let a = t.get(i).map_or(0, |s| s.chars().count());
        let c = b.get(i).map_or(0, |s| s.chars().count());
        a.max(c)
    };
    let line = |row: &[String]| -> String {
        (0..cols)
            .map(|i| {
                let s = row.get(i).cloned().unwrap_or_default();
                let pad = width(i) - s.chars().count();
                format!("{s}{}", " ".repeat(pad))
            })
            .join(" ")
    };
    writeln!(f, "( {} )", line(&t))?;
    write!(f, "( {} )", line(&b))
}

impl fmt::Display for FrobPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        two_rows(f, &self.top, &self.bottom)
    }
}

impl fmt::Display for FrobPartitionDrake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        two_rows(f, &self.top, &self.bottom)?;
        write!(f, " T={{{}}}", self.tset.iter().join(","))
    }
}

/// Strictly decreasing rows over `k` colors, bucketed by `[length][value sum]`.
struct RowTable {
    rows: Vec<Vec<Vec<Vec<ColoredPart>>>>,
}

impl RowTable {
    fn new(k: u32, max_len: usize, max_sum: usize) -> Self {
        let mut rows = vec![vec![Vec::new(); max_sum + 1]; max_len + 1];
        let mut cur = Vec::new();
        Self::grow(k, max_len, max_sum, None, 0, &mut cur, &mut rows);
        RowTable { rows }
    }

    fn grow(
        k: u32,
        max_len: usize,
        max_sum: usize,
        below: Option<ColoredPart>,
        sum: usize,
        cur: &mut Vec<ColoredPart>,
        rows: &mut Vec<Vec<Vec<Vec<ColoredPart>>>>,
    ) {
        rows[cur.len()][sum].push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        let vmax = match below {
            Some(p) => p.value.min((max_sum - sum) as u32),
            None => (max_sum - sum) as u32,
        };
        for v in (0..=vmax).rev() {
            for c in (1..=k).rev() {
                let part = ColoredPart::new(v, c);
                if below.is_some_and(|b| part >= b) {
                    continue;
                }
                cur.push(part);
                Self::grow(k, max_len, max_sum, Some(part), sum + v as usize, cur, rows);
                cur.pop();
            }
        }
    }

    fn get(&self, len: usize, sum: usize) -> &[Vec<ColoredPart>] {
        self.rows.get(len).and_then(|r| r.get(sum)).map_or(&[], |v| v.as_slice())
    }
}

/// Calls `f(top, bottom)` for every `(k,a)`-colored F-partition of weight `n`.
pub fn for_each_frob<F: FnMut(&[ColoredPart], &[ColoredPart])>(k: u32, a2: i64, n: u64, mut f: F) -> Result<()> {
    check_parity(k, a2)?;
    let j = (a2 - k as i64) / 2;
    let n_us = n as usize;
    let max_len = n_us + j.unsigned_abs() as usize;
    let table = RowTable::new(k, max_len, n_us);
    for r in j.max(0) as usize..=n_us {
        let s = (r as i64 - j) as usize;
        for st in 0..=(n_us - r) {
            let sb = n_us - r - st;
            let bottoms = table.get(s, sb);
            if bottoms.is_empty() {
                continue;
            }
            for top in table.get(r, st) {
                for bottom in bottoms {
                    f(top, bottom);
                }
            }
        }
    }
    Ok(())
}

/// All `(k,a)`-colored F-partitions of weight `n`, ordered by decreasing top
/// row, then decreasing bottom row (rows compared lexicographically).
pub fn enumerate_frob(k: u32, a2: i64, n: u64) -> Result<Vec<FrobPartition>> {
    let mut out = Vec::new();
    for_each_frob(k, a2, n, |t, b| {
        out.push(FrobPartition { k, a2, top: t.to_vec(), bottom: b.to_vec() });
    })?;
    out.sort_by(|x, y| (&y.top, &y.bottom).cmp(&(&x.top, &x.bottom)));
    Ok(out)
}

/// Number of `(k,a)`-colored F-partitions of weight `n`, by enumeration.
pub fn count_frob(k: u32, a2: i64, n: u64) -> Result<u64> {
    let mut c = 0u64;
    for_each_frob(k, a2, n, |_, _| c += 1)?;
    Ok(c)
}

/// Calls `f(top, bottom, T)` for every partition in the alternative form of weight `n`.
pub fn for_each_drake<F>(k: u32, a2: i64, n: u64, mut f: F) -> Result<()>
where
    F: FnMut(&[ColoredPart], &[ColoredPart], &BTreeSet<u32>),
{
    check_parity(k, a2)?;
    let j = (a2 - k as i64) / 2;
    let n_us = n as usize;
    let table = RowTable::new(k, n_us, n_us);
    for d in j..=j + k as i64 {
        let subsets: Vec<BTreeSet<u32>> =
            (1..=k).combinations((d - j) as usize).map(|c| c.into_iter().collect()).collect();
        for r in d.max(0) as usize..=n_us {
            let s = (r as i64 - d) as usize;
            if r + s > n_us {
                break;
            }
            for st in 0..=(n_us - r - s) {
                let sb = n_us - r - s - st;
                for top in table.get(r, st) {
                    for bottom in table.get(s, sb) {
                        for t in &subsets {
                            f(top, bottom, t);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// All partitions in the alternative form of weight `n`.
pub fn enumerate_drake(k: u32, a2: i64, n: u64) -> Result<Vec<FrobPartitionDrake>> {
    let mut out = Vec::new();
    for_each_drake(k, a2, n, |t, b, s| {
        out.push(FrobPartitionDrake { k, a2, top: t.to_vec(), bottom: b.to_vec(), tset: s.clone() });
    })?;
    Ok(out)
}

/// Fills the `(2W+1) × n` grid of `∏ (1+ζq^{e+1})^k (1+ζ^{-1}q^e)^k`.
/// Returns `None` if a checked addition overflows.
fn product_grid<T>(k: u32, n: usize, w: usize) -> Option<Vec<Vec<T>>>
where
    T: Clone + Zero + One + CheckedAdd,
{
    let rows = 2 * w + 1;
    let mut g = vec![vec![T::zero(); n]; rows];
    g[w][0] = T::one();
    let mul = |g: &mut Vec<Vec<T>>, up: bool, e: usize| -> Option<()> {
        if up {
            for r in (1..rows).rev() {
                let (lo, hi) = g.split_at_mut(r);
                let src = &lo[r - 1];
                let dst = &mut hi[0];
                for c in e..n {
                    if !src[c - e].is_zero() {
                        dst[c] = dst[c].checked_add(&src[c - e])?;
                    }
                }
            }
        } else {
            for r in 0..rows - 1 {
                let (lo, hi) = g.split_at_mut(r + 1);
                let dst = &mut lo[r];
                let src = &hi[0];
                for c in e..n {
                    if !src[c - e].is_zero() {
                        dst[c] = dst[c].checked_add(&src[c - e])?;
                    }
                }
            }
        }
        Some(())
    };
    for e in 0..n {
        for _ in 0..k {
            mul(&mut g, false, e)?;
            if e + 1 < n {
                mul(&mut g, true, e + 1)?;
            }
        }
    }
    Some(g)
}

/// The `ζ^{r2/2}` coefficient of `F_k` normalized so that `r2 = a2` gives
/// `CΨ_{k,a}`, i.e. `[ζ^{(r2−k)/2}] ∏ (1+ζq^{n+1})^k (1+ζ^{-1}q^n)^k`.
///
/// `r2` may be negative; it must have the parity of `k`.
pub fn fk_coeff(k: u32, r2: i64, prec: Rational64) -> Result<QSeries> {
    if k == 0 || (r2 - k as i64).rem_euclid(2) != 0 {
        return Err(Error::Parity { k, a2: r2 });
    }
    let n = key_bound(prec, 1).max(0) as usize;
    if n == 0 {
        return Ok(QSeries::zero(prec));
    }
    let j = (r2 - k as i64) / 2;
    let bound = ((2 * k as usize * n) as f64).sqrt().ceil() as usize + k as usize;
    let w = bound.max(j.unsigned_abs() as usize + 1);
    let row = (w as i64 + j) as usize;
    let coeffs: Vec<BigInt> = match product_grid::<u128>(k, n, w) {
        Some(g) => g[row].iter().map(|&c| BigInt::from(c)).collect(),
        None => {
            let g = product_grid::<BigUint>(k, n, w).expect("big integers do not overflow");
            g[row].iter().map(|c| BigInt::from(c.clone())).collect()
        }
    };
    Ok(QSeries::from_dense(1, 0, coeffs, prec))
}

/// `CΨ_{k,a}(q)` through `prec` by direct coefficient extraction.
pub fn cpsi_direct(k: u32, a2: i64, prec: Rational64) -> Result<QSeries> {
    check_parity(k, a2)?;
    fk_coeff(k, a2, prec)
}

/// `CΦ_k(q) = CΨ_{k,k/2}(q)`.
pub fn cphi(k: u32, prec: Rational64) -> Result<QSeries> {
    cpsi_direct(k, k as i64, prec)
}
