//! Product renderings of theta expressions.
//!
//! Every `θ_{m,b}` (with `0 ≤ b ≤ m`) has the triple-product form
//! `q^{b²/4m}(q^{2m};q^{2m})(−q^{m−b};q^{2m})(−q^{m+b};q^{2m})` and the
//! eta/Klein form `−q^{−m/6} η(2mτ)³ t⁻_{1/2+b/2m}(2mτ)`. [`PochhammerProduct`]
//! holds the first after removing the signs, [`EtaKleinProduct`] the second.

use super::expr::{rat_str, superscript, Monomial, ThetaExpr, ThetaStyle};
use super::hvector::h_vector;
use super::simplify::sym_simplify;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::thetafun::{euler_at, klein_form_twisted, pochhammer_rat, ThetaIndex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Output style for [`sym_render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderMode {
    Theta,
    Latex,
    Pochhammer,
    EtaKlein,
}

impl FromStr for RenderMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(RenderMode::Theta),
            "latex" => Ok(RenderMode::Latex),
            "pochhammer" => Ok(RenderMode::Pochhammer),
            "eta" | "eta-klein" => Ok(RenderMode::EtaKlein),
            _ => Err(Error::Parse(format!("unknown render mode `{s}`"))),
        }
    }
}

fn zero() -> Rational64 {
    Rational64::zero()
}

/// `coeff · q^{qpow} · ∏ (q^c;q^s)_∞^{e}`, keyed by `(s, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochhammerProduct {
    pub coeff: BigInt,
    pub qpow: Rational64,
    pub factors: BTreeMap<(Rational64, Rational64), i64>,
}

impl PochhammerProduct {
    pub fn constant(c: BigInt) -> Self {
        PochhammerProduct { coeff: c, qpow: zero(), factors: BTreeMap::new() }
    }

    /// Multiplies in `(q^c;q^s)^e`.
    pub fn with(mut self, c: Rational64, s: Rational64, e: i64) -> Self {
        self.push(c, s, e);
        self
    }

    fn push(&mut self, c: Rational64, s: Rational64, e: i64) {
        let v = self.factors.entry((s, c)).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&(s, c));
        }
    }

    /// Multiplies in `(−q^c;q^s)^e`, rewritten without signs.
    fn push_neg(&mut self, c: Rational64, s: Rational64, e: i64) {
        debug_assert!(e > 0);
        if c.is_zero() {
            // (−1;q^s) = 2(−q^s;q^s)
            self.coeff *= BigInt::from(2).pow(e as u32);
            self.push_neg(s, s, e);
        } else {
            self.push(c * 2, s * 2, e);
            self.push(c, s, -e);
        }
    }

    pub fn mul(&self, other: &PochhammerProduct) -> PochhammerProduct {
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        out.qpow += other.qpow;
        for ((s, c), e) in &other.factors {
            out.push(*c, *s, *e);
        }
        out
    }

    /// Triple-product form of one `θ_{m,b}`.
    pub fn from_theta(idx: ThetaIndex) -> Self {
        let idx = idx.canonical();
        let (m, b) = (idx.m(), idx.b());
        let s = m * 2;
        let mut p = PochhammerProduct::constant(BigInt::one());
        p.qpow = b * b / (m * 4);
        p.push(s, s, 1);
        p.push_neg(m - b, s, 1);
        p.push_neg(m + b, s, 1);
        p
    }

    /// Product form of a theta monomial with coefficient `c`, consolidated.
    pub fn from_monomial(m: &Monomial, c: &BigInt) -> Self {
        let mut p = PochhammerProduct::constant(c.clone());
        p.qpow = m.qpow;
        for idx in &m.factors {
            p = p.mul(&Self::from_theta(*idx));
        }
        p.consolidate()
    }

    /// Rewrites the factors as an eta quotient `∏(q^t;q^t)^{e_t}` when the
    /// exponent pattern allows it, and otherwise as `∏_r (q^r;q^N)^{f(r)}` over
    /// one common modulus. Factors with `c > s` are left alone.
    pub fn consolidate(&self) -> Self {
        if self.factors.is_empty() || self.factors.keys().any(|(s, c)| *c <= zero() || c > s) {
            return self.clone();
        }
        let d = self.factors.keys().fold(1i64, |acc, (s, c)| acc.lcm(s.denom()).lcm(c.denom()));
        let ints: Vec<(i64, i64, i64)> = self
            .factors
            .iter()
            .map(|((s, c), e)| ((*s * d).to_integer(), (*c * d).to_integer(), *e))
            .collect();
        let g = ints.iter().fold(0i64, |acc, (s, c, _)| acc.gcd(s).gcd(c));
        let unit = Rational64::new(g, d);
        let ints: Vec<(i64, i64, i64)> = ints.into_iter().map(|(s, c, e)| (s / g, c / g, e)).collect();
        let n = ints.iter().fold(1i64, |acc, (s, _, _)| acc.lcm(s));
        let f: Vec<i64> = (0..=n)
            .map(|r| if r == 0 { 0 } else { ints.iter().filter(|(s, c, _)| (r - c) % s == 0).map(|x| x.2).sum() })
            .collect();
        let mut out = PochhammerProduct { coeff: self.coeff.clone(), qpow: self.qpow, factors: BTreeMap::new() };
        let eta_shaped = (1..=n).all(|r| f[r as usize] == f[r.gcd(&n) as usize]);
        if eta_shaped {
            for t in (1..=n).filter(|t| n % t == 0) {
                let e: i64 = (1..=t).filter(|d| t % d == 0).map(|d| mobius(t / d) * f[d as usize]).sum();
                let step = unit * t;
                out.push(step, step, e);
            }
        } else {
            for r in 1..=n {
                out.push(unit * r, unit * n, f[r as usize]);
            }
        }
        out
    }

    pub fn evaluate(&self, prec: Rational64) -> Result<QSeries> {
        let p = prec - self.qpow;
        let mut acc = QSeries::constant(BigRational::from_integer(self.coeff.clone()), p);
        for ((s, c), e) in &self.factors {
            acc = acc.mul(&pochhammer_rat(*c, *s, p)?.pow(*e)?);
        }
        Ok(acc.shift(self.qpow).truncate(prec))
    }

    fn body(&self) -> String {
        let mut num = String::new();
        let abs = self.coeff.abs();
        if !abs.is_one() {
            num.push_str(&abs.to_string());
        }
        if !self.qpow.is_zero() {
            num.push_str(&qpow_str(self.qpow));
        }
        let mut den = Vec::new();
        for ((s, c), e) in &self.factors {
            let f = format!("({};{})", qpow_str(*c), qpow_str(*s));
            let sup = if e.abs() > 1 { superscript(e.unsigned_abs()) } else { String::new() };
            if *e > 0 {
                num.push_str(&f);
                num.push_str(&sup);
            } else {
                den.push(format!("{f}{sup}"));
            }
        }
        if num.is_empty() {
            num.push('1');
        }
        match den.len() {
            0 => num,
            1 => format!("{num}/{}", den[0]),
            _ => format!("{num}/({})", den.concat()),
        }
    }
}

fn mobius(mut n: i64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn qpow_str(e: Rational64) -> String {
    if e.is_one() {
        "q".into()
    } else if e.is_integer() && e > zero() {
        format!("q{}", superscript(e.to_integer() as u64))
    } else {
        format!("q^{{{}}}", rat_str(e))
    }
}

/// A signed sum of [`PochhammerProduct`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductSum(pub Vec<PochhammerProduct>);

impl ProductSum {
    pub fn from_expr(e: &ThetaExpr) -> Self {
        ProductSum(e.terms().map(|(m, c)| PochhammerProduct::from_monomial(m, c)).collect())
    }

    /// Multiplies every term by `p` and re-consolidates.
    pub fn mul_product(&self, p: &PochhammerProduct) -> Self {
        ProductSum(self.0.iter().map(|t| t.mul(p).consolidate()).collect())
    }

    pub fn evaluate(&self, prec: Rational64) -> Result<QSeries> {
        let mut acc = QSeries::zero(prec);
        for t in &self.0 {
            acc = acc.add(&t.evaluate(prec)?);
        }
        Ok(acc)
    }
}

fn join_signed<T>(items: &[T], neg: impl Fn(&T) -> bool, body: impl Fn(&T) -> String) -> String {
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in items.iter().enumerate() {
        match (i, neg(t)) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body(t));
    }
    out
}

impl fmt::Display for PochhammerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&self.body())
    }
}

impl fmt::Display for ProductSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(&self.0, |t| t.coeff.is_negative(), |t| t.body()))
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn sup_digit(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c).map(|p| p as u32)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().ok())?
    }

    fn sup(&mut self) -> Option<i64> {
        let mut v: Option<i64> = None;
        while let Some(d) = self.peek().and_then(sup_digit) {
            v = Some(v.unwrap_or(0) * 10 + d as i64);
            self.pos += 1;
        }
        v
    }

    fn rational(&mut self) -> Result<Rational64> {
        let neg = self.eat('-');
        let n = self.digits().ok_or_else(|| self.err("expected a number"))?;
        let d = if self.eat('/') { self.digits().ok_or_else(|| self.err("expected a denominator"))? } else { 1 };
        if d == 0 {
            return Err(self.err("zero denominator"));
        }
        Ok(Rational64::new(if neg { -n } else { n }, d))
    }

    /// `q`, `q²`, or `q^{p/r}`.
    fn qpow(&mut self) -> Result<Rational64> {
        self.expect('q')?;
        if self.eat('^') {
            self.expect('{')?;
            let r = self.rational()?;
            self.expect('}')?;
            Ok(r)
        } else {
            Ok(Rational64::from_integer(self.sup().unwrap_or(1)))
        }
    }

    /// `(q^c;q^s)` with an optional superscript exponent.
    fn factor(&mut self) -> Result<(Rational64, Rational64, i64)> {
        self.expect('(')?;
        let c = self.qpow()?;
        self.expect(';')?;
        let s = self.qpow()?;
        self.expect(')')?;
        Ok((c, s, self.sup().unwrap_or(1)))
    }

    fn product(&mut self, negative: bool) -> Result<PochhammerProduct> {
        let mut p = PochhammerProduct::constant(BigInt::one());
        if let Some(n) = self.digits() {
            p.coeff = BigInt::from(n);
        }
        if negative {
            p.coeff = -p.coeff;
        }
        if self.peek() == Some('q') {
            p.qpow = self.qpow()?;
        }
        while self.peek() == Some('(') {
            let (c, s, e) = self.factor()?;
            p.push(c, s, e);
        }
        if self.eat('/') {
            let grouped = self.peek() == Some('(') && self.chars.get(self.pos + 1) == Some(&'(');
            if grouped {
                self.expect('(')?;
                while self.peek() == Some('(') {
                    let (c, s, e) = self.factor()?;
                    p.push(c, s, -e);
                }
                self.expect(')')?;
            } else {
                let (c, s, e) = self.factor()?;
                p.push(c, s, -e);
            }
        }
        Ok(p)
    }

    fn sum(&mut self) -> Result<ProductSum> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        loop {
            terms.push(self.product(negative)?);
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(self.err("unexpected character")),
            }
            self.pos += 1;
        }
        Ok(ProductSum(terms))
    }
}

impl FromStr for ProductSum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        if p.chars.is_empty() {
            return Err(Error::Parse("empty product".into()));
        }
        if p.chars == ['0'] {
            return Ok(ProductSum::default());
        }
        p.sum()
    }
}

impl FromStr for PochhammerProduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut sum: ProductSum = s.parse()?;
        if sum.0.len() != 1 {
            return Err(Error::Parse(format!("expected a single product in `{s}`")));
        }
        Ok(sum.0.pop().unwrap())
    }
}

/// `coeff · q^{qpow} · ∏ η(tτ)^{e} · ∏ t⁻_A(tτ)^{e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaKleinProduct {
    pub coeff: BigInt,
    pub qpow: Rational64,
    pub etas: BTreeMap<i64, i64>,
    pub kleins: BTreeMap<(i64, Rational64), i64>,
}

fn klein_lead(a: Rational64) -> Rational64 {
    a * a / 2 - a / 2 + Rational64::new(1, 12)
}

fn scale_str(t: i64) -> String {
    if t == 1 {
        "τ".into()
    } else {
        format!("{t}τ")
    }
}

impl EtaKleinProduct {
    pub fn from_monomial(m: &Monomial, c: &BigInt) -> Self {
        let mut p = EtaKleinProduct { coeff: c.clone(), qpow: m.qpow, etas: BTreeMap::new(), kleins: BTreeMap::new() };
        for idx in &m.factors {
            let idx = idx.canonical();
            let t = idx.m2;
            p.coeff = -p.coeff;
            p.qpow -= Rational64::new(t, 12);
            *p.etas.entry(t).or_insert(0) += 3;
            let a = Rational64::new(1, 2) + Rational64::new(idx.b2, 2 * t);
            *p.kleins.entry((t, a)).or_insert(0) += 1;
        }
        p
    }

    /// Multiplies by `1/(q;q)^k = q^{k/24} η(τ)^{−k}`.
    pub fn div_euler_power(mut self, k: i64) -> Self {
        self.qpow += Rational64::new(k, 24);
        let e = self.etas.entry(1).or_insert(0);
        *e -= k;
        if *e == 0 {
            self.etas.remove(&1);
        }
        self
    }

    pub fn evaluate(&self, prec: Rational64) -> Result<QSeries> {
        let mut lead = self.qpow;
        for (t, e) in &self.etas {
            lead += Rational64::new(t * e, 24);
        }
        for ((t, a), e) in &self.kleins {
            lead += klein_lead(*a) * (t * e);
        }
        let p = prec - lead;
        let mut acc = QSeries::constant(BigRational::from_integer(self.coeff.clone()), p);
        for (t, e) in &self.etas {
            acc = acc.mul(&euler_at(*t, p).pow(*e)?);
        }
        for ((t, a), e) in &self.kleins {
            let v = klein_lead(*a);
            let tr = Rational64::from_integer(*t);
            let unit = klein_form_twisted(*a, p / tr + v)?.shift(-v).substitute(*t);
            acc = acc.mul(&unit.pow(*e)?);
        }
        Ok(acc.shift(lead).truncate(prec))
    }

    fn body(&self) -> String {
        let mut out = String::new();
        let abs = self.coeff.abs();
        if !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        if !self.qpow.is_zero() {
            out.push_str(&format!("q^{{{}}}", rat_str(self.qpow)));
        }
        let pow = |e: i64| match e {
            1 => String::new(),
            e if e > 0 => superscript(e as u64),
            e => format!("^{{{e}}}"),
        };
        for (t, e) in &self.etas {
            out.push_str(&format!("η({}){}", scale_str(*t), pow(*e)));
        }
        for ((t, a), e) in &self.kleins {
            out.push_str(&format!("t⁻_{{{}}}({}){}", rat_str(*a), scale_str(*t), pow(*e)));
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl fmt::Display for EtaKleinProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&self.body())
    }
}

/// A signed sum of [`EtaKleinProduct`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EtaKleinSum(pub Vec<EtaKleinProduct>);

impl EtaKleinSum {
    pub fn from_expr(e: &ThetaExpr) -> Self {
        EtaKleinSum(e.terms().map(|(m, c)| EtaKleinProduct::from_monomial(m, c)).collect())
    }

    pub fn evaluate(&self, prec: Rational64) -> Result<QSeries> {
        let mut acc = QSeries::zero(prec);
        for t in &self.0 {
            acc = acc.add(&t.evaluate(prec)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for EtaKleinSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(&self.0, |t| t.coeff.is_negative(), |t| t.body()))
    }
}

/// Renders a theta expression in the chosen style.
pub fn sym_render(e: &ThetaExpr, mode: RenderMode) -> String {
    match mode {
        RenderMode::Theta => e.render(ThetaStyle::Plain),
        RenderMode::Latex => e.render(ThetaStyle::Latex),
        RenderMode::Pochhammer => ProductSum::from_expr(e).to_string(),
        RenderMode::EtaKlein => EtaKleinSum::from_expr(e).to_string(),
    }
}

/// `(q;q)^{−k}` as a product.
pub fn euler_inverse_power(k: i64) -> PochhammerProduct {
    PochhammerProduct::constant(BigInt::one()).with(Rational64::one(), Rational64::one(), -k)
}

/// Central entry `h_{k/2,k/2}`, optionally simplified.
pub fn central_entry(k: u32, simplify: bool) -> Result<ThetaExpr> {
    let h = h_vector(k)?;
    let e = h.entry(k as i64).clone();
    Ok(if simplify { sym_simplify(&e) } else { e })
}

/// Renders `CΦ_k = h_{k/2,k/2}/(q;q)^k`.
pub fn render_central(k: u32, simplify: bool, mode: RenderMode) -> Result<String> {
    let e = central_entry(k, simplify)?;
    let kk = k as i64;
    Ok(match mode {
        RenderMode::Theta => format!("({})/(q;q){}", e.render(ThetaStyle::Plain), superscript(k as u64)),
        RenderMode::Latex => format!("\\frac{{{}}}{{(q;q)_\\infty^{{{k}}}}}", e.render(ThetaStyle::Latex)),
        RenderMode::Pochhammer => ProductSum::from_expr(&e).mul_product(&euler_inverse_power(kk)).to_string(),
        RenderMode::EtaKlein => {
            let s = EtaKleinSum::from_expr(&e);
            EtaKleinSum(s.0.into_iter().map(|p| p.div_euler_power(kk)).collect()).to_string()
        }
    })
}
