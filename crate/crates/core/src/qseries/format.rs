//! Line-oriented text and JSON encodings of [`QSeries`] and [`ZetaSeries`].
//!
//! Text form:
//!
//! ```text
//! qseries <denom> <prec>
//! <exponent numerator> <p/q>
//! end
//! ```
//!
//! A ζ-series is `zseries <prec>` followed by `zeta <2r>` headers, each with
//! one q-series block, and a closing `zend`.

use super::{QSeries, ZetaSeries};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn rat64_str(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn big_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rat64(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_big(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn assemble(denom: i64, prec: Rational64, terms: Vec<(i64, BigRational)>) -> Result<QSeries> {
    if denom < 1 {
        return Err(Error::Parse(format!("denominator must be positive, got {denom}")));
    }
    let mut map = BTreeMap::new();
    for (k, c) in terms {
        if map.insert(k, c).is_some() {
            return Err(Error::Parse(format!("repeated exponent {k}")));
        }
    }
    Ok(QSeries::build(denom, map, prec))
}

/// JSON shape of a [`QSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub denom: i64,
    pub prec: String,
    pub terms: Vec<(i64, String)>,
}

/// JSON shape of a [`ZetaSeries`]; `zdenom` is always 2 (keys are doubled).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaSeriesJson {
    pub zdenom: i64,
    pub prec: String,
    pub zcoeffs: Vec<(i64, QSeriesJson)>,
}

impl QSeries {
    pub fn to_json_value(&self) -> QSeriesJson {
        QSeriesJson {
            denom: self.denom,
            prec: rat64_str(self.prec),
            terms: self.terms.iter().map(|(k, c)| (*k, big_str(c))).collect(),
        }
    }

    pub fn from_json_value(v: &QSeriesJson) -> Result<Self> {
        let terms = v
            .terms
            .iter()
            .map(|(k, c)| Ok((*k, parse_big(c)?)))
            .collect::<Result<Vec<_>>>()?;
        assemble(v.denom, parse_rat64(&v.prec)?, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: QSeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qseries {} {}\n", self.denom, rat64_str(self.prec));
        for (k, c) in &self.terms {
            out.push_str(&format!("{k} {}\n", big_str(c)));
        }
        out.push_str("end\n");
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let s = Self::parse_block(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing input `{extra}`")));
        }
        Ok(s)
    }

    fn parse_block<'a, I: Iterator<Item = &'a str>>(lines: &mut I) -> Result<Self> {
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "qseries" {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let denom: i64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad denominator `{}`", parts[1])))?;
        let prec = parse_rat64(parts[2])?;
        let mut terms = Vec::new();
        loop {
            let line = lines.next().ok_or_else(|| Error::Parse("missing `end`".into()))?;
            if line == "end" {
                break;
            }
            let (k, c) = line.split_once(' ').ok_or_else(|| Error::Parse(format!("bad term `{line}`")))?;
            let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
            terms.push((k, parse_big(c)?));
        }
        assemble(denom, prec, terms)
    }
}

impl ZetaSeries {
    pub fn to_json_value(&self) -> ZetaSeriesJson {
        ZetaSeriesJson {
            zdenom: 2,
            prec: rat64_str(self.prec()),
            zcoeffs: self.iter().map(|(k, s)| (k, s.to_json_value())).collect(),
        }
    }

    pub fn from_json_value(v: &ZetaSeriesJson) -> Result<Self> {
        if v.zdenom != 2 {
            return Err(Error::Parse(format!("unsupported zdenom {}", v.zdenom)));
        }
        let prec = parse_rat64(&v.prec)?;
        let items = v
            .zcoeffs
            .iter()
            .map(|(k, s)| Ok((*k, QSeries::from_json_value(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZetaSeries::from_coeffs(items, prec))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: ZetaSeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("zseries {}\n", rat64_str(self.prec()));
        for (k, s) in self.iter() {
            out.push_str(&format!("zeta {k}\n"));
            out.push_str(&s.to_text());
        }
        out.push_str("zend\n");
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let prec = match header.split_once(' ') {
            Some(("zseries", p)) => parse_rat64(p)?,
            _ => return Err(Error::Parse(format!("bad header `{header}`"))),
        };
        let mut items = Vec::new();
        loop {
            let line = lines.next().ok_or_else(|| Error::Parse("missing `zend`".into()))?;
            if line == "zend" {
                break;
            }
            let r2 = match line.split_once(' ') {
                Some(("zeta", r)) => r.parse::<i64>().map_err(|_| Error::Parse(format!("bad key `{r}`")))?,
                _ => return Err(Error::Parse(format!("expected `zeta`, got `{line}`"))),
            };
            items.push((r2, QSeries::parse_block(&mut lines)?));
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing input `{extra}`")));
        }
        Ok(ZetaSeries::from_coeffs(items, prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn sample() -> QSeries {
        QSeries::from_terms(
            vec![
                (rat(1, 4), BigRational::new(2.into(), 1.into())),
                (rat(-3, 2), BigRational::new((-7).into(), 3.into())),
            ],
            rat(9, 4),
        )
    }

    #[test]
    fn text_round_trip() {
        let s = sample();
        let t = s.to_text();
        assert!(t.starts_with("qseries 4 9/4\n"));
        assert!(QSeries::from_text(&t).unwrap().eq_exact(&s));
    }

    #[test]
    fn json_round_trip() {
        let s = sample();
        let j = s.to_json();
        assert!(j.contains("\"-7/3\""));
        assert!(QSeries::from_json(&j).unwrap().eq_exact(&s));
    }

    #[test]
    fn zeta_round_trips() {
        let z = ZetaSeries::from_coeffs([(1, sample()), (-3, sample().neg())], int(2));
        assert!(ZetaSeries::from_text(&z.to_text()).unwrap().eq_exact(&z));
        assert!(ZetaSeries::from_json(&z.to_json()).unwrap().eq_exact(&z));
    }

    #[test]
    fn rejects_garbage() {
        assert!(QSeries::from_text("qseries 0 1\nend").is_err());
        assert!(QSeries::from_text("qseries 1 1\n0 1/0\nend").is_err());
        assert!(QSeries::from_text("qseries 1 1\n0 1").is_err());
        assert!(QSeries::from_json("{\"denom\":1}").is_err());
    }
}
