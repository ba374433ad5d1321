//! Argument parsing and command handlers for the `frobq` binary.
//!
//! Handlers write to any `io::Write` and return an [`Outcome`], so the
//! binary only maps outcomes to exit codes.

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use frobq_core::congruence::{check_known, claims_table, scan, ClaimStatus, CongruenceClaim};
use frobq_core::decomp::{
    all_identities, central_entry, cpsi_from_h, direct_power, h_vector, reconstruct, render_central, sym_render,
    sym_simplify, RenderMode,
};
use frobq_core::formulas::Formula;
use frobq_core::frobgen::{count_frob, cpsi_direct};
use frobq_core::motzkin::{cm_enumerated, cm_poly, convergence_check, max_area};
use frobq_core::thetafun::{theta_const, theta_klein_form, theta_product_form, ThetaIndex};
use frobq_core::{int, QSeries};
use num_bigint::BigInt;
use num_rational::Rational64;
use serde_json::json;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "frobq", version, about = "Generalized Frobenius partition generating functions")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print cψ_{k,a}(n) for 0 ≤ n < N.
    Series {
        #[arg(short)]
        k: u32,
        /// `a` as an integer or half-integer, e.g. `1/2`.
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print the theta decomposition vector at level k.
    Decompose {
        #[arg(short)]
        k: u32,
        #[arg(long)]
        simplify: bool,
        /// Only the central entry, divided by (q;q)^k.
        #[arg(long)]
        central: bool,
        #[arg(long, default_value = "theta")]
        render: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        prec: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Colored Motzkin path area polynomial, optionally compared with CΨ.
    Motzkin {
        #[arg(short)]
        k: u32,
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        /// Paths have length 2n+1.
        #[arg(short)]
        n: u64,
        #[arg(long)]
        depth: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Search for congruences cψ_{k,a}(An+B) ≡ 0 (mod M).
    Scan {
        #[arg(short)]
        k: u32,
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        #[arg(long = "Amax", default_value_t = 8)]
        a_max: u64,
        #[arg(long = "Mmax", default_value_t = 64)]
        m_max: u64,
        #[arg(long = "nmax", default_value_t = 399)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Decomp,
    Enumerate,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Jtp,
    Lemmas,
    Reconstruction,
    Formulas,
    Congruences,
    Motzkin,
}

/// How a command ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// A check failed; exit code 1.
    Failed,
    /// Bad arguments; exit code 2.
    Usage(String),
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Failed => 1,
            Outcome::Usage(_) => 2,
        }
    }
}

/// Parses `a` ("0", "3", "1/2", "5/2") into `2a`.
pub fn parse_a2(s: &str) -> Result<i64, String> {
    let r: Rational64 = s.trim().parse().map_err(|_| format!("cannot parse a = {s:?}"))?;
    let d = r * 2;
    if !d.is_integer() {
        return Err(format!("a = {s} is not a multiple of 1/2"));
    }
    Ok(d.to_integer())
}

fn a_text(a2: i64) -> String {
    if a2 % 2 == 0 {
        (a2 / 2).to_string()
    } else {
        format!("{a2}/2")
    }
}

fn validate(k: u32, a: &str) -> Result<i64, String> {
    if k == 0 {
        return Err("k must be positive".into());
    }
    let a2 = parse_a2(a)?;
    if a2 < 0 {
        return Err(format!("a must be nonnegative, got {a}"));
    }
    if (a2 - k as i64).rem_euclid(2) != 0 {
        return Err(format!("a = {a} needs 2a ≡ k (mod 2) for k = {k}"));
    }
    Ok(a2)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Runs a parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Ok(Outcome::Usage("--workers must be positive".into()));
        }
        // Ignore the error if a pool is already installed (repeated calls in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    match cli.command {
        Command::Series { k, a, n, method, format } => cmd_series(k, &a, n, method, format, out),
        Command::Decompose { k, simplify, central, render } => cmd_decompose(k, simplify, central, &render, out),
        Command::Verify { suite, kmax, prec, format } => cmd_verify(suite, kmax, prec, format, out),
        Command::Motzkin { k, a, n, depth, format } => cmd_motzkin(k, &a, n, depth, format, out),
        Command::Scan { k, a, a_max, m_max, n_max, format } => cmd_scan(k, &a, a_max, m_max, n_max, format, out),
    }
}

fn series_coeffs(k: u32, a2: i64, n: usize, method: Method) -> anyhow::Result<Vec<BigInt>> {
    let prec = int(n as i64);
    let s: QSeries = match method {
        Method::Direct | Method::All => cpsi_direct(k, a2, prec)?,
        Method::Decomp => cpsi_from_h(k, a2, prec)?,
        Method::Enumerate => {
            return (0..n as u64).map(|w| Ok(BigInt::from(count_frob(k, a2, w)?))).collect();
        }
    };
    Ok(s.integer_coeffs(n)?)
}

pub fn cmd_series(k: u32, a: &str, n: usize, method: Method, format: Format, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let a2 = match validate(k, a) {
        Ok(a2) => a2,
        Err(e) => return Ok(Outcome::Usage(e)),
    };
    if n == 0 {
        return Ok(Outcome::Usage("-N must be positive".into()));
    }
    let coeffs = series_coeffs(k, a2, n, method)?;
    let mut outcome = Outcome::Ok;
    if method == Method::All {
        for m in [Method::Decomp, Method::Enumerate] {
            let other = series_coeffs(k, a2, n, m)?;
            if other != coeffs {
                let i = coeffs.iter().zip(&other).position(|(x, y)| x != y).unwrap_or(0);
                writeln!(out, "disagreement at n = {i}: direct {} vs {m:?} {}", coeffs[i], other[i])?;
                outcome = Outcome::Failed;
            }
        }
    }
    match format {
        Format::Plain => writeln!(out, "{}", join(&coeffs))?,
        Format::Json => {
            let v = json!({
                "k": k,
                "a": a_text(a2),
                "method": format!("{method:?}").to_lowercase(),
                "coeffs": coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            writeln!(out, "{v}")?;
        }
        Format::Table => {
            writeln!(out, "{:>4}  cψ_{{{k},{}}}(n)", "n", a_text(a2))?;
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(out, "{i:>4}  {c}")?;
            }
        }
    }
    Ok(outcome)
}

pub fn cmd_decompose(k: u32, simplify: bool, central: bool, render: &str, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if k == 0 {
        return Ok(Outcome::Usage("k must be positive".into()));
    }
    let mode: RenderMode = match render.parse() {
        Ok(m) => m,
        Err(e) => return Ok(Outcome::Usage(format!("{e}"))),
    };
    if central {
        if k.is_multiple_of(2) || mode == RenderMode::Theta || mode == RenderMode::Latex {
            writeln!(out, "{}", render_central(k, simplify, mode)?)?;
        } else {
            // Odd k: the central key is not an integer shift of (q;q)^k alone.
            writeln!(out, "{}", sym_render(&central_entry(k, simplify)?, mode))?;
        }
        return Ok(Outcome::Ok);
    }
    let h = h_vector(k)?;
    for (c2, e) in h.entries().filter(|(c2, _)| *c2 <= k as i64) {
        let e = if simplify { sym_simplify(e) } else { e.clone() };
        writeln!(out, "h[{}] = {}", a_text(c2), sym_render(&e, mode))?;
    }
    Ok(Outcome::Ok)
}

/// One line of a verification report.
struct Check {
    name: String,
    pass: bool,
    detail: Option<String>,
}

fn report(suite: Suite, checks: &[Check], format: Format, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let suite = format!("{suite:?}").to_lowercase();
    for c in checks {
        match format {
            Format::Json => {
                let v = json!({"suite": suite, "name": c.name, "pass": c.pass, "detail": c.detail});
                writeln!(out, "{v}")?;
            }
            _ => {
                writeln!(out, "{}  {}", if c.pass { "PASS" } else { "FAIL" }, c.name)?;
                if let Some(d) = &c.detail {
                    writeln!(out, "      {d}")?;
                }
            }
        }
        if !c.pass {
            return Ok(Outcome::Failed);
        }
    }
    if format != Format::Json {
        writeln!(out, "{suite}: {} checks passed", checks.len())?;
    }
    Ok(Outcome::Ok)
}

fn first_diff(a: &QSeries, b: &QSeries) -> Option<String> {
    frobq_core::formulas::first_difference(a, b).map(|(e, x, y)| format!("q^{e}: {x} vs {y}"))
}

pub fn cmd_verify(suite: Suite, kmax: Option<u32>, prec: Option<i64>, format: Format, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if prec.is_some_and(|p| p <= 0) {
        return Ok(Outcome::Usage("--prec must be positive".into()));
    }
    let mut checks = Vec::new();
    match suite {
        Suite::Jtp => {
            let p = int(prec.unwrap_or(30));
            for m2 in 1..=2 * kmax.unwrap_or(4) as i64 {
                for b2 in (0..=m2).filter(|b| (b - m2) % 2 == 0 || m2 % 2 == 0) {
                    let idx = ThetaIndex::new(m2, b2);
                    let t = theta_const(idx, p);
                    let mut detail = first_diff(&theta_product_form(idx, p)?, &t).map(|d| format!("product form {d}"));
                    if detail.is_none() {
                        detail = first_diff(&theta_klein_form(idx, p)?, &t).map(|d| format!("eta/Klein form {d}"));
                    }
                    checks.push(Check { name: format!("θ_{{{idx}}}"), pass: detail.is_none(), detail });
                }
            }
        }
        Suite::Lemmas => {
            for c in all_identities(kmax.unwrap_or(3) as i64, int(prec.unwrap_or(80))) {
                checks.push(Check { name: c.name, pass: c.holds, detail: None });
            }
        }
        Suite::Reconstruction => {
            let p = int(prec.unwrap_or(8));
            for k in 1..=kmax.unwrap_or(8) {
                let pass = reconstruct(k, p)? == direct_power(k, p);
                checks.push(Check { name: format!("k = {k}"), pass, detail: None });
            }
        }
        Suite::Formulas => {
            let p = int(prec.unwrap_or(61));
            for f in Formula::ALL {
                let detail = f.check(p)?.map(|(e, x, y)| format!("q^{e}: {x} vs {y}"));
                checks.push(Check { name: format!("{}: {}", f.name(), f.display()), pass: detail.is_none(), detail });
            }
        }
        Suite::Congruences => {
            let n_max = prec.unwrap_or(400) as u64 - 1;
            for (claim, r) in check_known(n_max).context("computing CΨ_{4,a}")? {
                let mut name = format!("{claim}, n ≤ {n_max}, {} values", r.tested);
                if claim.status == ClaimStatus::Conjectured {
                    name.push_str(" (conjectural)");
                }
                let detail = r.counterexample.map(|(i, c)| format!("cψ({i}) = {c}"));
                checks.push(Check { name, pass: r.holds, detail });
            }
        }
        Suite::Motzkin => {
            for k in 1..=kmax.unwrap_or(4) {
                for a2 in (0..=k as i64 + 2).filter(|a| (a - k as i64) % 2 == 0) {
                    let p = int(prec.unwrap_or(200));
                    for n in 0..=2 {
                        let dp = cm_poly(k, a2, n, p)?;
                        let en = cm_enumerated(k, a2, n, p)?;
                        let detail = first_diff(&dp.series, &en.series);
                        let name = format!("DP vs enumeration, k = {k}, a = {}, length {}", a_text(a2), 2 * n + 1);
                        checks.push(Check { name, pass: detail.is_none(), detail });
                    }
                    let r = convergence_check(k, a2, 12, 6)?;
                    let name = format!("k = {k}, a = {}: agrees with CΨ through q^{}", a_text(a2), r.agreed);
                    let detail = (!r.ok).then(|| format!("paths {:?} vs cψ {:?}", r.path_coeffs, r.cpsi_coeffs));
                    checks.push(Check { name, pass: r.ok, detail });
                }
            }
        }
    }
    report(suite, &checks, format, out)
}

pub fn cmd_motzkin(k: u32, a: &str, n: u64, depth: Option<u64>, format: Format, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let a2 = match validate(k, a) {
        Ok(a2) => a2,
        Err(e) => return Ok(Outcome::Usage(e)),
    };
    if let Some(depth) = depth {
        let r = convergence_check(k, a2, n, depth)?;
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(&r)?)?,
            _ => {
                writeln!(out, "paths: {}", join(&r.path_coeffs))?;
                writeln!(out, "cψ:    {}", join(&r.cpsi_coeffs))?;
                writeln!(out, "agreed through q^{}, guaranteed through q^{}", r.agreed, r.guaranteed)?;
            }
        }
        return Ok(if r.ok { Outcome::Ok } else { Outcome::Failed });
    }
    let top = max_area(k, a2, n).floor().to_integer();
    let count = top as usize + 1;
    let mut coeffs = cm_poly(k, a2, n, int(count as i64))?.coeffs(count)?;
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c == &BigInt::from(0)) {
        coeffs.pop();
    }
    match format {
        Format::Json => {
            let v = json!({"k": k, "a": a_text(a2), "n": n, "coeffs": coeffs.iter().map(ToString::to_string).collect::<Vec<_>>()});
            writeln!(out, "{v}")?;
        }
        Format::Plain => writeln!(out, "{}", join(&coeffs))?,
        Format::Table => {
            writeln!(out, "{:>4}  paths", "b_M")?;
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(out, "{i:>4}  {c}")?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn short_claim(c: &CongruenceClaim) -> String {
    let mark = if c.status == ClaimStatus::Conjectured { "*" } else { "" };
    format!("({},{},{}{mark})", c.modulus, c.residue, c.divisor)
}

pub fn cmd_scan(k: u32, a: &str, a_max: u64, m_max: u64, n_max: u64, format: Format, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let a2 = match validate(k, a) {
        Ok(a2) => a2,
        Err(e) => return Ok(Outcome::Usage(e)),
    };
    if a_max == 0 || m_max < 2 {
        return Ok(Outcome::Usage("need --Amax ≥ 1 and --Mmax ≥ 2".into()));
    }
    let claims = scan(k, a2, a_max, m_max, n_max)?;
    match format {
        Format::Plain => {
            for c in &claims {
                writeln!(out, "{}  {c}  [{}]", short_claim(c), c.status)?;
            }
        }
        Format::Json => {
            for c in &claims {
                writeln!(out, "{}", c.to_json_line())?;
            }
        }
        Format::Table => write!(out, "{}", claims_table(&claims))?,
    }
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a() {
        assert_eq!(parse_a2("1/2"), Ok(1));
        assert_eq!(parse_a2("3"), Ok(6));
        assert_eq!(parse_a2("0"), Ok(0));
        assert!(parse_a2("1/3").is_err());
        assert!(parse_a2("x").is_err());
    }

    #[test]
    fn parity_is_checked() {
        assert!(validate(2, "1/2").is_err());
        assert!(validate(1, "1/2").is_ok());
        assert!(validate(0, "0").is_err());
    }
}
