//! Main terms of the eight counting functions and the generic Tauberian
//! formula they come from, plus exact-vs-asymptotic ratio tables.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::family::FamilyCode;
use crate::par;

pub const DEFAULT_PRECISION: u32 = 128;

/// Parameters `B(e^{-t}) ~ lambda t^beta e^{gamma/t}` for a family's
/// generating function (or, with `stride == 2`, for each of its parity
/// subsequences in the subsequence index).
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticParams {
    pub lambda: Float,
    pub beta: Rational,
    pub gamma: Float,
    pub stride: u32,
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn sqrt_of(prec: u32, x: u32) -> Float {
    Float::with_val(prec, x).sqrt()
}

fn root4_of(prec: u32, x: u32) -> Float {
    Float::with_val(prec, x).sqrt().sqrt()
}

pub fn params(family: FamilyCode, prec: u32) -> AsymptoticParams {
    let pi = pi(prec);
    let pi_sq = Float::with_val(prec, &pi * &pi);
    let half = Rational::from((1, 2));
    let (lambda, beta, gamma, stride) = match family {
        FamilyCode::EU_OU => (1 / pi.clone().sqrt(), -half, pi_sq / 12, 1),
        FamilyCode::EU_OD => (Float::with_val(prec, 0.25), Rational::new(), pi_sq / 6, 2),
        FamilyCode::OD_EU => (2 / pi.clone().sqrt(), half, pi_sq / 12, 1),
        FamilyCode::ED_OU => (1 / sqrt_of(prec, 2), Rational::new(), pi_sq / 12, 1),
        FamilyCode::ED_OD => (1 - 1 / sqrt_of(prec, 2), Rational::from(-1), pi_sq / 12, 2),
        FamilyCode::OU_EU => (1 / sqrt_of(prec, 2), Rational::from(-1), pi_sq / 12, 1),
        FamilyCode::OU_ED => (
            Float::with_val(prec, &pi / 2).sqrt() / 2,
            -half,
            pi_sq / 12,
            1,
        ),
        FamilyCode::OD_ED => (sqrt_of(prec, 2) - 1, Rational::from(-1), pi_sq / 24, 1),
        _ => unreachable!("FamilyCode only admits the eight constants"),
    };
    AsymptoticParams {
        lambda,
        beta,
        gamma,
        stride,
    }
}

/// `lambda gamma^{beta/2+1/4} / (2 sqrt(pi) m^{beta/2+3/4}) * e^{2 sqrt(gamma m)}`.
pub fn ingham_term(p: &AsymptoticParams, m: &Float) -> Result<Float> {
    if *m <= 0 {
        return Err(Error::Precondition(format!(
            "ingham_term needs m > 0, got {m}"
        )));
    }
    let prec = m.prec().max(p.lambda.prec());
    let b2 = Float::with_val(prec, &p.beta) / 2;
    let e_gamma = Float::with_val(prec, &b2 + 0.25);
    let e_m = Float::with_val(prec, &b2 + 0.75);
    let num = Float::with_val(prec, &p.lambda) * Float::with_val(prec, (&p.gamma).pow(&e_gamma));
    let den = 2 * pi(prec).sqrt() * Float::with_val(prec, m.pow(&e_m));
    let exponent: Float = 2 * Float::with_val(prec, &p.gamma * m).sqrt();
    Ok(num / den * exponent.exp())
}

/// The displayed main term for `family`, evaluated literally at `n`.
pub fn main_term(family: FamilyCode, n: u64, prec: u32) -> Result<Float> {
    if n == 0 {
        return Err(Error::Precondition("main_term needs n >= 1".into()));
    }
    let pi = pi(prec);
    let nf = Float::with_val(prec, n);
    let e3 = Float::with_val(prec, &pi * Float::with_val(prec, &nf / 3).sqrt()).exp();
    let e6 = Float::with_val(prec, &pi * Float::with_val(prec, &nf / 6).sqrt()).exp();
    let r4_3 = root4_of(prec, 3);
    let sqrt2 = sqrt_of(prec, 2);
    let n_pow =
        |num: u32, den: u32| Float::with_val(prec, (&nf).pow(Float::with_val(prec, num) / den));
    let value = match family {
        FamilyCode::EU_OU => e3 / (2 * pi * nf.sqrt()),
        FamilyCode::EU_OD => e3 / (4 * sqrt2 * r4_3 * n_pow(3, 4)),
        FamilyCode::OD_EU => e3 / (2 * sqrt_of(prec, 3) * nf),
        FamilyCode::ED_OU => e3 / (4 * r4_3 * n_pow(3, 4)),
        FamilyCode::ED_OD => r4_3 * (sqrt2 - 1) * e6 / (root4_of(prec, 8) * pi * n_pow(1, 4)),
        FamilyCode::OU_EU => r4_3 * e3 / (2 * pi * n_pow(1, 4)),
        FamilyCode::OU_ED => e3 / (4 * sqrt2 * nf.sqrt()),
        FamilyCode::OD_ED => r4_3 * (sqrt2 - 1) * e6 / (root4_of(prec, 2) * pi * n_pow(1, 4)),
        _ => unreachable!("FamilyCode only admits the eight constants"),
    };
    Ok(value)
}

/// Even `n` from 2 to `10^6`, roughly log-spaced.
pub fn consistency_grid() -> Vec<u64> {
    let mut grid = Vec::new();
    let mut n = 2u64;
    while n <= 1_000_000 {
        grid.push(n);
        n = (n * 3 / 2 + 1) & !1;
    }
    grid.push(1_000_000);
    grid.dedup();
    grid
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub family: FamilyCode,
    pub points: usize,
    /// Largest relative error, in scientific notation.
    pub max_rel_error: String,
    pub passed: bool,
}

pub const CONSISTENCY_TOLERANCE: f64 = 1e-20;

/// Compares `ingham_term(p, n/stride)` with `main_term(family, n)` over `grid`.
pub fn ingham_consistency_with(
    family: FamilyCode,
    p: &AsymptoticParams,
    grid: &[u64],
    prec: u32,
) -> Result<ConsistencyReport> {
    let mut worst = Float::with_val(prec, 0);
    for &n in grid {
        let m = Float::with_val(prec, n) / p.stride;
        let lhs = ingham_term(p, &m)?;
        let rhs = main_term(family, n, prec)?;
        let rel = Float::with_val(prec, (lhs / rhs) - 1u32).abs();
        if rel > worst {
            worst = rel;
        }
    }
    Ok(ConsistencyReport {
        family,
        points: grid.len(),
        max_rel_error: format!("{:.3e}", worst.to_f64()),
        passed: worst < CONSISTENCY_TOLERANCE,
    })
}

pub fn ingham_consistency(family: FamilyCode, prec: u32) -> Result<ConsistencyReport> {
    ingham_consistency_with(family, &params(family, prec), &consistency_grid(), prec)
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub family: FamilyCode,
    pub n: u64,
    /// `"full"`, `"even"` or `"odd"`: the sequence the Tauberian step used.
    pub sequence: &'static str,
    pub exact: String,
    pub main_term: String,
    pub ratio: String,
    #[serde(skip)]
    pub deviation: f64,
}

/// Checks the hypothesis of the Tauberian step (non-negative, weakly
/// increasing) on the sequence containing index `n`, through `n`.
fn check_hypothesis(coeffs: &[Integer], stride: usize, n: usize) -> Result<()> {
    let offset = n % stride;
    let seq: Vec<&Integer> = coeffs[..=n].iter().skip(offset).step_by(stride).collect();
    if let Some(i) = seq.iter().position(|c| **c < 0) {
        return Err(Error::HypothesisViolated {
            index: offset + stride * i,
        });
    }
    if let Some(i) = seq.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::HypothesisViolated {
            index: offset + stride * i,
        });
    }
    Ok(())
}

pub fn format_sci(x: &Float, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// Rows `(n, exact, main term, ratio)` for every `n` in `ns`.
pub fn ratio_report(
    catalog: &Catalog,
    family: FamilyCode,
    ns: &[u64],
    prec: u32,
) -> Result<Vec<RatioRow>> {
    let series = catalog.series(family)?;
    let stride = params(family, prec).stride as usize;
    for &n in ns {
        series.coeff(n as usize)?;
        if n == 0 {
            return Err(Error::Precondition("ratio_report needs n >= 1".into()));
        }
    }
    let rows = par::map(ns, |&n| -> Result<RatioRow> {
        check_hypothesis(series.coeffs(), stride, n as usize)?;
        let exact = series.coeff(n as usize)?;
        let main = main_term(family, n, prec)?;
        let ratio = Float::with_val(prec, exact) / &main;
        let sequence = match (stride, n % 2) {
            (1, _) => "full",
            (_, 0) => "even",
            _ => "odd",
        };
        Ok(RatioRow {
            family,
            n,
            sequence,
            exact: exact.to_string(),
            main_term: format_sci(&main, 20),
            deviation: Float::with_val(prec, &ratio - 1u32).abs().to_f64(),
            ratio: format_sci(&ratio, 20),
        })
    });
    rows.into_iter().collect()
}

/// Whether `|ratio - 1|` strictly decreases along the rows.
pub fn deviation_decreasing(rows: &[RatioRow]) -> bool {
    rows.windows(2).all(|w| w[1].deviation < w[0].deviation)
}
