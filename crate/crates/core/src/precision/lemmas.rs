//! Trend checks for the asymptotic lemmas near `q = 1` and for the
//! generating-function asymptotics `F(e^{-z}) ~ lambda z^beta e^{gamma/z}`.

use rug::{Complex, Float};
use serde::Serialize;

use super::mock::{
    eval_f_at_minus_q, eval_f_at_minus_q_watson, eval_phi_at, eval_sigma_at_minus_q,
    eval_sigma_at_minus_q_hecke,
};
use super::products::{
    eval_product_at, eval_q_minus_q, eval_quadratic_sum, eval_terms, eval_theta, pi_sq,
};
use super::{abs, agreeing_digits, format_complex, PrecCtx, QArg, Ray};
use crate::asymptotic::{params, AsymptoticParams};
use crate::error::{Error, Result};
use crate::family::FamilyCode;
use crate::series::{PochSpec, Sign};

/// One sample of `value / predicted` along a ray.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub r: f64,
    pub z: String,
    pub value: String,
    pub predicted: String,
    pub ratio: String,
    /// `|value / predicted - 1|`.
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub alpha: f64,
    pub delta: f64,
    pub rows: Vec<LemmaRow>,
    /// Smallest number of agreeing digits between two independent routes to
    /// the value, where a second route exists.
    pub cross_check_digits: Option<f64>,
    pub trend_pass: bool,
}

/// Deviation below which differences are treated as rounding.
pub fn noise_floor(ctx: &PrecCtx) -> f64 {
    2f64.powi(-(ctx.bits as i32 - 16))
}

/// Strictly decreasing deviations, where each step counts as decreasing if
/// both neighbours are already below the noise floor.
pub fn trend_holds(deviations: &[f64], floor: f64) -> bool {
    deviations.iter().all(|d| d.is_finite())
        && deviations
            .windows(2)
            .all(|w| w[1] < w[0] || (w[0] < floor && w[1] < floor))
}

/// The lemmas with a closed-form main term near `q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lemma {
    /// `(q;q)_inf ~ sqrt(2 pi/z) e^{-pi^2/6z}`
    Euler,
    /// `1/(q^2;q^2)_inf ~ sqrt(z/pi) e^{pi^2/12z}`
    InverseEulerSquare,
    /// `Theta(iz/2pi) ~ sqrt(2 pi/z)`
    Theta,
    /// `sigma(-e^{-z}) -> -2`
    SigmaAtMinusOne,
    /// `f(-q) ~ -sqrt(pi/z) e^{pi^2/24z}`
    MockFAtMinusQ,
    /// `(q;-q)_inf ~ e^{-pi^2/24z}`
    QMinusQ,
}

impl Lemma {
    pub const ALL: [Lemma; 6] = [
        Lemma::Euler,
        Lemma::InverseEulerSquare,
        Lemma::Theta,
        Lemma::SigmaAtMinusOne,
        Lemma::MockFAtMinusQ,
        Lemma::QMinusQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Euler => "(q;q)_inf",
            Lemma::InverseEulerSquare => "1/(q^2;q^2)_inf",
            Lemma::Theta => "Theta",
            Lemma::SigmaAtMinusOne => "sigma(-q)",
            Lemma::MockFAtMinusQ => "f(-q)",
            Lemma::QMinusQ => "(q;-q)_inf",
        }
    }

    /// Magnitudes sampled along each ray; the mock theta sums lose precision
    /// quickly as `z -> 0`, so they start further out.
    pub fn default_magnitudes(self) -> Vec<f64> {
        match self {
            Lemma::SigmaAtMinusOne => vec![0.4, 0.2, 0.1],
            Lemma::MockFAtMinusQ => vec![0.2, 0.1, 0.05],
            _ => vec![0.2, 0.1, 0.05, 0.025],
        }
    }

    pub fn value(self, z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
        match self {
            Lemma::Euler => {
                eval_product_at(&PochSpec::infinite(Sign::Plus, 1, 1), &QArg::new(z)?, ctx)
            }
            Lemma::InverseEulerSquare => {
                let p =
                    eval_product_at(&PochSpec::infinite(Sign::Plus, 2, 2), &QArg::new(z)?, ctx)?;
                Ok(p.recip())
            }
            Lemma::Theta => eval_theta(z, ctx),
            Lemma::SigmaAtMinusOne => eval_sigma_at_minus_q(z, ctx),
            Lemma::MockFAtMinusQ => eval_f_at_minus_q(z, ctx),
            Lemma::QMinusQ => eval_q_minus_q(z, ctx),
        }
    }

    /// A second, independent route to [`Lemma::value`], where one is used.
    pub fn cross_check(self, z: &Complex, ctx: &PrecCtx) -> Result<Option<Complex>> {
        match self {
            Lemma::SigmaAtMinusOne => eval_sigma_at_minus_q_hecke(z, ctx).map(Some),
            Lemma::MockFAtMinusQ => eval_f_at_minus_q_watson(z, ctx).map(Some),
            _ => Ok(None),
        }
    }

    pub fn predicted(self, z: &Complex, ctx: &PrecCtx) -> Complex {
        let p = ctx.work();
        let pi = ctx.pi();
        let pi2 = pi_sq(ctx);
        let exp_over_z = |num: Float| Complex::with_val(p, num / z).exp();
        match self {
            Lemma::Euler => Complex::with_val(p, 2 * pi / z).sqrt() * exp_over_z(-pi2 / 6u32),
            Lemma::InverseEulerSquare => {
                Complex::with_val(p, z / pi).sqrt() * exp_over_z(pi2 / 12u32)
            }
            Lemma::Theta => Complex::with_val(p, 2 * pi / z).sqrt(),
            Lemma::SigmaAtMinusOne => Complex::with_val(p, -2),
            Lemma::MockFAtMinusQ => {
                -(Complex::with_val(p, pi / z).sqrt() * exp_over_z(pi2 / 24u32))
            }
            Lemma::QMinusQ => exp_over_z(-pi2 / 24u32),
        }
    }
}

fn row(r: f64, z: &Complex, value: &Complex, predicted: &Complex) -> LemmaRow {
    let ratio = Complex::with_val(value.prec(), value / predicted);
    let deviation = abs(&Complex::with_val(ratio.prec(), &ratio - 1u32)).to_f64();
    LemmaRow {
        r,
        z: format_complex(z, 6),
        value: format_complex(value, 20),
        predicted: format_complex(predicted, 20),
        ratio: format_complex(&ratio, 20),
        deviation,
    }
}

pub fn lemma_report_on(lemma: Lemma, ray: &Ray, ctx: &PrecCtx) -> Result<LemmaReport> {
    let mut rows = Vec::new();
    let mut digits: Option<f64> = None;
    for &r in &ray.magnitudes {
        let z = ray.point(r, ctx)?;
        let value = lemma.value(&z, ctx)?;
        if let Some(other) = lemma.cross_check(&z, ctx)? {
            let d = agreeing_digits(&value, &other);
            digits = Some(digits.map_or(d, |m| m.min(d)));
        }
        rows.push(row(r, &z, &value, &lemma.predicted(&z, ctx)));
    }
    let devs: Vec<f64> = rows.iter().map(|r| r.deviation).collect();
    Ok(LemmaReport {
        lemma: lemma.name().to_string(),
        alpha: ray.alpha,
        delta: ray.delta(),
        trend_pass: trend_holds(&devs, noise_floor(ctx)),
        cross_check_digits: digits,
        rows,
    })
}

/// The lemma along a ray at angle `alpha` with its default magnitudes.
pub fn lemma_report(lemma: Lemma, alpha: f64, ctx: &PrecCtx) -> Result<LemmaReport> {
    lemma_report_on(lemma, &Ray::new(alpha, lemma.default_magnitudes())?, ctx)
}

fn flip(q: &QArg) -> QArg {
    QArg {
        neg: !q.neg,
        z: q.z.clone(),
    }
}

fn product(q: &QArg, sign: Sign, base: usize, step: usize, ctx: &PrecCtx) -> Result<Complex> {
    eval_product_at(&PochSpec::infinite(sign, base, step), q, ctx)
}

/// `F_family(q)` evaluated numerically from a closed form, at
/// `q = (-1)^neg e^{-z}`.
pub fn eval_family_at(family: FamilyCode, q: &QArg, ctx: &PrecCtx) -> Result<Complex> {
    let p = ctx.work();
    let one = Complex::with_val(p, 1);
    let qv = q.value(p);
    let one_minus_q = Complex::with_val(p, &one - &qv);
    match family {
        FamilyCode::EU_OU => {
            let d = product(q, Sign::Plus, 2, 2, ctx)? * &one_minus_q;
            Ok(d.recip())
        }
        FamilyCode::EU_OD => {
            let theta = eval_quadratic_sum(q, 1, 0, false, |_| 1, ctx)?;
            Ok(theta / product(q, Sign::Plus, 2, 2, ctx)?)
        }
        FamilyCode::OD_EU => {
            // (1 - D(-q)) / (q^2;q^2) with D the Hecke-type double sum
            let x = flip(q);
            let cutoff = x.cutoff(p);
            let mut terms = Vec::new();
            for n in 1u64.. {
                if n * (n + 1) / 2 > cutoff {
                    break;
                }
                let base = n * (3 * n + 1) / 2;
                for j in 1..=n {
                    let e = base - j * j;
                    let sign = if (n + j) % 2 == 0 { 1 } else { -1 };
                    terms.push((e, sign));
                    terms.push((e + 2 * n + 1, -sign));
                }
            }
            let d = eval_terms(&x, &terms, ctx);
            Ok((one - d) / product(q, Sign::Plus, 2, 2, ctx)?)
        }
        FamilyCode::ED_OU => {
            // ((q;-q) + 1 - S(q)) / (2 (q;q^2))
            let q_minus_q = product(&flip(q), Sign::Minus, 1, 1, ctx)?;
            let cutoff = q.cutoff(p);
            let mut terms = Vec::new();
            for n in 1u64.. {
                let e = n * (3 * n - 1) / 2;
                if e > cutoff {
                    break;
                }
                let s = if e % 2 == 0 { 1 } else { -1 };
                let t = if n % 2 == 0 { 1 } else { -1 };
                terms.push((e, s));
                terms.push((e + n, -s * t));
            }
            let s = eval_terms(q, &terms, ctx);
            let num = q_minus_q + one - s;
            Ok(num / (2 * product(q, Sign::Plus, 1, 2, ctx)?))
        }
        FamilyCode::ED_OD => {
            let a = product(q, Sign::Minus, 1, 2, ctx)?;
            let b = product(q, Sign::Minus, 2, 2, ctx)? * &qv;
            Ok((a - b) / one_minus_q)
        }
        FamilyCode::OU_EU => {
            let a = product(q, Sign::Plus, 1, 2, ctx)?.recip();
            let b = Complex::with_val(p, &qv / product(q, Sign::Plus, 2, 2, ctx)?);
            Ok((a - b) / one_minus_q)
        }
        FamilyCode::OU_ED => {
            // ((-q^2;q^2)/2)(2 - f(-q) + 1/(q;-q)) with f(-q) in its phi form
            let x = flip(q);
            let phi = eval_phi_at(q, ctx)?;
            let theta4 =
                eval_quadratic_sum(&x, 1, 0, true, |n| if n % 2 == 0 { 1 } else { -1 }, ctx)?;
            let qmq = product(&x, Sign::Minus, 1, 1, ctx)?;
            let f_minus = 2 * phi - theta4 / &qmq;
            let inner = Complex::with_val(p, 2) - f_minus + qmq.recip();
            Ok(product(q, Sign::Minus, 2, 2, ctx)? * inner / 2u32)
        }
        FamilyCode::OD_ED => {
            let one_plus_q = Complex::with_val(p, &one + &qv);
            let a = product(q, Sign::Minus, 2, 2, ctx)? * one_plus_q;
            let b = product(q, Sign::Minus, 1, 2, ctx)? * &qv;
            Ok((a - b) / one_minus_q)
        }
        _ => unreachable!("FamilyCode only admits the eight constants"),
    }
}

/// `sum p(n) e^{-nz}`, or for a stride-2 family the pair of parity halves
/// `sum p(2n) e^{-nz}` and `sum p(2n+1) e^{-nz}`.
pub fn eval_counting_series(
    family: FamilyCode,
    z: &Complex,
    ctx: &PrecCtx,
) -> Result<Vec<Complex>> {
    let p = ctx.work();
    if params(family, 53).stride == 1 {
        return Ok(vec![eval_family_at(family, &QArg::new(z)?, ctx)?]);
    }
    let half = Complex::with_val(p, z / 2u32);
    let plus = eval_family_at(family, &QArg::new(&half)?, ctx)?;
    let minus = eval_family_at(family, &QArg::negated(&half)?, ctx)?;
    let even = Complex::with_val(p, &plus + &minus) / 2u32;
    let odd = (plus - minus) / 2u32 * half.exp();
    Ok(vec![even, odd])
}

/// `lambda z^beta e^{gamma/z}` on the principal branch.
pub fn genfun_main_term(par: &AsymptoticParams, z: &Complex, ctx: &PrecCtx) -> Complex {
    let p = ctx.work();
    let beta = Float::with_val(p, &par.beta);
    let zb = (Complex::with_val(p, z.ln_ref()) * beta).exp();
    let e = Complex::with_val(p, &par.gamma / z).exp();
    zb * e * &par.lambda
}

/// Checks `F(e^{-z}) / (lambda z^beta e^{gamma/z}) -> 1` along the ray, for
/// each parity half if the family has stride 2.
pub fn genfun_asymptotic_check_with(
    family: FamilyCode,
    par: &AsymptoticParams,
    ray: &Ray,
    ctx: &PrecCtx,
) -> Result<Vec<LemmaReport>> {
    let labels: &[&str] = if par.stride == 1 {
        &[""]
    } else {
        &[" even", " odd"]
    };
    let mut rows: Vec<Vec<LemmaRow>> = vec![Vec::new(); labels.len()];
    for &r in &ray.magnitudes {
        let z = ray.point(r, ctx)?;
        let values = eval_counting_series(family, &z, ctx)?;
        if values.len() != labels.len() {
            return Err(Error::Precondition(format!(
                "{family}: stride does not match the closed form"
            )));
        }
        let predicted = genfun_main_term(par, &z, ctx);
        for (i, v) in values.iter().enumerate() {
            rows[i].push(row(r, &z, v, &predicted));
        }
    }
    Ok(labels
        .iter()
        .zip(rows)
        .map(|(label, rows)| {
            let devs: Vec<f64> = rows.iter().map(|r| r.deviation).collect();
            LemmaReport {
                lemma: format!("F_{family}{label}"),
                alpha: ray.alpha,
                delta: ray.delta(),
                trend_pass: trend_holds(&devs, noise_floor(ctx)),
                cross_check_digits: None,
                rows,
            }
        })
        .collect())
}

pub fn genfun_asymptotic_check(
    family: FamilyCode,
    ray: &Ray,
    ctx: &PrecCtx,
) -> Result<Vec<LemmaReport>> {
    genfun_asymptotic_check_with(family, &params(family, ctx.work()), ray, ctx)
}
