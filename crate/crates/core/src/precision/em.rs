//! Euler-Maclaurin summation for shifted lattice sums `sum g((m + a) z)` in
//! one and two dimensions, with direct summation to measure the error.

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use serde::Serialize;

use super::bernoulli::BernoulliPoly;
use super::{abs, PrecCtx, Ray};
use crate::error::{Error, Result};

fn rpow(x: &Rational, n: usize) -> Rational {
    let mut out = Rational::from(1);
    for _ in 0..n {
        out *= x;
    }
    out
}

fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// A smooth profile `g` on `[0, inf)`, holomorphic near the sector of
/// evaluation.
pub trait Profile: Sync {
    fn eval(&self, x: &Complex) -> Complex;

    /// `g^{(n)}(0)`.
    fn derivative_at_zero(&self, n: usize, prec: u32) -> Float;

    /// `int_0^inf g(x) dx`; by default via adaptive quadrature.
    fn integral(&self, ctx: &PrecCtx) -> Result<Float> {
        integrate_half_line(
            |x| self.eval(&Complex::with_val(ctx.work(), x)).real().clone(),
            ctx,
            1e-25,
        )
    }

    /// Point beyond which `|g|` decreases along the real axis.
    fn decay_start(&self) -> f64 {
        0.0
    }

    fn label(&self) -> String;
}

/// `g(x) = exp(-c x^2 - d x)`, `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gaussian {
    pub c: Rational,
    pub d: Rational,
}

impl Gaussian {
    pub fn new(c: Rational, d: Rational) -> Result<Self> {
        if c <= 0 {
            return Err(Error::Precondition(format!(
                "Gaussian needs c > 0, got {c}"
            )));
        }
        Ok(Gaussian { c, d })
    }

    pub fn centered(c: Rational) -> Result<Self> {
        Gaussian::new(c, Rational::new())
    }

    /// `g^{(n)}(0) = n! sum_{2i+j=n} (-c)^i/i! (-d)^j/j!`.
    pub fn derivative_exact(&self, n: usize) -> Rational {
        let mut s = Rational::new();
        for i in 0..=n / 2 {
            let j = n - 2 * i;
            let ci = rpow(&-self.c.clone(), i);
            let dj = rpow(&-self.d.clone(), j);
            s += (ci * dj) / factorial(i) / factorial(j);
        }
        s * factorial(n)
    }
}

impl Profile for Gaussian {
    fn eval(&self, x: &Complex) -> Complex {
        let prec = x.prec().0;
        let x2 = Complex::with_val(prec, x.square_ref());
        let e = -(x2 * &self.c) - Complex::with_val(prec, x * &self.d);
        e.exp()
    }

    fn derivative_at_zero(&self, n: usize, prec: u32) -> Float {
        Float::with_val(prec, &self.derivative_exact(n))
    }

    /// `(1/2) sqrt(pi/c) e^{d^2/4c} erfc(d / 2 sqrt c)`.
    fn integral(&self, ctx: &PrecCtx) -> Result<Float> {
        let p = ctx.work();
        let c = Float::with_val(p, &self.c);
        let d = Float::with_val(p, &self.d);
        let sc = Float::with_val(p, c.sqrt_ref());
        let pre = Float::with_val(p, ctx.pi() / &c).sqrt() / 2;
        let ex: Float = Float::with_val(p, d.square_ref()) / (4 * c);
        let er = Float::with_val(p, &d / (2 * sc)).erfc();
        Ok(pre * ex.exp() * er)
    }

    fn decay_start(&self) -> f64 {
        (-self.d.to_f64() / (2.0 * self.c.to_f64())).max(0.0)
    }

    fn label(&self) -> String {
        format!("exp(-({})x^2 - ({})x)", self.c, self.d)
    }
}

/// Exp-sinh quadrature over `[0, inf)`: `x = e^{(pi/2) sinh t}`, trapezoid
/// steps halved until two levels agree to `tol` relative to the result.
pub fn integrate_half_line(f: impl Fn(&Float) -> Float, ctx: &PrecCtx, tol: f64) -> Result<Float> {
    const T_MAX: f64 = 6.0;
    const MAX_LEVEL: u32 = 12;
    let p = ctx.work();
    let half_pi = ctx.pi() / 2u32;
    let node = |t: f64| -> Float {
        let t = Float::with_val(p, t);
        let sh = Float::with_val(p, t.sinh_ref());
        let ch = Float::with_val(p, t.cosh_ref());
        let x = Float::with_val(p, &half_pi * sh).exp();
        let w = Float::with_val(p, &half_pi * ch) * &x;
        f(&x) * w
    };
    let tol_f = Float::with_val(p, tol);
    let ends = [node(-T_MAX), node(T_MAX)];
    if ends
        .iter()
        .any(|e| !e.is_finite() || Float::with_val(p, e.abs_ref()) > tol_f)
    {
        return Err(Error::QuadratureFailure(
            "integrand does not decay at the ends of the range".into(),
        ));
    }
    // level 0: step 1
    let mut h = 1.0f64;
    let mut sum = Float::with_val(p, 0);
    let k_max = T_MAX as i64;
    for k in -k_max..=k_max {
        sum += node(k as f64);
    }
    let mut prev = Float::with_val(p, &sum * h);
    for _level in 1..=MAX_LEVEL {
        h /= 2.0;
        let n = (T_MAX / h).round() as i64;
        for k in (-n..=n).filter(|k| k % 2 != 0) {
            sum += node(k as f64 * h);
        }
        let est = Float::with_val(p, &sum * h);
        if !est.is_finite() {
            return Err(Error::QuadratureFailure("non-finite integral".into()));
        }
        let diff = Float::with_val(p, &est - &prev).abs();
        let scale = Float::with_val(p, est.abs_ref()).max(&Float::with_val(p, 1));
        if diff <= Float::with_val(p, &tol_f * &scale) {
            return Ok(est);
        }
        prev = est;
    }
    Err(Error::QuadratureFailure(format!(
        "no convergence after {MAX_LEVEL} step halvings"
    )))
}

/// `(1/z) int g - sum_{n<N} B_{n+1}(a) g^{(n)}(0) z^n / (n+1)!`.
pub fn euler_maclaurin_1d(
    g: &dyn Profile,
    a: &Rational,
    z: &Complex,
    n_terms: usize,
    ctx: &PrecCtx,
) -> Result<Complex> {
    let p = ctx.work();
    let integral = g.integral(ctx)?;
    let mut out = Complex::with_val(p, &integral) / z;
    let mut zn = Complex::with_val(p, 1);
    for n in 0..n_terms {
        let b = BernoulliPoly::new(n + 1).eval(a);
        let coeff = Float::with_val(p, &b) * g.derivative_at_zero(n, p)
            / Float::with_val(p, &factorial(n + 1));
        out -= Complex::with_val(p, &zn * &coeff);
        zn *= z;
    }
    Ok(out)
}

fn check_sector(z: &Complex) -> Result<()> {
    let re2 = Complex::with_val(53, z.square_ref()).real().to_f64();
    if *z.real() <= 0 || re2 <= 0.0 {
        return Err(Error::OutsideCone(format!(
            "Gaussian lattice sums need |arg z| < pi/4, got {z}"
        )));
    }
    Ok(())
}

/// `sum_{m>=0} g((m + a) z)` summed until terms fall below the working
/// precision relative to the partial sum.
pub fn direct_sum_1d(g: &dyn Profile, a: &Rational, z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    check_sector(z)?;
    let p = ctx.work();
    let mut acc = Complex::with_val(p, 0);
    let eps = Float::with_val(p, Float::i_exp(1, -(p as i32)));
    let zr = abs(z).to_f64();
    let mut small = 0;
    for m in 0..ctx.term_cap {
        let x = Complex::with_val(p, z * Float::with_val(p, a + Rational::from(m as u64)));
        let t = g.eval(&x);
        let tabs = abs(&t);
        acc += &t;
        let past = (m as f64 + a.to_f64()) * zr > g.decay_start();
        if past && tabs <= Float::with_val(p, abs(&acc) * &eps) {
            small += 1;
            if small >= 4 {
                return Ok(acc);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::PrecisionUnderflow {
        needed: ctx.term_cap + 1,
        limit: format!("term cap {}", ctx.term_cap),
    })
}

/// Measured error exponents of the Euler-Maclaurin truncation along a ray.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeReport {
    pub profile: String,
    pub dim: usize,
    pub n_terms: usize,
    pub alpha: f64,
    /// `(|z|, |direct - formula|)`
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of `log error` against `log |z|`.
    pub slope: f64,
}

pub fn fit_slope(rows: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|&(r, e)| (r.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn slope_1d(
    g: &dyn Profile,
    a: &Rational,
    ray: &Ray,
    n_terms: usize,
    ctx: &PrecCtx,
) -> Result<SlopeReport> {
    let mut rows = Vec::new();
    for &r in &ray.magnitudes {
        let z = ray.point(r, ctx)?;
        let direct = direct_sum_1d(g, a, &z, ctx)?;
        let formula = euler_maclaurin_1d(g, a, &z, n_terms, ctx)?;
        rows.push((r, abs(&(direct - formula)).to_f64()));
    }
    Ok(SlopeReport {
        profile: g.label(),
        dim: 1,
        n_terms,
        alpha: ray.alpha,
        slope: fit_slope(&rows),
        rows,
    })
}

/// Shifts and signs of the aggregate used for the ed^ou generating function:
/// `alpha = k/24` with sign `eps(alpha)`.
pub const AGGREGATE_SHIFTS: [(i64, i64); 8] = [
    (5, 1),
    (7, 1),
    (11, 1),
    (13, -1),
    (17, -1),
    (19, -1),
    (23, -1),
    (25, 1),
];

pub fn aggregate_shifts() -> Vec<(Rational, i64)> {
    AGGREGATE_SHIFTS
        .iter()
        .map(|&(k, e)| (Rational::from((k, 24)), e))
        .collect()
}

/// `sum eps(alpha)`, exactly.
pub fn aggregate_eps_sum() -> Rational {
    aggregate_shifts()
        .iter()
        .map(|(_, e)| Rational::from(*e))
        .sum()
}

/// `-sum eps(alpha) B_1(alpha)`, exactly.
pub fn aggregate_b1_sum() -> Rational {
    let b1 = BernoulliPoly::new(1);
    let s: Rational = aggregate_shifts()
        .iter()
        .map(|(a, e)| b1.eval(a) * *e)
        .sum();
    -s
}

/// `q^{-1/24} sum eps(alpha) sum_m f((m + alpha) sqrt z)` with
/// `f(x) = e^{-24 x^2}`, `q = e^{-z}`.
pub fn aggregate_lattice(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    let p = ctx.work();
    let w = Complex::with_val(p, z.sqrt_ref());
    let f = Gaussian::centered(Rational::from(24))?;
    let mut acc = Complex::with_val(p, 0);
    for (a, e) in aggregate_shifts() {
        acc += direct_sum_1d(&f, &a, &w, ctx)? * e;
    }
    Ok(acc * Complex::with_val(p, z / 24u32).exp())
}

/// `-sum_{n>=0} (1 - (-1)^n q^n) (-1)^{n(3n-1)/2} q^{n(3n-1)/2}` at `q = e^{-z}`.
pub fn aggregate_series(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    let q = super::QArg::new(z)?;
    let cutoff = q.cutoff(ctx.work());
    let mut terms = Vec::new();
    for n in 1u64.. {
        let e = n * (3 * n - 1) / 2;
        if e > cutoff {
            break;
        }
        let s = if e % 2 == 0 { 1 } else { -1 };
        let t = if n % 2 == 0 { 1 } else { -1 };
        terms.push((e, -s));
        terms.push((e + n, s * t));
    }
    Ok(super::products::eval_terms(&q, &terms, ctx))
}

/// Euler-Maclaurin prediction for [`aggregate_lattice`] with `N` terms.
pub fn aggregate_em(z: &Complex, n_terms: usize, ctx: &PrecCtx) -> Result<Complex> {
    let p = ctx.work();
    let w = Complex::with_val(p, z.sqrt_ref());
    let f = Gaussian::centered(Rational::from(24))?;
    let mut acc = Complex::with_val(p, 0);
    for (a, e) in aggregate_shifts() {
        acc += euler_maclaurin_1d(&f, &a, &w, n_terms, ctx)? * e;
    }
    Ok(acc * Complex::with_val(p, z / 24u32).exp())
}

/// `Q(x) = a x1^2 + b x1 x2 + c x2^2`, required to be positive on the closed
/// first quadrant minus the origin so `exp(-Q)` decays there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl QuadForm {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let ok = a > 0
            && c > 0
            && (b >= 0 || Rational::from(b.square_ref()) < Rational::from(&a * &c) * 4u32);
        if !ok {
            return Err(Error::Precondition(format!(
                "exp(-({a} x1^2 + {b} x1 x2 + {c} x2^2)) does not decay on the quadrant"
            )));
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        QuadForm::new(Rational::from(a), Rational::from(b), Rational::from(c))
    }

    pub fn value(&self, x1: &Rational, x2: &Rational) -> Rational {
        Rational::from(&self.a * x1) * x1
            + Rational::from(&self.b * x1) * x2
            + Rational::from(&self.c * x2) * x2
    }

    /// Smallest value of `Q` on the unit quarter circle.
    fn kappa(&self) -> f64 {
        let (a, b, c) = (self.a.to_f64(), self.b.to_f64(), self.c.to_f64());
        if b >= 0.0 {
            a.min(c)
        } else {
            (a + c) / 2.0 - (((a - c) / 2.0).powi(2) + b * b / 4.0).sqrt()
        }
    }

    /// `f^{(n1,n2)}(0)` for `f = exp(-Q)`, exactly.
    pub fn derivative_at_zero(&self, n1: usize, n2: usize) -> Rational {
        if (n1 + n2) % 2 == 1 {
            return Rational::new();
        }
        let k = (n1 + n2) / 2;
        let mut s = Rational::new();
        for j in (0..=n1.min(n2)).filter(|j| (n1 - j).is_multiple_of(2)) {
            let i = (n1 - j) / 2;
            let l = (n2 - j) / 2;
            let term = rpow(&self.a, i) * rpow(&self.b, j) * rpow(&self.c, l)
                / factorial(i)
                / factorial(j)
                / factorial(l);
            s += term;
        }
        if k % 2 == 1 {
            s = -s;
        }
        s * factorial(n1) * factorial(n2)
    }

    /// `int int_{[0,inf)^2} exp(-Q) = (1/2) int_0^inf dt / (a t^2 + b t + c)`.
    pub fn quadrant_integral(&self, prec: u32) -> Float {
        let a = Float::with_val(prec, &self.a);
        let b = Float::with_val(prec, &self.b);
        let disc = Rational::from(self.b.square_ref()) - Rational::from(&self.a * &self.c) * 4u32;
        let line = if disc < 0 {
            let s = Float::with_val(prec, -disc).sqrt();
            let half_pi = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
            (half_pi - Float::with_val(prec, &b / &s).atan()) * 2u32 / s
        } else if disc > 0 {
            let s = Float::with_val(prec, &disc).sqrt();
            let r = Float::with_val(prec, &b + &s) / Float::with_val(prec, &b - &s);
            r.ln() / s
        } else {
            Float::with_val(prec, 2) / b
        };
        let _ = a;
        line / 2u32
    }

    /// `int_0^inf d^{n}/dx1^{n} exp(-Q)(0, x2) dx2`, using
    /// `int_0^inf x^j e^{-c x^2} dx = Gamma((j+1)/2) / (2 c^{(j+1)/2})`.
    pub fn line_integral_x2(&self, n: usize, prec: u32) -> Float {
        line_integral(&self.a, &self.b, &self.c, n, prec)
    }

    /// `int_0^inf d^{n}/dx2^{n} exp(-Q)(x1, 0) dx1`.
    pub fn line_integral_x1(&self, n: usize, prec: u32) -> Float {
        line_integral(&self.c, &self.b, &self.a, n, prec)
    }

    pub fn label(&self) -> String {
        format!("exp(-({}x1^2 + {}x1x2 + {}x2^2))", self.a, self.b, self.c)
    }
}

/// `d^n/dx^n exp(-(a x^2 + b x y + c y^2)) at x = 0` is
/// `e^{-c y^2} n! sum_{2i+j=n} (-a)^i/i! (-b y)^j/j!`; integrate over `y`.
fn line_integral(a: &Rational, b: &Rational, c: &Rational, n: usize, prec: u32) -> Float {
    let cf = Float::with_val(prec, c);
    let mut s = Float::with_val(prec, 0);
    for i in 0..=n / 2 {
        let j = n - 2 * i;
        let coeff = rpow(&-a.clone(), i) * rpow(&-b.clone(), j) / factorial(i) / factorial(j);
        if coeff == 0 {
            continue;
        }
        let half = Float::with_val(prec, j + 1) / 2u32;
        let moment =
            Float::with_val(prec, half.gamma_ref()) / (2 * Float::with_val(prec, (&cf).pow(&half)));
        s += Float::with_val(prec, &coeff) * moment;
    }
    s * Float::with_val(prec, &factorial(n))
}

/// The four-part two-dimensional formula with single-line sums to `N` and
/// the double Bernoulli sum over `n1 + n2 < N`.
pub fn euler_maclaurin_2d(
    form: &QuadForm,
    shift: (&Rational, &Rational),
    z: &Complex,
    n_terms: usize,
    ctx: &PrecCtx,
) -> Result<Complex> {
    let p = ctx.work();
    let z2 = Complex::with_val(p, z.square_ref());
    let mut out = Complex::with_val(p, form.quadrant_integral(p)) / &z2;
    let b1: Vec<Rational> = (0..=n_terms)
        .map(|n| BernoulliPoly::new(n + 1).eval(shift.0))
        .collect();
    let b2: Vec<Rational> = (0..=n_terms)
        .map(|n| BernoulliPoly::new(n + 1).eval(shift.1))
        .collect();
    let mut zpow = vec![Complex::with_val(p, 1)];
    for n in 1..=n_terms {
        let next = Complex::with_val(p, &zpow[n - 1] * z);
        zpow.push(next);
    }
    let mut lines = Complex::with_val(p, 0);
    for n in 0..=n_terms {
        let fact = Float::with_val(p, &factorial(n + 1));
        let c1 = Float::with_val(p, &b1[n]) * form.line_integral_x2(n, p) / &fact;
        let c2 = Float::with_val(p, &b2[n]) * form.line_integral_x1(n, p) / &fact;
        lines += Complex::with_val(p, &zpow[n] * (c1 + c2));
    }
    out -= lines / z;
    for n1 in 0..n_terms {
        for n2 in 0..n_terms - n1 {
            let d = form.derivative_at_zero(n1, n2);
            if d == 0 {
                continue;
            }
            let c = Rational::from(&b1[n1] * &b2[n2]) * d / factorial(n1 + 1) / factorial(n2 + 1);
            out += Complex::with_val(p, &zpow[n1 + n2] * Float::with_val(p, &c));
        }
    }
    Ok(out)
}

/// `sum_{m in N0^2} exp(-Q((m + a) z))`, truncated outside the ellipse
/// where `Re(z^2) Q < (bits + guard) ln 2`.
pub fn direct_sum_2d(
    form: &QuadForm,
    shift: (&Rational, &Rational),
    z: &Complex,
    ctx: &PrecCtx,
) -> Result<Complex> {
    check_sector(z)?;
    let p = ctx.work();
    let z2 = Complex::with_val(p, z.square_ref());
    let re2 = z2.real().to_f64();
    let budget = p as f64 * std::f64::consts::LN_2 + 4.0;
    let radius = (budget / (re2 * form.kappa())).sqrt();
    let m_max = radius.ceil() as u64 + 1;
    if (m_max as u128).pow(2) > ctx.term_cap as u128 * 4 {
        return Err(Error::PrecisionUnderflow {
            needed: (m_max * m_max) as usize,
            limit: format!("term cap {}", ctx.term_cap),
        });
    }
    let neg_z2 = -z2;
    let mut acc = Complex::with_val(p, 0);
    for m1 in 0..=m_max {
        let x1 = Rational::from(m1) + shift.0;
        for m2 in 0..=m_max {
            let x2 = Rational::from(m2) + shift.1;
            let q = form.value(&x1, &x2);
            let qf = q.to_f64();
            if qf * re2 > budget {
                if m2 as f64 > radius {
                    break;
                }
                continue;
            }
            acc += Complex::with_val(p, &neg_z2 * Float::with_val(p, &q)).exp();
        }
    }
    Ok(acc)
}

pub fn slope_2d(
    form: &QuadForm,
    shift: (&Rational, &Rational),
    ray: &Ray,
    n_terms: usize,
    ctx: &PrecCtx,
) -> Result<SlopeReport> {
    let mut rows = Vec::new();
    for &r in &ray.magnitudes {
        let z = ray.point(r, ctx)?;
        let direct = direct_sum_2d(form, shift, &z, ctx)?;
        let formula = euler_maclaurin_2d(form, shift, &z, n_terms, ctx)?;
        rows.push((r, abs(&(direct - formula)).to_f64()));
    }
    Ok(SlopeReport {
        profile: form.label(),
        dim: 2,
        n_terms,
        alpha: ray.alpha,
        slope: fit_slope(&rows),
        rows,
    })
}
