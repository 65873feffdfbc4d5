//! High-precision evaluation near `q = 1`: products, theta and mock theta
//! functions, Euler-Maclaurin summation, and lemma trend checks.
//!
//! All arithmetic is MPFR/MPC at an explicit precision carried in a
//! [`PrecCtx`]. Points are given by `z` with `q = e^{-z}` and `Re z > 0`.

pub mod bernoulli;
pub mod em;
pub mod lemmas;
pub mod mock;
pub mod products;

use std::f64::consts::{FRAC_PI_2, LN_2};

use rug::float::Constant;
use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};

pub use bernoulli::BernoulliPoly;
pub use products::{eval_product, eval_product_at, eval_theta};

/// Complex numbers at an explicit mantissa precision.
pub type PrecComplex = Complex;

/// Precision settings passed to every numeric kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrecCtx {
    /// Target precision of results, in bits.
    pub bits: u32,
    /// Extra bits carried through intermediate steps.
    pub guard: u32,
    /// Hard ceiling on the working precision auto-scaling may request.
    pub max_bits: u32,
    /// Most factors or terms any single product or sum may take.
    pub term_cap: usize,
}

impl PrecCtx {
    pub fn new(bits: u32) -> Self {
        PrecCtx {
            bits,
            guard: 64,
            max_bits: 1 << 14,
            term_cap: 2_000_000,
        }
    }

    /// `bits + guard`.
    pub fn work(&self) -> u32 {
        self.bits + self.guard
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.work(), (re, im))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.work(), Constant::Pi)
    }
}

impl Default for PrecCtx {
    fn default() -> Self {
        PrecCtx::new(128)
    }
}

/// `q = (-1)^neg * e^{-z}` with `Re z > 0`; powers are taken as
/// `(-1)^{neg*e} e^{-e z}`, so no complex logarithm of `q` is needed.
#[derive(Debug, Clone, PartialEq)]
pub struct QArg {
    pub neg: bool,
    pub z: Complex,
}

impl QArg {
    pub fn new(z: &Complex) -> Result<Self> {
        if *z.real() <= 0 {
            return Err(Error::OutsideCone(format!(
                "Re z must be positive, got z = {z}"
            )));
        }
        Ok(QArg {
            neg: false,
            z: z.clone(),
        })
    }

    /// `-e^{-z}`.
    pub fn negated(z: &Complex) -> Result<Self> {
        Ok(QArg {
            neg: true,
            ..Self::new(z)?
        })
    }

    /// `q^k` as a new argument: `z -> k z`, sign `(-1)^{neg*k}`.
    pub fn power(&self, k: u64) -> QArg {
        QArg {
            neg: self.neg && k % 2 == 1,
            z: Complex::with_val(self.z.prec(), &self.z * k),
        }
    }

    pub fn re_z(&self) -> f64 {
        self.z.real().to_f64()
    }

    /// `q^e` at precision `prec`.
    pub fn pow(&self, e: u64, prec: u32) -> Complex {
        let mut w = Complex::with_val(prec, &self.z * e);
        w = -w;
        let mut v = w.exp();
        if self.neg && e % 2 == 1 {
            v = -v;
        }
        v
    }

    /// `q` itself.
    pub fn value(&self, prec: u32) -> Complex {
        self.pow(1, prec)
    }

    /// `log |q^e|` and `arg q^e`, in f64, for precision planning.
    pub(crate) fn pow_f64(&self, e: u64) -> (f64, f64) {
        let (re, im) = (self.z.real().to_f64(), self.z.imag().to_f64());
        let mut arg = -(e as f64) * im;
        if self.neg && e % 2 == 1 {
            arg += std::f64::consts::PI;
        }
        (-(e as f64) * re, arg)
    }

    /// `ln |1 - s q^e|` in f64, `s = +-1`.
    pub(crate) fn ln_abs_one_minus(&self, s: f64, e: u64) -> f64 {
        let (lm, arg) = self.pow_f64(e);
        let m = lm.exp();
        let re = 1.0 - s * m * arg.cos();
        let im = -s * m * arg.sin();
        re.hypot(im).ln()
    }

    /// Exponent past which `|q|^e < 2^{-bits}`.
    pub(crate) fn cutoff(&self, bits: u32) -> u64 {
        (bits as f64 * LN_2 / self.re_z()).ceil() as u64 + 1
    }
}

/// A ray `z = r e^{i alpha}`, `|alpha| < pi/2`, sampled at decreasing `r`.
/// It lies in the cone `|Im z| <= Delta Re z` with `Delta = tan|alpha|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ray {
    pub alpha: f64,
    pub magnitudes: Vec<f64>,
}

impl Ray {
    pub fn new(alpha: f64, magnitudes: Vec<f64>) -> Result<Self> {
        if alpha.is_nan() || alpha.abs() >= FRAC_PI_2 {
            return Err(Error::OutsideCone(format!(
                "ray angle {alpha} is not inside (-pi/2, pi/2)"
            )));
        }
        if let Some(r) = magnitudes.iter().find(|r| !r.is_finite() || **r <= 0.0) {
            return Err(Error::OutsideCone(format!(
                "ray magnitude {r} must be positive and finite"
            )));
        }
        if magnitudes.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Precondition(
                "ray magnitudes must be strictly decreasing".into(),
            ));
        }
        Ok(Ray { alpha, magnitudes })
    }

    pub fn real(magnitudes: Vec<f64>) -> Result<Self> {
        Ray::new(0.0, magnitudes)
    }

    pub fn delta(&self) -> f64 {
        self.alpha.abs().tan()
    }

    /// `z = r e^{i alpha}`, checked against the cone.
    pub fn point(&self, r: f64, ctx: &PrecCtx) -> Result<Complex> {
        let prec = ctx.work();
        let alpha = Float::with_val(prec, self.alpha);
        let (s, c) = alpha.sin_cos(Float::new(prec));
        let z = Complex::with_val(prec, (c * r, s * r));
        self.check(&z)?;
        Ok(z)
    }

    pub fn points(&self, ctx: &PrecCtx) -> Result<Vec<Complex>> {
        self.magnitudes
            .iter()
            .map(|&r| self.point(r, ctx))
            .collect()
    }

    /// Region discipline: `Re z > 0` and `|Im z| <= Delta Re z` up to rounding.
    pub fn check(&self, z: &Complex) -> Result<()> {
        let x = z.real().to_f64();
        let y = z.imag().to_f64();
        if x <= 0.0 || y.abs() > self.delta() * x * (1.0 + 1e-12) + 1e-300 {
            return Err(Error::OutsideCone(format!(
                "z = {x} + {y}i outside R_Delta, Delta = {}",
                self.delta()
            )));
        }
        Ok(())
    }
}

/// Default grid: angles `0, pi/6, pi/3`, magnitudes `0.2, 0.1, 0.05, 0.025`.
pub fn default_rays() -> Vec<Ray> {
    [
        0.0,
        std::f64::consts::FRAC_PI_6,
        std::f64::consts::FRAC_PI_3,
    ]
    .into_iter()
    .map(|a| Ray::new(a, vec![0.2, 0.1, 0.05, 0.025]).expect("valid default ray"))
    .collect()
}

pub(crate) fn abs(c: &Complex) -> Float {
    Float::with_val(c.prec().0, c.abs_ref())
}

/// `|a/b - 1|` as f64.
pub(crate) fn rel_dev(a: &Complex, b: &Complex) -> f64 {
    let r = Complex::with_val(a.prec(), a / b) - 1u32;
    abs(&r).to_f64()
}

/// `-log10 |a/b - 1|`, capped at the working precision.
pub fn agreeing_digits(a: &Complex, b: &Complex) -> f64 {
    let d = rel_dev(a, b);
    let cap = a.prec().0 as f64 * std::f64::consts::LOG10_2;
    if d == 0.0 {
        cap
    } else {
        (-d.log10()).min(cap)
    }
}

pub fn format_complex(c: &Complex, digits: usize) -> String {
    let p = digits.saturating_sub(1);
    if c.imag().is_zero() {
        format!("{:.*e}", p, c.real())
    } else {
        format!("{:.*e}{:+.*e}i", p, c.real(), p, c.imag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_validation() {
        assert!(Ray::new(1.6, vec![0.1]).is_err());
        assert!(Ray::new(-1.6, vec![0.1]).is_err());
        assert!(Ray::new(0.3, vec![0.1, -0.05]).is_err());
        assert!(Ray::new(0.3, vec![0.1, 0.0]).is_err());
        assert!(Ray::new(0.3, vec![0.05, 0.1]).is_err());
        let r = Ray::new(std::f64::consts::FRAC_PI_3, vec![0.2, 0.1]).unwrap();
        assert!((r.delta() - 3f64.sqrt()).abs() < 1e-12);
        let ctx = PrecCtx::default();
        for z in r.points(&ctx).unwrap() {
            r.check(&z).unwrap();
        }
        // a point of a wider ray falls outside a narrower cone
        let wide = Ray::new(1.2, vec![0.1]).unwrap().point(0.1, &ctx).unwrap();
        assert!(matches!(
            Ray::real(vec![0.1]).unwrap().check(&wide),
            Err(Error::OutsideCone(_))
        ));
    }

    #[test]
    fn qarg_powers() {
        let ctx = PrecCtx::default();
        let z = ctx.complex(0.3, 0.1);
        let q = QArg::negated(&z).unwrap();
        let q3 = q.pow(3, ctx.work());
        let v = q.value(ctx.work());
        let cube = Complex::with_val(ctx.work(), &v * &v) * &v;
        assert!(rel_dev(&q3, &cube) < 1e-35);
        assert!(QArg::new(&ctx.complex(-0.1, 0.0)).is_err());
        assert!(QArg::new(&ctx.complex(0.0, 1.0)).is_err());
    }
}
