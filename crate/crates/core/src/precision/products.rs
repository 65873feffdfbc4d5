//! Infinite products and theta-type sums at `q = +-e^{-z}`.

use rug::Complex;

use super::{PrecCtx, QArg};
use crate::error::{Error, Result};
use crate::series::{Count, PochSpec};

/// `(sign*q^base; q^step)_count` at the given `q`.
///
/// Factors are dropped once `|q|^e < 2^{-(bits+guard)}`.
pub fn eval_product_at(spec: &PochSpec, q: &QArg, ctx: &PrecCtx) -> Result<Complex> {
    if spec.base == 0 || spec.step == 0 {
        return Err(Error::Precondition("product needs base, step >= 1".into()));
    }
    let prec = ctx.work();
    let cutoff = q.cutoff(prec);
    let needed = match spec.count {
        Count::Finite(n) => n as u64,
        Count::Infinite => cutoff.saturating_sub(spec.base as u64) / spec.step as u64 + 1,
    };
    if needed > ctx.term_cap as u64 {
        return Err(Error::PrecisionUnderflow {
            needed: needed as usize,
            limit: format!("factor cap {}", ctx.term_cap),
        });
    }
    let s = spec.sign.as_i64();
    let mut acc = Complex::with_val(prec, 1);
    let mut power = q.pow(spec.base as u64, prec);
    let ratio = q.pow(spec.step as u64, prec);
    let mut e = spec.base as u64;
    for _ in 0..needed {
        if e > cutoff {
            break;
        }
        let factor = if s == 1 {
            Complex::with_val(prec, 1 - &power)
        } else {
            Complex::with_val(prec, 1 + &power)
        };
        acc *= factor;
        power *= &ratio;
        e += spec.step as u64;
    }
    Ok(acc)
}

/// `(sign*q^base; q^step)_count` at `q = e^{-z}`.
pub fn eval_product(spec: &PochSpec, z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    eval_product_at(spec, &QArg::new(z)?, ctx)
}

/// `sum c * q^e` over sparse `(e, c)` terms.
pub fn eval_terms(q: &QArg, terms: &[(u64, i64)], ctx: &PrecCtx) -> Complex {
    let prec = ctx.work();
    let mut acc = Complex::with_val(prec, 0);
    for &(e, c) in terms {
        acc += q.pow(e, prec) * c;
    }
    acc
}

/// `sum_n sign(n) q^{a n^2 + b n}` over `n >= 0` (and `n < 0` if
/// `two_sided`), truncated once `|q|^e < 2^{-(bits+guard)}`.
pub fn eval_quadratic_sum(
    q: &QArg,
    a: u64,
    b: i64,
    two_sided: bool,
    sign: impl Fn(i64) -> i64,
    ctx: &PrecCtx,
) -> Result<Complex> {
    let cutoff = q.cutoff(ctx.work()) as i64;
    let mut terms = Vec::new();
    let directions: &[i64] = if two_sided { &[1, -1] } else { &[1] };
    for &dir in directions {
        let start = if dir == 1 { 0 } else { -1 };
        let mut n = start;
        loop {
            let e = a as i64 * n * n + b * n;
            if e < 0 {
                return Err(Error::NegativeExponent { n, exponent: e });
            }
            if e > cutoff && n.abs() > b.abs() {
                break;
            }
            if e <= cutoff {
                terms.push((e as u64, sign(n)));
            }
            if terms.len() > ctx.term_cap {
                return Err(Error::PrecisionUnderflow {
                    needed: terms.len(),
                    limit: format!("term cap {}", ctx.term_cap),
                });
            }
            n += dir;
        }
    }
    Ok(eval_terms(q, &terms, ctx))
}

/// `Theta(iz/2pi) = sum_{n in Z} e^{-n^2 z/2}`.
pub fn eval_theta(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    let half = QArg::new(&Complex::with_val(ctx.work(), z / 2u32))?;
    eval_quadratic_sum(&half, 1, 0, true, |_| 1, ctx)
}

/// `theta_4(0; -q) = sum (-1)^n (-q)^{n^2}`, taken literally.
pub fn eval_theta4_minus_q(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    eval_quadratic_sum(
        &QArg::negated(z)?,
        1,
        0,
        true,
        |n| if n % 2 == 0 { 1 } else { -1 },
        ctx,
    )
}

/// `sum_{n in Z} q^{n^2}`, the simplified form of `theta_4(0; -q)`.
pub fn eval_theta_squares(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    eval_quadratic_sum(&QArg::new(z)?, 1, 0, true, |_| 1, ctx)
}

/// `(q;-q)_inf = prod_{k >= 1} (1 + (-q)^k)`.
pub fn eval_q_minus_q(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    eval_product_at(
        &PochSpec::infinite(crate::series::Sign::Minus, 1, 1),
        &QArg::negated(z)?,
        ctx,
    )
}

/// `(q;-q)_inf` as `(-q^2;q^2)_inf (q;q^2)_inf`.
pub fn eval_q_minus_q_split(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    use crate::series::Sign;
    let a = eval_product(&PochSpec::infinite(Sign::Minus, 2, 2), z, ctx)?;
    let b = eval_product(&PochSpec::infinite(Sign::Plus, 1, 2), z, ctx)?;
    Ok(a * b)
}

/// `(q;q)_inf` through the eta transformation:
/// `sqrt(2 pi/z) e^{-pi^2/6z + z/24} (qt;qt)_inf` with `qt = e^{-4 pi^2/z}`.
pub fn eval_euler_by_transformation(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    use crate::series::Sign;
    let prec = ctx.work();
    let pi = ctx.pi();
    let pi2 = pi_sq(ctx);
    let dual = Complex::with_val(prec, 4 * pi2.clone() / z);
    let tail = eval_product(&PochSpec::infinite(Sign::Plus, 1, 1), &dual, ctx)?;
    let pref = Complex::with_val(prec, 2 * pi / z).sqrt();
    let expo = Complex::with_val(prec, -pi2 / (6 * z.clone())) + Complex::with_val(prec, z / 24u32);
    Ok(pref * expo.exp() * tail)
}

pub(crate) fn pi_sq(ctx: &PrecCtx) -> rug::Float {
    let pi = ctx.pi();
    rug::Float::with_val(ctx.work(), &pi * &pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::rel_dev;
    use crate::series::Sign;

    fn ctx() -> PrecCtx {
        PrecCtx::new(128)
    }

    #[test]
    fn euler_product_matches_pentagonal_sum() {
        let c = ctx();
        let z = c.complex(0.3, 0.2);
        let prod = eval_product(&PochSpec::infinite(Sign::Plus, 1, 1), &z, &c).unwrap();
        let q = QArg::new(&z).unwrap();
        let terms: Vec<(u64, i64)> = (-80i64..=80)
            .map(|n| {
                (
                    (n * (3 * n - 1) / 2) as u64,
                    if n % 2 == 0 { 1 } else { -1 },
                )
            })
            .collect();
        let sum = eval_terms(&q, &terms, &c);
        assert!(rel_dev(&prod, &sum) < 1e-35);
    }

    #[test]
    fn transformation_oracle_agrees() {
        let c = ctx();
        for (re, im) in [(0.1, 0.0), (0.05, 0.03), (0.5, -0.4)] {
            let z = c.complex(re, im);
            let direct = eval_product(&PochSpec::infinite(Sign::Plus, 1, 1), &z, &c).unwrap();
            let dual = eval_euler_by_transformation(&z, &c).unwrap();
            assert!(rel_dev(&direct, &dual) < 1e-35, "z = {re}+{im}i");
        }
    }

    #[test]
    fn theta_at_one() {
        let c = ctx();
        let v = eval_theta(&c.complex(1.0, 0.0), &c).unwrap();
        let direct: f64 = 1.0 + 2.0 * (1..40).map(|n| (-(n * n) as f64 / 2.0).exp()).sum::<f64>();
        assert!((v.real().to_f64() - direct).abs() < 1e-14);
        assert!(v.imag().is_zero());
    }

    #[test]
    fn theta4_forms_agree() {
        let c = ctx();
        let z = c.complex(0.07, 0.02);
        let a = eval_theta4_minus_q(&z, &c).unwrap();
        let b = eval_theta_squares(&z, &c).unwrap();
        assert!(rel_dev(&a, &b) < 1e-40);
    }

    #[test]
    fn q_minus_q_forms_agree() {
        let c = ctx();
        let z = c.complex(0.05, 0.01);
        let a = eval_q_minus_q(&z, &c).unwrap();
        let b = eval_q_minus_q_split(&z, &c).unwrap();
        assert!(rel_dev(&a, &b) < 1e-35);
    }

    #[test]
    fn finite_product() {
        let c = ctx();
        let z = c.complex(0.5, 0.0);
        let p = eval_product(&PochSpec::finite(Sign::Minus, 1, 1, 2), &z, &c).unwrap();
        let q = (-0.5f64).exp();
        assert!((p.real().to_f64() - (1.0 + q) * (1.0 + q * q)).abs() < 1e-15);
    }

    #[test]
    fn factor_cap_enforced() {
        let mut c = ctx();
        c.term_cap = 100;
        let z = c.complex(1e-3, 0.0);
        assert!(matches!(
            eval_product(&PochSpec::infinite(Sign::Plus, 1, 1), &z, &c),
            Err(Error::PrecisionUnderflow { .. })
        ));
    }
}
