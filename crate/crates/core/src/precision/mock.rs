//! Eulerian-form mock theta sums near `q = -1` and `q = 1`.
//!
//! At `q = -e^{-z}` the denominators `(-q;q)_n` contain factors `1 - e^{-kz}`
//! that are close to zero, so individual terms dwarf the sum. A float pass
//! estimates the largest term; the working precision is raised by that many
//! bits and checked again against the size of the result.

use std::f64::consts::LN_2;

use rug::Complex;

use super::products::{eval_q_minus_q, eval_terms, eval_theta4_minus_q};
use super::{abs, PrecCtx, QArg};
use crate::error::{Error, Result};

/// `sum_{n>=0} q^{lead(n)} / prod_{k=1}^n D_k` with
/// `D_k = prod_{(s, e) in den(k)} (1 - s q^e)`.
pub fn eval_eulerian(
    q: &QArg,
    lead: impl Fn(u64) -> u64,
    den: impl Fn(u64) -> Vec<(i64, u64)>,
    ctx: &PrecCtx,
) -> Result<Complex> {
    // float plan: ln |term_n|
    let re = q.re_z();
    let give_up = (ctx.max_bits as f64 + 64.0) * LN_2;
    let mut logs = Vec::new();
    let mut ln_den = 0.0;
    let mut peak = f64::NEG_INFINITY;
    for n in 0u64.. {
        if n > 0 {
            for (s, e) in den(n) {
                ln_den += q.ln_abs_one_minus(s as f64, e);
            }
        }
        let lt = -(lead(n) as f64) * re - ln_den;
        logs.push(lt);
        peak = peak.max(lt);
        if lt < peak - give_up && n > 2 {
            break;
        }
        if logs.len() > ctx.term_cap {
            return Err(Error::PrecisionUnderflow {
                needed: logs.len(),
                limit: format!("term cap {}", ctx.term_cap),
            });
        }
    }
    let mut work = ctx.work() + (peak.max(0.0) / LN_2).ceil() as u32;
    for _attempt in 0..2 {
        if work > ctx.max_bits {
            return Err(Error::PrecisionUnderflow {
                needed: work as usize,
                limit: format!("max_bits {}", ctx.max_bits),
            });
        }
        let argmax = logs
            .iter()
            .enumerate()
            .fold(0, |m, (i, &l)| if l > logs[m] { i } else { m });
        let stop = peak - (work as f64 + 8.0) * LN_2;
        let n_end = (argmax..logs.len())
            .find(|&i| logs[i] < stop)
            .unwrap_or(logs.len());
        let sum = sum_eulerian_at(q, &lead, &den, n_end as u64, work);
        let ln_sum = abs(&sum).to_f64().ln();
        let lost = ((peak - ln_sum) / LN_2).max(0.0).ceil() as u32;
        if ctx.bits + lost + 16 <= work {
            return Ok(sum);
        }
        work = ctx.work() + lost;
    }
    Err(Error::PrecisionUnderflow {
        needed: work as usize,
        limit: "cancellation did not settle".into(),
    })
}

fn sum_eulerian_at(
    q: &QArg,
    lead: &impl Fn(u64) -> u64,
    den: &impl Fn(u64) -> Vec<(i64, u64)>,
    n_end: u64,
    prec: u32,
) -> Complex {
    let mut acc = Complex::with_val(prec, 0);
    let mut inv_den = Complex::with_val(prec, 1);
    for n in 0..n_end {
        if n > 0 {
            for (s, e) in den(n) {
                let p = q.pow(e, prec);
                let d = if s == 1 {
                    Complex::with_val(prec, 1 - p)
                } else {
                    Complex::with_val(prec, 1 + p)
                };
                inv_den /= d;
            }
        }
        acc += q.pow(lead(n), prec) * &inv_den;
    }
    acc
}

/// `f(q) = sum q^{n^2} / (-q;q)_n^2` at the given `q`.
pub fn eval_f_at(q: &QArg, ctx: &PrecCtx) -> Result<Complex> {
    eval_eulerian(q, |n| n * n, |k| vec![(-1, k), (-1, k)], ctx)
}

/// `sigma(q) = sum q^{n(n+1)/2} / (-q;q)_n` at the given `q`.
pub fn eval_sigma_at(q: &QArg, ctx: &PrecCtx) -> Result<Complex> {
    eval_eulerian(q, |n| n * (n + 1) / 2, |k| vec![(-1, k)], ctx)
}

/// `phi(q) = sum q^{n^2} / (-q^2;q^2)_n` at the given `q`.
pub fn eval_phi_at(q: &QArg, ctx: &PrecCtx) -> Result<Complex> {
    eval_eulerian(q, |n| n * n, |k| vec![(-1, 2 * k)], ctx)
}

/// `f(-q)` at `q = e^{-z}`, summed directly.
pub fn eval_f_at_minus_q(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    eval_f_at(&QArg::negated(z)?, ctx)
}

/// `f(-q) = 2 phi(q) - theta_4(0;-q) / (q;-q)_inf` at `q = e^{-z}`.
pub fn eval_f_at_minus_q_watson(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    let phi = eval_phi_at(&QArg::new(z)?, ctx)?;
    let theta = eval_theta4_minus_q(z, ctx)?;
    let prod = eval_q_minus_q(z, ctx)?;
    Ok(2 * phi - theta / prod)
}

/// `sigma(-e^{-z})`, summed directly.
pub fn eval_sigma_at_minus_q(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    eval_sigma_at(&QArg::negated(z)?, ctx)
}

/// `sigma(-e^{-z})` from the Hecke-type double sum
/// `sum_{n>=0, |j|<=n} (-1)^{n+j} (1 - q^{2n+1}) q^{n(3n+1)/2 - j^2}`.
pub fn eval_sigma_at_minus_q_hecke(z: &Complex, ctx: &PrecCtx) -> Result<Complex> {
    let q = QArg::negated(z)?;
    let cutoff = q.cutoff(ctx.work());
    let mut terms = Vec::new();
    for n in 0u64.. {
        if n * (n + 1) / 2 > cutoff {
            break;
        }
        let base = n * (3 * n + 1) / 2;
        for j in -(n as i64)..=(n as i64) {
            let e = base - (j * j) as u64;
            let sign = if (n as i64 + j) % 2 == 0 { 1 } else { -1 };
            if e <= cutoff {
                terms.push((e, sign));
            }
            if e + 2 * n < cutoff {
                terms.push((e + 2 * n + 1, -sign));
            }
        }
        if terms.len() > ctx.term_cap {
            return Err(Error::PrecisionUnderflow {
                needed: terms.len(),
                limit: format!("term cap {}", ctx.term_cap),
            });
        }
    }
    Ok(eval_terms(&q, &terms, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{agreeing_digits, rel_dev};
    use crate::series::{mock_f, phi_series, sigma_series};

    fn ctx() -> PrecCtx {
        PrecCtx::new(128)
    }

    /// Evaluates a truncated q-series at real `x`, as an independent oracle
    /// where the series converges fast.
    fn horner(coeffs: &[rug::Integer], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    #[test]
    fn eulerian_sums_match_series_at_small_q() {
        let c = ctx();
        let z = c.complex(2.0, 0.0);
        let x = (-2.0f64).exp();
        let q = QArg::new(&z).unwrap();
        let f = eval_f_at(&q, &c).unwrap().real().to_f64();
        assert!((f - horner(mock_f(60).coeffs(), x)).abs() < 1e-14);
        let s = eval_sigma_at(&q, &c).unwrap().real().to_f64();
        assert!((s - horner(sigma_series(60).coeffs(), x)).abs() < 1e-14);
        let p = eval_phi_at(&q, &c).unwrap().real().to_f64();
        assert!((p - horner(phi_series(60).coeffs(), x)).abs() < 1e-14);
        let fm = eval_f_at_minus_q(&z, &c).unwrap().real().to_f64();
        assert!((fm - horner(mock_f(60).negate_q().coeffs(), x)).abs() < 1e-14);
    }

    #[test]
    fn f_direct_and_watson_agree() {
        let c = ctx();
        for (re, im) in [(0.2, 0.0), (0.1, 0.05)] {
            let z = c.complex(re, im);
            let a = eval_f_at_minus_q(&z, &c).unwrap();
            let b = eval_f_at_minus_q_watson(&z, &c).unwrap();
            assert!(agreeing_digits(&a, &b) >= 30.0, "z={re}+{im}i: {a} vs {b}");
        }
    }

    #[test]
    fn sigma_direct_and_hecke_agree() {
        let c = ctx();
        for (re, im) in [(0.4, 0.0), (0.1, 0.0), (0.05, 0.02)] {
            let z = c.complex(re, im);
            let a = eval_sigma_at_minus_q(&z, &c).unwrap();
            let b = eval_sigma_at_minus_q_hecke(&z, &c).unwrap();
            assert!(rel_dev(&a, &b) < 1e-30, "z={re}+{im}i: {a} vs {b}");
        }
    }

    #[test]
    fn precision_ceiling_enforced() {
        let mut c = ctx();
        c.max_bits = 200;
        let z = c.complex(0.005, 0.0);
        assert!(matches!(
            eval_f_at_minus_q(&z, &c),
            Err(Error::PrecisionUnderflow { .. })
        ));
    }
}
