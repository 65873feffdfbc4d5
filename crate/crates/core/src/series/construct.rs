//! Sparse constructors: q-Pochhammer products and theta-type sums.

use serde::{Deserialize, Serialize};

use super::SeriesQ;
use crate::error::{Error, Result};

/// Sign convention for a product factor `1 - sign*q^e`: `Plus` gives
/// `1 - q^e`, `Minus` gives `1 + q^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Count {
    Finite(usize),
    Infinite,
}

/// `(sign*q^base; q^step)_count = prod_j (1 - sign*q^{base + j*step})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PochSpec {
    pub sign: Sign,
    pub base: usize,
    pub step: usize,
    pub count: Count,
}

impl PochSpec {
    pub fn infinite(sign: Sign, base: usize, step: usize) -> Self {
        PochSpec {
            sign,
            base,
            step,
            count: Count::Infinite,
        }
    }

    pub fn finite(sign: Sign, base: usize, step: usize, n: usize) -> Self {
        PochSpec {
            sign,
            base,
            step,
            count: Count::Finite(n),
        }
    }

    /// Exponents of the factors, in increasing order; infinite specs yield an
    /// endless iterator.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        let take = match self.count {
            Count::Finite(n) => n,
            Count::Infinite => usize::MAX,
        };
        (0..take).map(move |j| self.base + j * self.step)
    }
}

/// Truncated product for `spec`; factors with exponent `>= order` are 1 modulo
/// `q^order` and are skipped.
///
/// # Panics
///
/// If `base` or `step` is zero.
pub fn pochhammer(spec: PochSpec, order: usize) -> SeriesQ {
    assert!(
        spec.base >= 1 && spec.step >= 1,
        "pochhammer needs base, step >= 1"
    );
    let mut s = SeriesQ::one(order);
    for e in spec.exponents() {
        if e >= order {
            break;
        }
        s.mul_binomial(spec.sign, e);
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaRange {
    /// `n >= 0`
    OneSided,
    /// `n` over all integers
    TwoSided,
}

/// `sum q^{a n^2 + b n}` over the given range, truncated at `order`.
pub fn theta_gap(a: u64, b: i64, range: ThetaRange, order: usize) -> Result<SeriesQ> {
    if a == 0 {
        return Err(Error::Precondition("theta_gap needs a >= 1".into()));
    }
    let a = a as i64;
    let exponent = |n: i64| a * n * n + b * n;
    // beyond |n| > |b| the exponent is increasing in |n|, so negativity can only
    // occur inside that window
    let lo = match range {
        ThetaRange::OneSided => 0,
        ThetaRange::TwoSided => -(b.abs() + 1),
    };
    for n in lo..=b.abs() + 1 {
        if exponent(n) < 0 {
            return Err(Error::NegativeExponent {
                n,
                exponent: exponent(n),
            });
        }
    }
    let order_i = order as i64;
    let mut terms = Vec::new();
    let mut n = 0i64;
    loop {
        let e = exponent(n);
        if e >= order_i && n > b.abs() {
            break;
        }
        if e < order_i {
            terms.push((e as usize, 1));
        }
        n += 1;
    }
    if range == ThetaRange::TwoSided {
        let mut n = -1i64;
        loop {
            let e = exponent(n);
            if e >= order_i && -n > b.abs() {
                break;
            }
            if e < order_i {
                terms.push((e as usize, 1));
            }
            n -= 1;
        }
    }
    Ok(SeriesQ::from_sparse(terms, order))
}

/// `sum_{n in Z} (-1)^n q^{n(3n+1)/2}`, Euler's pentagonal series.
pub fn pentagonal_signed(order: usize) -> SeriesQ {
    let mut terms = Vec::new();
    for n in 0i64.. {
        let plus = n * (3 * n + 1) / 2;
        let minus = n * (3 * n - 1) / 2;
        if minus >= order as i64 {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        terms.push((plus as usize, sign));
        if n > 0 {
            terms.push((minus as usize, sign));
        }
    }
    SeriesQ::from_sparse(terms, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_product_order_16() {
        let e = pochhammer(PochSpec::infinite(Sign::Plus, 1, 1), 16);
        let expected = SeriesQ::from_sparse(
            [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)],
            16,
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn finite_product() {
        let p = pochhammer(PochSpec::finite(Sign::Minus, 1, 1, 2), 10);
        assert_eq!(p, SeriesQ::from_i64s(&[1, 1, 1, 1, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn minus_q2_times_q2_is_q4() {
        let n = 100;
        let a = pochhammer(PochSpec::infinite(Sign::Minus, 2, 2), n);
        let b = pochhammer(PochSpec::infinite(Sign::Plus, 2, 2), n);
        let c = pochhammer(PochSpec::infinite(Sign::Plus, 4, 4), n);
        assert_eq!(&a * &b, c);
    }

    #[test]
    fn theta_basic() {
        assert_eq!(
            theta_gap(1, 0, ThetaRange::OneSided, 10).unwrap(),
            SeriesQ::from_sparse([(0, 1), (1, 1), (4, 1), (9, 1)], 10)
        );
        assert_eq!(
            theta_gap(1, 0, ThetaRange::TwoSided, 10).unwrap(),
            SeriesQ::from_sparse([(0, 1), (1, 2), (4, 2), (9, 2)], 10)
        );
        // q^{2n^2+2n}, n in Z, pairs n and -1-n
        assert_eq!(
            theta_gap(2, 2, ThetaRange::TwoSided, 13).unwrap(),
            SeriesQ::from_sparse([(0, 2), (4, 2), (12, 2)], 13)
        );
    }

    #[test]
    fn theta_negative_exponent_rejected() {
        assert!(matches!(
            theta_gap(1, -3, ThetaRange::OneSided, 10),
            Err(Error::NegativeExponent { n: 1, exponent: -2 })
        ));
        assert!(theta_gap(1, 1, ThetaRange::TwoSided, 10).is_ok());
        assert!(theta_gap(1, 2, ThetaRange::TwoSided, 10).is_err());
        assert!(theta_gap(0, 0, ThetaRange::OneSided, 10).is_err());
    }

    #[test]
    fn pentagonal_small() {
        let p = pentagonal_signed(13);
        assert_eq!(
            p,
            SeriesQ::from_sparse([(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)], 13)
        );
        assert_eq!(p.coeff_i64(3), Some(0));
    }

    #[test]
    fn pentagonal_equals_product_up_to_2000() {
        let n = 2000;
        assert_eq!(
            pentagonal_signed(n),
            pochhammer(PochSpec::infinite(Sign::Plus, 1, 1), n)
        );
    }

    #[test]
    fn pentagonal_equals_product_every_small_order() {
        for n in 0..120 {
            assert_eq!(
                pentagonal_signed(n),
                pochhammer(PochSpec::infinite(Sign::Plus, 1, 1), n),
                "order {n}"
            );
        }
    }
}
