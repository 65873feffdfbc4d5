//! Truncated power series in `q` with exact integer coefficients.
//!
//! A [`SeriesQ`] of order `N` stores the coefficients of `q^0 .. q^{N-1}`;
//! everything from `q^N` on is unknown. Binary operations truncate to the
//! smaller order, so identities are always compared on the overlap.

mod construct;
mod mock;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Integer};

use crate::error::{Error, Result};

pub use construct::{pentagonal_signed, pochhammer, theta_gap, Count, PochSpec, Sign, ThetaRange};
pub use mock::{
    hecke_phi0, hecke_phi1, hecke_sigma, mock_f, mock_f_appell, mock_f_appell_shifted, phi_series,
    sigma_series,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesQ {
    coeffs: Vec<Integer>,
}

impl SeriesQ {
    pub fn zero(order: usize) -> Self {
        SeriesQ {
            coeffs: vec![Integer::new(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 1, order)
    }

    /// `coeff * q^exp`, or zero when `exp >= order`.
    pub fn monomial(exp: usize, coeff: i64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp < order {
            s.coeffs[exp].assign(coeff);
        }
        s
    }

    pub fn constant(c: i64, order: usize) -> Self {
        Self::monomial(0, c, order)
    }

    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        SeriesQ { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        SeriesQ {
            coeffs: coeffs.iter().map(|&c| Integer::from(c)).collect(),
        }
    }

    /// Builds a series from sparse `(exponent, coefficient)` terms, summing
    /// repeated exponents and dropping those at or beyond `order`.
    pub fn from_sparse<I>(terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            if e < order {
                s.coeffs[e] += c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Integer> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded {
            requested: n,
            order: self.order(),
        })
    }

    pub fn coeff_i64(&self, n: usize) -> Option<i64> {
        self.coeffs.get(n).and_then(|c| c.to_i64())
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first coefficient where `self` and `other` differ on their
    /// common order.
    pub fn first_mismatch(&self, other: &SeriesQ) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn agrees_with(&self, other: &SeriesQ) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// Returns `Ok(())` when the two series agree on the overlap, otherwise an
    /// [`Error::IdentityMismatch`] labelled `label`.
    pub fn check_identity(&self, other: &SeriesQ, label: &str) -> Result<()> {
        match self.first_mismatch(other) {
            None => Ok(()),
            Some(index) => Err(Error::IdentityMismatch {
                label: label.to_string(),
                index,
            }),
        }
    }

    pub fn add(&self, other: &SeriesQ) -> SeriesQ {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Integer::from(a + b))
            .collect();
        SeriesQ { coeffs }
    }

    pub fn sub(&self, other: &SeriesQ) -> SeriesQ {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Integer::from(a - b))
            .collect();
        SeriesQ { coeffs }
    }

    pub fn neg(&self) -> SeriesQ {
        SeriesQ {
            coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> SeriesQ {
        SeriesQ {
            coeffs: self.coeffs.iter().map(|c| Integer::from(c * k)).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order. Zero coefficients of the
    /// left factor are skipped, so sparse-times-dense costs only the sparse
    /// support.
    pub fn mul(&self, other: &SeriesQ) -> SeriesQ {
        let order = self.order().min(other.order());
        let (sparse, dense) = if self.support_len() <= other.support_len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![Integer::new(); order];
        for (i, a) in sparse.coeffs[..order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out[i..].iter_mut().zip(&dense.coeffs) {
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        SeriesQ { coeffs: out }
    }

    fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn inv(&self) -> Result<SeriesQ> {
        let order = self.order();
        if order == 0 {
            return Ok(SeriesQ::zero(0));
        }
        let c0 = self.coeffs[0].to_i32();
        let sign: i32 = match c0 {
            Some(1) => 1,
            Some(-1) => -1,
            _ => return Err(Error::NonUnitConstantTerm(self.coeffs[0].to_string())),
        };
        let support: Vec<(usize, &Integer)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out: Vec<Integer> = Vec::with_capacity(order);
        out.push(Integer::from(sign));
        let mut acc = Integer::new();
        for n in 1..order {
            acc.assign(0);
            for &(k, a) in &support {
                if k > n {
                    break;
                }
                acc += a * &out[n - k];
            }
            // c0 * b_n = -acc, and c0 = 1/c0 for a unit
            acc *= -sign;
            out.push(acc.clone());
        }
        Ok(SeriesQ { coeffs: out })
    }

    /// The substitution `q -> -q`.
    pub fn negate_q(&self) -> SeriesQ {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n % 2 == 1 {
                    Integer::from(-c)
                } else {
                    c.clone()
                }
            })
            .collect();
        SeriesQ { coeffs }
    }

    /// Coefficients at `stride*n + offset`, re-indexed by `n`.
    pub fn subseq(&self, stride: usize, offset: usize) -> Result<SeriesQ> {
        if stride == 0 || offset >= stride {
            return Err(Error::Precondition(format!(
                "subsequence needs 0 <= offset < stride, got stride {stride}, offset {offset}"
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .skip(offset)
            .step_by(stride)
            .cloned()
            .collect();
        Ok(SeriesQ { coeffs })
    }

    /// The substitution `q -> q^k`, truncated to `order`.
    pub fn dilate(&self, k: usize, order: usize) -> SeriesQ {
        assert!(k >= 1, "dilation factor must be positive");
        let mut out = SeriesQ::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            let e = n * k;
            if e >= order {
                break;
            }
            out.coeffs[e].assign(c);
        }
        // from q^{k*order} on the dilated series is unknown
        out.truncate(order.min(self.order() * k))
    }

    /// Multiplication by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> SeriesQ {
        let order = self.order();
        let mut out = SeriesQ::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            if n + k >= order {
                break;
            }
            out.coeffs[n + k].assign(c);
        }
        out
    }

    /// In-place multiplication by `1 - sign*q^e`, `e >= 1`.
    pub fn mul_binomial(&mut self, sign: Sign, e: usize) {
        assert!(e >= 1);
        let order = self.order();
        for n in (e..order).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            match sign {
                Sign::Minus => hi[0] += &lo[n - e],
                Sign::Plus => hi[0] -= &lo[n - e],
            }
        }
    }

    /// In-place division by `1 - sign*q^e`, `e >= 1`.
    pub fn div_binomial(&mut self, sign: Sign, e: usize) {
        assert!(e >= 1);
        let order = self.order();
        for n in e..order {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            match sign {
                Sign::Plus => hi[0] += &lo[n - e],
                Sign::Minus => hi[0] -= &lo[n - e],
            }
        }
    }

    /// Division by `1 - q`: running partial sums.
    pub fn div_one_minus_q(&self) -> SeriesQ {
        let mut s = self.clone();
        s.div_binomial(Sign::Plus, 1);
        s
    }

    /// Exact division by a small integer; fails when some coefficient is not
    /// divisible, which for identity-derived series means a transcription bug.
    pub fn div_exact(&self, d: i64, label: &str) -> Result<SeriesQ> {
        let d = Integer::from(d);
        let mut coeffs = Vec::with_capacity(self.order());
        for (index, c) in self.coeffs.iter().enumerate() {
            if !c.is_divisible(&d) {
                return Err(Error::IdentityMismatch {
                    label: format!("{label}: coefficient not divisible by {d}"),
                    index,
                });
            }
            coeffs.push(Integer::from(c.div_exact_ref(&d)));
        }
        Ok(SeriesQ { coeffs })
    }

    /// First index where the sequence decreases, if any.
    pub fn first_decrease(&self) -> Option<usize> {
        self.coeffs.windows(2).position(|w| w[1] < w[0])
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.first_decrease().is_none()
    }
}

impl fmt::Debug for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesQ[{}](", self.order())?;
        for (i, c) in self.coeffs.iter().take(12).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        if self.order() > 12 {
            write!(f, ", ...")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < 0;
            let abs = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match n {
                0 => write!(f, "{abs}")?,
                _ if abs == 1 => {}
                _ => write!(f, "{abs}*")?,
            }
            match n {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&SeriesQ> for &SeriesQ {
            type Output = SeriesQ;
            fn $method(self, rhs: &SeriesQ) -> SeriesQ {
                SeriesQ::$method(self, rhs)
            }
        }
        impl $trait<SeriesQ> for SeriesQ {
            type Output = SeriesQ;
            fn $method(self, rhs: SeriesQ) -> SeriesQ {
                SeriesQ::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &SeriesQ {
    type Output = SeriesQ;
    fn neg(self) -> SeriesQ {
        SeriesQ::neg(self)
    }
}
