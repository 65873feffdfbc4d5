//! Bernoulli numbers and polynomials in exact rational arithmetic.

use rug::{Complex, Integer, Rational};

/// `B_0 .. B_n` with `B_1 = -1/2`, from `sum_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for m in 1..=n {
        let mut s = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, k as u32));
            s += Rational::from(c * bk.numer()) / bk.denom();
        }
        b.push(-s / (m as u32 + 1));
    }
    b
}

/// `B_n(x) = sum_k C(n, k) B_{n-k} x^k`, with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliPoly {
    /// Coefficient of `x^k` at index `k`.
    coeffs: Vec<Rational>,
}

impl BernoulliPoly {
    pub fn new(n: usize) -> Self {
        let b = bernoulli_numbers(n);
        let coeffs = (0..=n)
            .map(|k| {
                let c = Integer::from(Integer::binomial_u(n as u32, k as u32));
                Rational::from(c) * &b[n - k]
            })
            .collect();
        BernoulliPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::new(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: &Complex) -> Complex {
        let prec = x.prec();
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::with_val(prec, 0), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from(c * k as u32))
            .collect()
    }
}

/// `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    BernoulliPoly::new(n).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn numbers() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[0], 1);
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[3], 0);
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
        assert_eq!(b[8], r(-1, 30));
    }

    #[test]
    fn small_polys() {
        assert_eq!(bernoulli_poly(1, &r(5, 24)), r(-7, 24));
        assert_eq!(bernoulli_poly(2, &r(0, 1)), r(1, 6));
        assert_eq!(bernoulli_poly(0, &r(3, 7)), 1);
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(
            BernoulliPoly::new(2).coeffs(),
            &[r(1, 6), r(-1, 1), r(1, 1)]
        );
    }

    proptest! {
        #[test]
        fn derivative_rule(n in 1usize..14) {
            let d = BernoulliPoly::new(n).derivative();
            let lower = BernoulliPoly::new(n - 1);
            let scaled: Vec<Rational> = lower.coeffs().iter().map(|c| Rational::from(c * n as u32)).collect();
            prop_assert_eq!(d, scaled);
        }

        #[test]
        fn difference_rule(n in 1usize..12, p in -50i64..50, q in 1i64..20) {
            // B_n(x+1) - B_n(x) = n x^{n-1}
            let x = r(p, q);
            let poly = BernoulliPoly::new(n);
            let diff = poly.eval(&(x.clone() + 1u32)) - poly.eval(&x);
            let expected = (1..n).fold(Rational::from(1), |acc, _| acc * &x) * n as u32;
            prop_assert_eq!(diff, expected);
        }

        #[test]
        fn reflection(n in 0usize..12, p in 0i64..24) {
            // B_n(1-x) = (-1)^n B_n(x)
            let x = r(p, 24);
            let poly = BernoulliPoly::new(n);
            let lhs = poly.eval(&(Rational::from(1) - x.clone()));
            let rhs = if n % 2 == 0 { poly.eval(&x) } else { -poly.eval(&x) };
            prop_assert_eq!(lhs, rhs);
        }
    }
}
