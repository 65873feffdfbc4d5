//! Mock theta functions and Hecke-type double sums.
//!
//! The Eulerian sums are accumulated incrementally: the running denominator
//! `1/(-q;q)_n` is updated by one binomial division per step, so a series of
//! order `N` costs `O(N sqrt N)` coefficient operations.

use super::construct::{pochhammer, PochSpec, Sign};
use super::SeriesQ;

/// Third-order mock theta function `f(q) = sum q^{n^2} / (-q;q)_n^2`.
pub fn mock_f(order: usize) -> SeriesQ {
    let mut acc = SeriesQ::zero(order);
    let mut denom = SeriesQ::one(order);
    for n in 0.. {
        let lead = n * n;
        if lead >= order {
            break;
        }
        if n > 0 {
            denom.div_binomial(Sign::Minus, n);
            denom.div_binomial(Sign::Minus, n);
        }
        acc = &acc + &denom.shift(lead);
    }
    acc
}

/// Ramanujan's `sigma(q) = sum q^{n(n+1)/2} / (-q;q)_n`.
pub fn sigma_series(order: usize) -> SeriesQ {
    let mut acc = SeriesQ::zero(order);
    let mut denom = SeriesQ::one(order);
    for n in 0.. {
        let lead = n * (n + 1) / 2;
        if lead >= order {
            break;
        }
        if n > 0 {
            denom.div_binomial(Sign::Minus, n);
        }
        acc = &acc + &denom.shift(lead);
    }
    acc
}

/// Third-order mock theta function `phi(q) = sum q^{n^2} / (-q^2;q^2)_n`.
pub fn phi_series(order: usize) -> SeriesQ {
    let mut acc = SeriesQ::zero(order);
    let mut denom = SeriesQ::one(order);
    for n in 0.. {
        let lead = n * n;
        if lead >= order {
            break;
        }
        if n > 0 {
            denom.div_binomial(Sign::Minus, 2 * n);
        }
        acc = &acc + &denom.shift(lead);
    }
    acc
}

/// Twice the Appell-type sum `sum_{n in Z} (-1)^n q^{e(n)} / (1 + q^n)`.
///
/// The `n = 0` summand is `1/2`, so doubling keeps every coefficient integral.
/// For `n = -m < 0`, `1/(1 + q^{-m}) = q^m/(1 + q^m)`, which moves the
/// summand to exponent `e(-m) + m`.
fn doubled_appell_sum(exponent: impl Fn(i64) -> i64, order: usize) -> SeriesQ {
    let mut acc = SeriesQ::constant(1, order);
    let order_i = order as i64;
    for m in 1i64.. {
        let pos = exponent(m);
        let neg = exponent(-m) + m;
        assert!(
            pos >= 0 && neg >= 0,
            "Appell summand with negative exponent"
        );
        if pos >= order_i && neg >= order_i {
            break;
        }
        let sign = if m % 2 == 0 { 2 } else { -2 };
        for e in [pos, neg] {
            if e < order_i {
                let mut term = SeriesQ::monomial(e as usize, sign, order);
                term.div_binomial(Sign::Minus, m as usize);
                acc = &acc + &term;
            }
        }
    }
    acc
}

/// `f(q) = (2/(q;q)_inf) sum_{n in Z} (-1)^n q^{n(3n+1)/2} / (1 + q^n)`.
pub fn mock_f_appell(order: usize) -> SeriesQ {
    let sum = doubled_appell_sum(|n| n * (3 * n + 1) / 2, order);
    let euler_inv = pochhammer(PochSpec::infinite(Sign::Plus, 1, 1), order)
        .inv()
        .expect("(q;q)_inf has unit constant term");
    &sum * &euler_inv
}

/// `f(q) = 2 - (2/(q;q)_inf) sum_{n in Z} (-1)^n q^{3n(n+1)/2} / (1 + q^n)`,
/// with the `n = 0` summand read as `1/2`.
pub fn mock_f_appell_shifted(order: usize) -> SeriesQ {
    let sum = doubled_appell_sum(|n| 3 * n * (n + 1) / 2, order);
    let euler_inv = pochhammer(PochSpec::infinite(Sign::Plus, 1, 1), order)
        .inv()
        .expect("(q;q)_inf has unit constant term");
    &SeriesQ::constant(2, order) - &(&sum * &euler_inv)
}

/// Hecke-type form
/// `sigma(q) = sum_{n >= 0, |j| <= n} (-1)^{n+j} (1 - q^{2n+1}) q^{n(3n+1)/2 - j^2}`.
pub fn hecke_sigma(order: usize) -> SeriesQ {
    let mut terms = Vec::new();
    for n in 0usize.. {
        // smallest exponent over j is at |j| = n
        if n * (n + 1) / 2 >= order {
            break;
        }
        terms.extend(hecke_sigma_outer(n));
    }
    SeriesQ::from_sparse(terms, order)
}

/// Sparse terms of the outer summand `n` of [`hecke_sigma`].
fn hecke_sigma_outer(n: usize) -> Vec<(usize, i64)> {
    let base = n * (3 * n + 1) / 2;
    let mut terms = Vec::with_capacity(4 * n + 2);
    for j in -(n as i64)..=(n as i64) {
        let e = base - (j * j) as usize;
        let sign = if (n as i64 + j) % 2 == 0 { 1 } else { -1 };
        terms.push((e, sign));
        terms.push((e + 2 * n + 1, -sign));
    }
    terms
}

fn hecke_phi(order: usize, linear: usize, tail: impl Fn(usize) -> usize) -> SeriesQ {
    let mut terms = Vec::new();
    for n in 0usize.. {
        let base = 4 * n * n + linear * n;
        if base - n * n >= order {
            break;
        }
        for j in -(n as i64)..=(n as i64) {
            let e = base - (j * j) as usize;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            terms.push((e, sign));
            terms.push((e + tail(n), -sign));
        }
    }
    let double_sum = SeriesQ::from_sparse(terms, order);
    let inv = pochhammer(PochSpec::infinite(Sign::Plus, 2, 2), order)
        .inv()
        .expect("(q^2;q^2)_inf has unit constant term");
    &double_sum * &inv
}

/// `Phi_0(q) = (1/(q^2;q^2)_inf) sum_{n>=0, |j|<=n} (-1)^j q^{4n^2+n-j^2} (1 - q^{6n+3})`.
pub fn hecke_phi0(order: usize) -> SeriesQ {
    hecke_phi(order, 1, |n| 6 * n + 3)
}

/// `Phi_1(q) = (1/(q^2;q^2)_inf) sum_{n>=0, |j|<=n} (-1)^j q^{4n^2+3n-j^2} (1 - q^{2n+1})`.
pub fn hecke_phi1(order: usize) -> SeriesQ {
    hecke_phi(order, 3, |n| 2 * n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: expand each Eulerian summand with a finite
    /// product and a generic series inverse.
    fn eulerian_oracle(
        order: usize,
        lead: impl Fn(usize) -> usize,
        denom: impl Fn(usize) -> SeriesQ,
    ) -> SeriesQ {
        let mut acc = SeriesQ::zero(order);
        for n in 0.. {
            if lead(n) >= order {
                break;
            }
            let d = denom(n).inv().unwrap();
            acc = &acc + &d.shift(lead(n));
        }
        acc
    }

    #[test]
    fn f_first_terms() {
        let f = mock_f(8);
        assert_eq!(f, SeriesQ::from_i64s(&[1, 1, -2, 3, -3, 3, -5, 7]));
    }

    #[test]
    fn f_matches_finite_product_oracle() {
        let n = 150;
        let oracle = eulerian_oracle(
            n,
            |k| k * k,
            |k| {
                let p = pochhammer(PochSpec::finite(Sign::Minus, 1, 1, k), n);
                &p * &p
            },
        );
        assert_eq!(mock_f(n), oracle);
    }

    #[test]
    fn sigma_first_terms_and_oracle() {
        let s = sigma_series(4);
        assert_eq!(s, SeriesQ::from_i64s(&[1, 1, -1, 2]));
        let n = 150;
        let oracle = eulerian_oracle(
            n,
            |k| k * (k + 1) / 2,
            |k| pochhammer(PochSpec::finite(Sign::Minus, 1, 1, k), n),
        );
        assert_eq!(sigma_series(n), oracle);
    }

    #[test]
    fn phi_matches_oracle() {
        let n = 150;
        let oracle = eulerian_oracle(
            n,
            |k| k * k,
            |k| pochhammer(PochSpec::finite(Sign::Minus, 2, 2, k), n),
        );
        assert_eq!(phi_series(n), oracle);
        assert_eq!(phi_series(6), SeriesQ::from_i64s(&[1, 1, 0, -1, 1, 1]));
    }

    #[test]
    fn f_appell_forms_agree_with_eulerian() {
        let n = 300;
        let f = mock_f(n);
        assert_eq!(mock_f_appell(n), f);
        assert_eq!(mock_f_appell_shifted(n), f);
    }

    #[test]
    fn hecke_sigma_matches_eulerian() {
        assert_eq!(hecke_sigma(500), sigma_series(500));
    }

    #[test]
    fn hecke_sigma_first_outer_term() {
        assert_eq!(
            SeriesQ::from_sparse(hecke_sigma_outer(0), 10),
            SeriesQ::from_sparse([(0, 1), (1, -1)], 10)
        );
    }

    #[test]
    fn phi_decomposes_into_hecke_parts() {
        let n = 400;
        let half = n / 2;
        let even = hecke_phi0(half).dilate(2, n);
        let odd = hecke_phi1(half).dilate(2, n).shift(1);
        assert_eq!(&even + &odd, phi_series(n));
    }
}
