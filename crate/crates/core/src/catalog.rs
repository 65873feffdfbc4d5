//! Generating functions of the eight families, built from their q-series
//! identities, with every alternative representation cross-checked.
//!
//! Identities stated at `-q` are transcribed literally and then pulled back
//! with [`SeriesQ::negate_q`].

use std::collections::BTreeMap;

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilyCode;
use crate::par;
use crate::series::{
    mock_f, mock_f_appell_shifted, pentagonal_signed, pochhammer, sigma_series, theta_gap,
    PochSpec, SeriesQ, Sign, ThetaRange,
};

/// A family's generating function, with any other representations that were
/// built and verified alongside it.
#[derive(Debug, Clone)]
pub struct FamilySeries {
    pub family: FamilyCode,
    pub primary: SeriesQ,
    pub alternates: Vec<(String, SeriesQ)>,
}

impl FamilySeries {
    pub fn order(&self) -> usize {
        self.primary.order()
    }

    pub fn coefficient(&self, n: usize) -> Result<&Integer> {
        self.primary.coeff(n)
    }
}

fn poch(sign: Sign, base: usize, step: usize, order: usize) -> SeriesQ {
    pochhammer(PochSpec::infinite(sign, base, step), order)
}

fn inv(s: &SeriesQ) -> SeriesQ {
    s.inv().expect("q-Pochhammer products have constant term 1")
}

/// `(q;-q)_inf = (1-q)(1+q^2)(1-q^3)...`, factor by factor.
pub fn q_minus_q_direct(order: usize) -> SeriesQ {
    let mut s = SeriesQ::one(order);
    for e in 1..order {
        s.mul_binomial(if e % 2 == 1 { Sign::Plus } else { Sign::Minus }, e);
    }
    s
}

/// `(q;-q)_inf` as `(q;q^2)_inf (-q^2;q^2)_inf`.
pub fn q_minus_q_split(order: usize) -> SeriesQ {
    &poch(Sign::Plus, 1, 2, order) * &poch(Sign::Minus, 2, 2, order)
}

/// `(q;-q)_inf` as `(q;q)_inf (q^4;q^4)_inf / (q^2;q^2)_inf^2`.
pub fn q_minus_q_eta_quotient(order: usize) -> SeriesQ {
    let q2 = inv(&poch(Sign::Plus, 2, 2, order));
    &(&(&poch(Sign::Plus, 1, 1, order) * &poch(Sign::Plus, 4, 4, order)) * &q2) * &q2
}

fn build_eu_ou(order: usize) -> Result<FamilySeries> {
    let primary = inv(&poch(Sign::Plus, 2, 2, order)).div_one_minus_q();
    Ok(FamilySeries {
        family: FamilyCode::EU_OU,
        primary,
        alternates: Vec::new(),
    })
}

fn build_eu_od(order: usize) -> Result<FamilySeries> {
    let q2_inv = inv(&poch(Sign::Plus, 2, 2, order));
    let primary = &q2_inv * &theta_gap(1, 0, ThetaRange::OneSided, order)?;
    // G_ev(q) + G_od(q) with both halves in closed form
    let g_ev = &q2_inv * &theta_gap(4, 0, ThetaRange::OneSided, order)?;
    let g_od = &q2_inv
        * &(&theta_gap(1, 0, ThetaRange::OneSided, order)?
            - &theta_gap(4, 0, ThetaRange::OneSided, order)?);
    Ok(FamilySeries {
        family: FamilyCode::EU_OD,
        primary,
        alternates: vec![("G_ev + G_od".into(), &g_ev + &g_od)],
    })
}

/// `sum_{n >= j >= 1} (-1)^{n+j} (1 - q^{2n+1}) q^{n(3n+1)/2 - j^2}`.
fn od_eu_double_sum(order: usize) -> SeriesQ {
    let mut terms = Vec::new();
    for n in 1usize.. {
        if n * (n + 1) / 2 >= order {
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
    SeriesQ::from_sparse(terms, order)
}

fn build_od_eu(order: usize) -> Result<FamilySeries> {
    let q2_inv = inv(&poch(Sign::Plus, 2, 2, order));
    // F(-q) = (1/(q^2;q^2)) (1 - double sum)
    let at_minus_q = &q2_inv * &(&SeriesQ::one(order) - &od_eu_double_sum(order));
    let primary = at_minus_q.negate_q();
    // F(q) = (1/(q^2;q^2)) (1 - sigma(-q)/2 + (-q;-q)/2)
    let numerator = &(&SeriesQ::constant(2, order) - &sigma_series(order).negate_q())
        + &pentagonal_signed(order).negate_q();
    let sigma_form = (&q2_inv * &numerator).div_exact(2, "od^eu sigma form")?;
    Ok(FamilySeries {
        family: FamilyCode::OD_EU,
        primary,
        alternates: vec![("sigma form".into(), sigma_form)],
    })
}

/// `sum_{n >= 0} (1 - q^n) q^{n(3n-1)/2}`.
fn ed_ou_sum_at_minus_q(order: usize) -> SeriesQ {
    let mut terms = Vec::new();
    for n in 1usize.. {
        let e = n * (3 * n - 1) / 2;
        if e >= order {
            break;
        }
        terms.push((e, 1));
        terms.push((e + n, -1));
    }
    SeriesQ::from_sparse(terms, order)
}

/// `sum_{n >= 0} (1 - (-1)^n q^n) (-1)^{n(3n-1)/2} q^{n(3n-1)/2}`.
fn ed_ou_sum(order: usize) -> SeriesQ {
    let mut terms = Vec::new();
    for n in 1usize.. {
        let e = n * (3 * n - 1) / 2;
        if e >= order {
            break;
        }
        let s = if e % 2 == 0 { 1 } else { -1 };
        let t = if n % 2 == 0 { 1 } else { -1 };
        terms.push((e, s));
        terms.push((e + n, -s * t));
    }
    SeriesQ::from_sparse(terms, order)
}

fn build_ed_ou(order: usize) -> Result<FamilySeries> {
    // F(-q) = ((-q;q) + 1 - sum) / (2 (-q;q^2))
    let inner =
        &(&poch(Sign::Minus, 1, 1, order) + &SeriesQ::one(order)) - &ed_ou_sum_at_minus_q(order);
    let at_minus_q =
        (&inner * &inv(&poch(Sign::Minus, 1, 2, order))).div_exact(2, "ed^ou at -q")?;
    let primary = at_minus_q.negate_q();
    // F(q) = ((q;-q) + 1 - sum') / (2 (q;q^2))
    let inner_q = &(&q_minus_q_direct(order) + &SeriesQ::one(order)) - &ed_ou_sum(order);
    let q_form = (&inner_q * &inv(&poch(Sign::Plus, 1, 2, order))).div_exact(2, "ed^ou q form")?;
    Ok(FamilySeries {
        family: FamilyCode::ED_OU,
        primary,
        alternates: vec![("q form".into(), q_form)],
    })
}

fn build_ed_od(order: usize) -> Result<FamilySeries> {
    let minus_q_q2 = poch(Sign::Minus, 1, 2, order);
    let minus_q2_q2 = poch(Sign::Minus, 2, 2, order);
    let primary = (&minus_q_q2 - &minus_q2_q2.shift(1)).div_one_minus_q();
    let (g_ev, g_od) = ed_od_halves(order);
    Ok(FamilySeries {
        family: FamilyCode::ED_OD,
        primary,
        alternates: vec![("G_ev + G_od".into(), &g_ev + &g_od)],
    })
}

/// `G_ev(q)` and `G_od(q)` for ed^od from their four-term closed forms.
fn ed_od_halves(order: usize) -> (SeriesQ, SeriesQ) {
    let minus_q_q2 = poch(Sign::Minus, 1, 2, order);
    let q_q2 = poch(Sign::Plus, 1, 2, order);
    let q_minus_q2_q2 = poch(Sign::Minus, 2, 2, order).shift(1);
    let over_1mq = (&minus_q_q2 - &q_minus_q2_q2).div_one_minus_q();
    let mut over_1pq = &q_q2 + &q_minus_q2_q2;
    over_1pq.div_binomial(Sign::Minus, 1);
    let g_ev = (&over_1mq + &over_1pq)
        .div_exact(2, "ed^od G_ev")
        .expect("F(q) + F(-q) has even coefficients");
    let g_od = (&over_1mq - &over_1pq)
        .div_exact(2, "ed^od G_od")
        .expect("F(q) - F(-q) has even coefficients");
    (g_ev, g_od)
}

fn build_ou_eu(order: usize) -> Result<FamilySeries> {
    let a = inv(&poch(Sign::Plus, 1, 2, order));
    let b = inv(&poch(Sign::Plus, 2, 2, order)).shift(1);
    Ok(FamilySeries {
        family: FamilyCode::OU_EU,
        primary: (&a - &b).div_one_minus_q(),
        alternates: Vec::new(),
    })
}

fn build_ou_ed(order: usize) -> Result<FamilySeries> {
    let minus_q2_q2 = poch(Sign::Minus, 2, 2, order);
    // ((-q^2;q^2)/2) (2 - f(-q) + 1/(q;-q))
    let inner = &(&SeriesQ::constant(2, order) - &mock_f(order).negate_q())
        + &inv(&q_minus_q_direct(order));
    let primary = (&minus_q2_q2 * &inner).div_exact(2, "ou^ed f form")?;
    // F(-q) = (-q^2;q^2)/(2(-q;q)) + ((-q^2;q^2)/(q;q)) sum_Z (-1)^n q^{3n(n+1)/2}/(1+q^n);
    // the Appell sum is (2 - f)(q;q)/2 with f in its shifted Appell form
    let appell_over_euler = &SeriesQ::constant(2, order) - &mock_f_appell_shifted(order);
    let doubled = &(&minus_q2_q2 * &inv(&poch(Sign::Minus, 1, 1, order)))
        + &(&minus_q2_q2 * &appell_over_euler);
    let at_minus_q = doubled.div_exact(2, "ou^ed at -q")?;
    Ok(FamilySeries {
        family: FamilyCode::OU_ED,
        primary,
        alternates: vec![("Appell form".into(), at_minus_q.negate_q())],
    })
}

fn build_od_ed(order: usize) -> Result<FamilySeries> {
    let minus_q2_q2 = poch(Sign::Minus, 2, 2, order);
    let mut one_plus_q = minus_q2_q2.clone();
    one_plus_q.mul_binomial(Sign::Minus, 1);
    let primary = (&one_plus_q - &poch(Sign::Minus, 1, 2, order).shift(1)).div_one_minus_q();
    Ok(FamilySeries {
        family: FamilyCode::OD_ED,
        primary,
        alternates: Vec::new(),
    })
}

/// Builds `F_family(q)` to `order`, verifying every alternative form.
pub fn build(family: FamilyCode, order: usize) -> Result<FamilySeries> {
    if order == 0 {
        return Err(Error::Precondition(
            "series order must be at least 1".into(),
        ));
    }
    let fs = match family {
        FamilyCode::EU_OU => build_eu_ou(order)?,
        FamilyCode::EU_OD => build_eu_od(order)?,
        FamilyCode::OD_EU => build_od_eu(order)?,
        FamilyCode::ED_OU => build_ed_ou(order)?,
        FamilyCode::ED_OD => build_ed_od(order)?,
        FamilyCode::OU_EU => build_ou_eu(order)?,
        FamilyCode::OU_ED => build_ou_ed(order)?,
        FamilyCode::OD_ED => build_od_ed(order)?,
        _ => unreachable!("FamilyCode only admits the eight constants"),
    };
    for (label, alt) in &fs.alternates {
        fs.primary
            .check_identity(alt, &format!("{family} {label}"))?;
    }
    if let Some(index) = fs.primary.coeffs().iter().position(|c| *c < 0) {
        return Err(Error::IdentityMismatch {
            label: format!("{family} has a negative coefficient"),
            index,
        });
    }
    Ok(fs)
}

/// Generating functions for several families, built in parallel.
#[derive(Debug, Clone)]
pub struct Catalog {
    order: usize,
    series: BTreeMap<FamilyCode, FamilySeries>,
}

impl Catalog {
    pub fn build(families: &[FamilyCode], order: usize) -> Result<Self> {
        let built = par::map(families, |&f| build(f, order));
        let mut series = BTreeMap::new();
        for fs in built {
            let fs = fs?;
            series.insert(fs.family, fs);
        }
        Ok(Catalog { order, series })
    }

    pub fn build_all(order: usize) -> Result<Self> {
        Self::build(&FamilyCode::ALL, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, family: FamilyCode) -> Result<&FamilySeries> {
        self.series
            .get(&family)
            .ok_or_else(|| Error::Precondition(format!("{family} not in catalog")))
    }

    pub fn series(&self, family: FamilyCode) -> Result<&SeriesQ> {
        Ok(&self.get(family)?.primary)
    }

    pub fn coefficient(&self, family: FamilyCode, n: usize) -> Result<&Integer> {
        self.get(family)?.coefficient(n)
    }

    pub fn families(&self) -> impl Iterator<Item = FamilyCode> + '_ {
        self.series.keys().copied()
    }
}

/// Families whose full coefficient sequence is not monotone; only their
/// even- and odd-indexed subsequences are.
pub fn has_parity_split(family: FamilyCode) -> bool {
    family == FamilyCode::EU_OD || family == FamilyCode::ED_OD
}

/// `(sum p(2n) q^n, sum p(2n+1) q^n)` for eu^od or ed^od, with the closed
/// forms of both halves checked.
pub fn split_parity_subsequences(family: FamilyCode, order: usize) -> Result<(SeriesQ, SeriesQ)> {
    if !has_parity_split(family) {
        return Err(Error::Precondition(format!(
            "{family} is monotone; parity split applies only to eu^od and ed^od"
        )));
    }
    let fs = build(family, order)?;
    let even = fs.primary.subseq(2, 0)?;
    let odd = fs.primary.subseq(2, 1)?;
    if family == FamilyCode::EU_OD {
        let half = even.order();
        let euler_inv = inv(&poch(Sign::Plus, 1, 1, half));
        let even_closed = &theta_gap(2, 0, ThetaRange::OneSided, half)? * &euler_inv;
        even.check_identity(&even_closed, "eu^od even half = sum q^{2n^2} / (q;q)")?;
        let odd_closed = &theta_gap(2, 2, ThetaRange::OneSided, half)? * &euler_inv;
        odd.check_identity(&odd_closed, "eu^od odd half = sum q^{2n^2+2n} / (q;q)")?;
    } else {
        let (g_ev, g_od) = ed_od_halves(order);
        even.check_identity(&g_ev.subseq(2, 0)?, "ed^od G_ev")?;
        odd.check_identity(&g_od.subseq(2, 1)?, "ed^od G_od")?;
        let vanishing = g_ev.subseq(2, 1)?;
        vanishing.check_identity(&SeriesQ::zero(vanishing.order()), "ed^od G_ev odd part")?;
    }
    Ok((even, odd))
}

/// Outcome of a monotonicity scan over one coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneRow {
    pub family: FamilyCode,
    /// `"full"`, `"even"` or `"odd"`.
    pub sequence: &'static str,
    pub checked_through: usize,
    pub weakly_increasing: bool,
    /// First `n` (in the original indexing) with `p(n) > p(n + stride)`.
    pub first_decrease: Option<usize>,
}

/// Checks the monotonicity statements: the full sequence for six families and
/// both stride-2 subsequences for eu^od and ed^od. Also scans the full
/// sequence for the two split families, where a decrease is expected.
pub fn monotonicity_report(catalog: &Catalog) -> Result<Vec<MonotoneRow>> {
    let mut rows = Vec::new();
    for family in catalog.families() {
        let s = catalog.series(family)?;
        let last = s.order() - 1;
        let first = s.first_decrease();
        rows.push(MonotoneRow {
            family,
            sequence: "full",
            checked_through: last,
            weakly_increasing: first.is_none(),
            first_decrease: first,
        });
        if has_parity_split(family) {
            for (offset, name) in [(0, "even"), (1, "odd")] {
                let sub = s.subseq(2, offset)?;
                let first = sub.first_decrease();
                rows.push(MonotoneRow {
                    family,
                    sequence: name,
                    checked_through: 2 * (sub.order() - 1) + offset,
                    weakly_increasing: first.is_none(),
                    first_decrease: first.map(|i| 2 * i + offset),
                });
            }
        }
    }
    Ok(rows)
}

/// The eight families ordered from smallest to largest count, as conjectured
/// for large `n`.
pub const CHAIN: [FamilyCode; 8] = [
    FamilyCode::ED_OD,
    FamilyCode::OD_ED,
    FamilyCode::OD_EU,
    FamilyCode::ED_OU,
    FamilyCode::EU_OD,
    FamilyCode::EU_OU,
    FamilyCode::OU_ED,
    FamilyCode::OU_EU,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub chain: Vec<FamilyCode>,
    pub checked_through: usize,
    /// Smallest `n0` such that the strict chain holds for every
    /// `n0 <= n <= checked_through`; `None` if it fails at `checked_through`.
    pub n0: Option<usize>,
    /// For each adjacent pair, the last `n` where the strict inequality fails.
    pub last_failure: Vec<(FamilyCode, FamilyCode, Option<usize>)>,
}

/// Scans `chain` (smallest first) against the catalog's exact coefficients.
pub fn inequality_chain(catalog: &Catalog, chain: &[FamilyCode]) -> Result<ChainReport> {
    let series: Vec<&SeriesQ> = chain
        .iter()
        .map(|&f| catalog.series(f))
        .collect::<Result<_>>()?;
    let top = catalog.order() - 1;
    let mut last_failure = Vec::new();
    for (w, pair) in series.windows(2).zip(chain.windows(2)) {
        let last = (0..=top)
            .rev()
            .find(|&n| w[0].coeffs()[n] >= w[1].coeffs()[n]);
        last_failure.push((pair[0], pair[1], last));
    }
    let worst = last_failure.iter().filter_map(|(_, _, l)| *l).max();
    let n0 = match worst {
        None => Some(0),
        Some(n) if n < top => Some(n + 1),
        Some(_) => None,
    };
    Ok(ChainReport {
        chain: chain.to_vec(),
        checked_through: top,
        n0,
        last_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn table(family: FamilyCode) -> Vec<i64> {
        let s = build(family, 19).unwrap().primary;
        (0..19).map(|n| s.coeff_i64(n).unwrap()).collect()
    }

    #[test]
    fn eu_ou_table() {
        assert_eq!(
            table(FamilyCode::EU_OU),
            [1, 1, 2, 2, 4, 4, 7, 7, 12, 12, 19, 19, 30, 30, 45, 45, 67, 67, 97]
        );
    }

    #[test]
    fn ou_ed_table() {
        assert_eq!(
            table(FamilyCode::OU_ED),
            [1, 1, 2, 3, 4, 5, 8, 10, 13, 16, 22, 26, 34, 41, 52, 62, 78, 91, 113]
        );
    }

    #[test]
    fn ed_ou_table() {
        assert_eq!(
            table(FamilyCode::ED_OU),
            [1, 1, 2, 2, 3, 4, 6, 6, 9, 10, 14, 16, 21, 23, 31, 34, 44, 49, 62]
        );
    }

    #[test]
    fn od_eu_from_minus_q() {
        assert_eq!(
            table(FamilyCode::OD_EU),
            [1, 1, 1, 2, 3, 3, 4, 5, 8, 8, 10, 12, 17, 17, 22, 26, 34, 35, 44]
        );
    }

    #[test]
    fn q_minus_q_representations_agree() {
        let n = 500;
        let direct = q_minus_q_direct(n);
        assert_eq!(direct, q_minus_q_split(n));
        assert_eq!(direct, q_minus_q_eta_quotient(n));
    }

    #[test]
    fn oracle_agreement_small() {
        for family in FamilyCode::ALL {
            let s = build(family, 25).unwrap().primary;
            for n in 0..25 {
                assert_eq!(
                    s.coeff_i64(n).unwrap() as u64,
                    oracle::count(family, n as u32),
                    "{family} n={n}"
                );
            }
        }
    }

    #[test]
    fn coefficient_bounds() {
        let fs = build(FamilyCode::ED_OD, 10).unwrap();
        assert_eq!(fs.coefficient(7).unwrap().to_i64(), Some(2));
        assert_eq!(fs.coefficient(0).unwrap().to_i64(), Some(1));
        assert!(matches!(
            fs.coefficient(10),
            Err(Error::OrderExceeded {
                requested: 10,
                order: 10
            })
        ));
    }

    #[test]
    fn eu_ou_at_100_matches_independent_counter() {
        // p_eu^ou(n) = sum_k #(even-part partitions of k) * #(odd-part partitions of n-k)
        // with every odd part above every even part; counted by a DP over the
        // boundary value instead of through the product identity.
        fn restricted(n: usize, parity: usize, min: usize, max: usize) -> Vec<u128> {
            // ways[s] = partitions of s into parts of given parity in [min, max]
            let mut ways = vec![0u128; n + 1];
            ways[0] = 1;
            let mut part = if min % 2 == parity { min } else { min + 1 };
            while part <= max {
                for s in part..=n {
                    ways[s] += ways[s - part];
                }
                part += 2;
            }
            ways
        }
        let n = 100;
        let odd_only = restricted(n, 1, 1, n)[n];
        let mut total = odd_only;
        // m = largest even part, the rest even parts <= m, odd parts > m
        for m in (2..=n).step_by(2) {
            let evens = restricted(n, 0, 2, m);
            let odds = restricted(n, 1, m + 1, n);
            for k in m..=n {
                let with_m = evens[k - m];
                total += with_m * odds[n - k];
            }
        }
        let fs = build(FamilyCode::EU_OU, n + 1).unwrap();
        assert_eq!(fs.coefficient(n).unwrap().to_u128(), Some(total));
    }

    #[test]
    fn split_rejects_monotone_family() {
        assert!(matches!(
            split_parity_subsequences(FamilyCode::EU_OU, 20),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn split_tables() {
        let (even, odd) = split_parity_subsequences(FamilyCode::EU_OD, 20).unwrap();
        let ev: Vec<i64> = (0..10).map(|i| even.coeff_i64(i).unwrap()).collect();
        let od: Vec<i64> = (0..9).map(|i| odd.coeff_i64(i).unwrap()).collect();
        assert_eq!(ev, [1, 1, 3, 4, 7, 10, 16, 22, 34, 46]);
        assert_eq!(od, [1, 1, 2, 3, 6, 8, 13, 18, 27]);
        let (_, odd) = split_parity_subsequences(FamilyCode::ED_OD, 20).unwrap();
        let od: Vec<i64> = (0..10).map(|i| odd.coeff_i64(i).unwrap()).collect();
        assert_eq!(od, [1, 1, 2, 2, 4, 5, 7, 9, 13, 16]);
    }

    #[test]
    fn chain_report_on_small_catalog() {
        let cat = Catalog::build_all(60).unwrap();
        let rep = inequality_chain(&cat, &CHAIN).unwrap();
        assert_eq!(rep.last_failure.len(), 7);
        // trivially true two-family chain
        let rep = inequality_chain(&cat, &[FamilyCode::ED_OD, FamilyCode::OU_EU]).unwrap();
        assert!(rep.n0.unwrap() <= 10);
    }
}
