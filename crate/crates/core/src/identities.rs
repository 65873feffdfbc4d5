//! The exact identity suite: every alternative representation of a q-series
//! used anywhere in the crate, compared coefficient by coefficient.

use serde::Serialize;

use crate::catalog::{
    build, q_minus_q_direct, q_minus_q_eta_quotient, q_minus_q_split, split_parity_subsequences,
};
use crate::error::Result;
use crate::family::FamilyCode;
use crate::par;
use crate::series::{
    hecke_phi0, hecke_phi1, hecke_sigma, mock_f, mock_f_appell, mock_f_appell_shifted,
    pentagonal_signed, phi_series, pochhammer, sigma_series, PochSpec, SeriesQ, Sign,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub label: String,
    pub order: usize,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

fn compare(label: impl Into<String>, lhs: &SeriesQ, rhs: &SeriesQ) -> IdentityRow {
    let first_mismatch = lhs.first_mismatch(rhs);
    IdentityRow {
        label: label.into(),
        order: lhs.order().min(rhs.order()),
        holds: first_mismatch.is_none() && lhs.order() == rhs.order(),
        first_mismatch,
    }
}

fn poch(sign: Sign, base: usize, step: usize, order: usize) -> SeriesQ {
    pochhammer(PochSpec::infinite(sign, base, step), order)
}

type Check = Box<dyn Fn(usize) -> Result<Vec<IdentityRow>> + Send + Sync>;

fn checks() -> Vec<Check> {
    vec![
        Box::new(|n| {
            Ok(vec![compare(
                "sigma: Eulerian = Hecke double sum",
                &sigma_series(n),
                &hecke_sigma(n),
            )])
        }),
        Box::new(|n| {
            let half = n.div_ceil(2);
            let split = &hecke_phi0(half).dilate(2, n) + &hecke_phi1(half).dilate(2, n).shift(1);
            Ok(vec![compare(
                "phi(q) = Phi_0(q^2) + q Phi_1(q^2)",
                &phi_series(n),
                &split,
            )])
        }),
        Box::new(|n| {
            Ok(vec![
                compare("f: Eulerian = Appell form", &mock_f(n), &mock_f_appell(n)),
                compare(
                    "f: Eulerian = shifted Appell form",
                    &mock_f(n),
                    &mock_f_appell_shifted(n),
                ),
            ])
        }),
        Box::new(|n| {
            Ok(vec![compare(
                "pentagonal sum = (q;q)_inf",
                &pentagonal_signed(n),
                &poch(Sign::Plus, 1, 1, n),
            )])
        }),
        Box::new(|n| {
            let direct = q_minus_q_direct(n);
            Ok(vec![
                compare(
                    "(q;-q)_inf = (q;q^2)_inf (-q^2;q^2)_inf",
                    &direct,
                    &q_minus_q_split(n),
                ),
                compare(
                    "(q;-q)_inf = (q;q)(q^4;q^4)/(q^2;q^2)^2",
                    &direct,
                    &q_minus_q_eta_quotient(n),
                ),
            ])
        }),
        Box::new(|n| {
            let lhs = &poch(Sign::Minus, 2, 2, n) * &poch(Sign::Plus, 2, 2, n);
            Ok(vec![compare(
                "(-q^2;q^2)_inf (q^2;q^2)_inf = (q^4;q^4)_inf",
                &lhs,
                &poch(Sign::Plus, 4, 4, n),
            )])
        }),
        Box::new(|n| {
            let mut rows = Vec::new();
            for family in [FamilyCode::EU_OD, FamilyCode::ED_OD] {
                let label = format!("{family}: parity halves match their closed forms");
                let holds = split_parity_subsequences(family, n).is_ok();
                rows.push(IdentityRow {
                    label,
                    order: n,
                    holds,
                    first_mismatch: None,
                });
            }
            Ok(rows)
        }),
        Box::new(|n| {
            let mut rows = Vec::new();
            for family in FamilyCode::ALL {
                let fs = build(family, n)?;
                for (name, alt) in &fs.alternates {
                    rows.push(compare(
                        format!("{family}: primary = {name}"),
                        &fs.primary,
                        alt,
                    ));
                }
            }
            Ok(rows)
        }),
    ]
}

/// Runs every identity to `order`; the checks run in parallel and the rows
/// come back in a fixed order.
pub fn identity_suite(order: usize) -> Result<Vec<IdentityRow>> {
    let checks = checks();
    let results = par::map(&checks, |c| c(order));
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_holds_at_moderate_order() {
        let rows = identity_suite(120).unwrap();
        assert!(rows.len() >= 14);
        for r in &rows {
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = SeriesQ::from_i64s(&[1, 2, 3, 4]);
        let b = SeriesQ::from_i64s(&[1, 2, 0, 4]);
        let row = compare("x", &a, &b);
        assert!(!row.holds);
        assert_eq!(row.first_mismatch, Some(2));
    }
}
