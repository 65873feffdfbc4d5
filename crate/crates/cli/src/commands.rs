//! One function per subcommand. Each returns both renderings so the caller
//! only picks a format and a destination.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use parity_partitions::asymptotic::{
    deviation_decreasing, ingham_consistency, ratio_report, ConsistencyReport, RatioRow,
};
use parity_partitions::catalog::{
    has_parity_split, inequality_chain, monotonicity_report, Catalog, CHAIN,
};
use parity_partitions::export::{
    coefficient_table_csv, coefficient_table_json, json_document, rows_csv,
};
use parity_partitions::identities::{identity_suite, IdentityRow};
use parity_partitions::injections::{verify_all, InjectionReport};
use parity_partitions::precision::em::{
    aggregate_b1_sum, aggregate_eps_sum, aggregate_lattice, slope_1d, slope_2d, Gaussian, QuadForm,
    SlopeReport,
};
use parity_partitions::precision::lemmas::{
    genfun_asymptotic_check, lemma_report_on, Lemma, LemmaReport,
};
use parity_partitions::precision::{format_complex, Ray};
use parity_partitions::{oracle, par, FamilyCode};
use rug::Rational;
use serde::Serialize;

use crate::config::RunConfig;

pub type CmdResult = Result<Outcome, String>;

#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub csv: String,
    pub json: String,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn outcome<R: Serialize, D: Serialize>(
    command: &str,
    passed: bool,
    rows: &[R],
    data: &D,
) -> CmdResult {
    Ok(Outcome {
        passed,
        csv: rows_csv(rows).map_err(err)?,
        json: json_document(command, passed, data).map_err(err)?,
    })
}

pub fn coeffs(cfg: &RunConfig) -> CmdResult {
    let order = cfg.order_or(19);
    let families = cfg.families();
    let catalog = Catalog::build(&families, order).map_err(err)?;
    let json = coefficient_table_json(&catalog, &families, order).map_err(err)?;
    Ok(Outcome {
        passed: true,
        csv: coefficient_table_csv(&catalog, &families, order).map_err(err)?,
        json: json_document("coeffs", true, &json).map_err(err)?,
    })
}

#[derive(Debug, Serialize)]
struct OracleRow {
    family: FamilyCode,
    bound: u32,
    agree: bool,
    first_mismatch: Option<usize>,
}

pub fn oracle_check(cfg: &RunConfig) -> CmdResult {
    let bound = cfg.oracle_bound;
    let families = cfg.families();
    let catalog = Catalog::build(&families, bound as usize + 1).map_err(err)?;
    let mut rows = Vec::new();
    for &f in &families {
        let counts = oracle::counts(f, bound + 1);
        let series = catalog.series(f).map_err(err)?;
        let first_mismatch = counts
            .iter()
            .zip(series.coeffs())
            .position(|(c, s)| *s != *c);
        rows.push(OracleRow {
            family: f,
            bound,
            agree: first_mismatch.is_none(),
            first_mismatch,
        });
    }
    let passed = rows.iter().all(|r| r.agree);
    outcome("oracle-check", passed, &rows, &rows)
}

#[derive(Debug, Serialize)]
struct MonotoneLine {
    family: FamilyCode,
    sequence: &'static str,
    checked_through: usize,
    weakly_increasing: bool,
    first_decrease: Option<usize>,
    /// `p(n)` and `p(n + stride)` at the first decrease.
    count_at: Option<String>,
    count_next: Option<String>,
    expected_monotone: bool,
    passed: bool,
}

/// The decreases the split families must show: `p(4) = 3 > 2 = p(5)` for
/// eu^od and `p(6) = 3 > 2 = p(7)` for ed^od.
fn expected_decrease(family: FamilyCode) -> Option<(usize, u32, u32)> {
    match family {
        FamilyCode::EU_OD => Some((4, 3, 2)),
        FamilyCode::ED_OD => Some((6, 3, 2)),
        _ => None,
    }
}

pub fn monotone(cfg: &RunConfig) -> CmdResult {
    let order = cfg.order_or(2001);
    let families = cfg.families();
    let catalog = Catalog::build(&families, order).map_err(err)?;
    let mut lines = Vec::new();
    for row in monotonicity_report(&catalog).map_err(err)? {
        let series = catalog.series(row.family).map_err(err)?;
        let stride = if row.sequence == "full" { 1 } else { 2 };
        let counts = row.first_decrease.map(|n| {
            (
                series.coeffs()[n].clone(),
                series.coeffs()[n + stride].clone(),
            )
        });
        let expected_monotone = !(row.sequence == "full" && has_parity_split(row.family));
        let passed = if expected_monotone {
            row.weakly_increasing
        } else {
            match (expected_decrease(row.family), row.first_decrease, &counts) {
                (Some((n, a, b)), Some(m), Some((ca, cb))) => n == m && *ca == a && *cb == b,
                _ => false,
            }
        };
        lines.push(MonotoneLine {
            family: row.family,
            sequence: row.sequence,
            checked_through: row.checked_through,
            weakly_increasing: row.weakly_increasing,
            first_decrease: row.first_decrease,
            count_at: counts.as_ref().map(|c| c.0.to_string()),
            count_next: counts.as_ref().map(|c| c.1.to_string()),
            expected_monotone,
            passed,
        });
    }
    let passed = lines.iter().all(|l| l.passed);
    outcome("monotone", passed, &lines, &lines)
}

#[derive(Debug, Serialize)]
struct InjectionLine {
    map: String,
    family: FamilyCode,
    n: u32,
    shift: u32,
    domain_size: usize,
    well_defined: bool,
    injective: bool,
    witnesses: usize,
}

pub fn injections(cfg: &RunConfig, bound: u32) -> CmdResult {
    if bound > crate::config::ORACLE_CAP {
        return Err(format!(
            "--bound {bound} exceeds the cap of {}",
            crate::config::ORACLE_CAP
        ));
    }
    let families = cfg.families();
    let reports: Vec<InjectionReport> = verify_all(bound)
        .map_err(err)?
        .into_iter()
        .filter(|r| families.contains(&r.family))
        .collect();
    let lines: Vec<InjectionLine> = reports
        .iter()
        .map(|r| InjectionLine {
            map: r.map.clone(),
            family: r.family,
            n: r.n,
            shift: r.shift,
            domain_size: r.domain_size,
            well_defined: r.well_defined,
            injective: r.injective,
            witnesses: r.witnesses.len(),
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed());
    outcome("injections", passed, &lines, &reports)
}

#[derive(Debug, Serialize)]
struct AsymData {
    family: FamilyCode,
    deviation_decreasing: bool,
    rows: Vec<RatioRow>,
}

#[derive(Debug, Serialize)]
struct AsymLine {
    family: FamilyCode,
    n: u64,
    sequence: &'static str,
    exact: String,
    main_term: String,
    ratio: String,
    deviation: String,
}

pub fn asym(cfg: &RunConfig, ns: &[u64]) -> CmdResult {
    let Some(&top) = ns.iter().max() else {
        return Err("--n needs at least one value".into());
    };
    let families = cfg.families();
    let catalog = Catalog::build(
        &families,
        cfg.order_or(top as usize + 1).max(top as usize + 1),
    )
    .map_err(err)?;
    let mut data = Vec::new();
    let mut lines = Vec::new();
    for &f in &families {
        let rows = ratio_report(&catalog, f, ns, cfg.precision).map_err(err)?;
        for r in &rows {
            lines.push(AsymLine {
                family: f,
                n: r.n,
                sequence: r.sequence,
                exact: r.exact.clone(),
                main_term: r.main_term.clone(),
                ratio: r.ratio.clone(),
                deviation: format!("{:.6e}", r.deviation),
            });
        }
        data.push(AsymData {
            family: f,
            deviation_decreasing: deviation_decreasing(&rows),
            rows,
        });
    }
    let passed = data.iter().all(|d| d.deviation_decreasing);
    outcome("asym", passed, &lines, &data)
}

pub fn consistency(cfg: &RunConfig) -> CmdResult {
    let families = cfg.families();
    let reports: Vec<ConsistencyReport> =
        par::map(&families, |&f| ingham_consistency(f, cfg.precision))
            .into_iter()
            .collect::<Result<_, _>>()
            .map_err(err)?;
    let passed = reports.iter().all(|r| r.passed);
    outcome("consistency", passed, &reports, &reports)
}

#[derive(Debug, Serialize)]
struct LemmaLine {
    lemma: String,
    alpha: String,
    r: f64,
    z: String,
    value: String,
    predicted: String,
    ratio: String,
    deviation: String,
    cross_check_digits: Option<String>,
    trend_pass: bool,
}

fn lemma_lines(reports: &[LemmaReport]) -> Vec<LemmaLine> {
    let mut out = Vec::new();
    for rep in reports {
        for row in &rep.rows {
            out.push(LemmaLine {
                lemma: rep.lemma.clone(),
                alpha: format!("{:.6}", rep.alpha),
                r: row.r,
                z: row.z.clone(),
                value: row.value.clone(),
                predicted: row.predicted.clone(),
                ratio: row.ratio.clone(),
                deviation: format!("{:.6e}", row.deviation),
                cross_check_digits: rep.cross_check_digits.map(|d| format!("{d:.1}")),
                trend_pass: rep.trend_pass,
            });
        }
    }
    out
}

pub const LEMMA_ALPHAS: [f64; 3] = [0.0, FRAC_PI_6, FRAC_PI_3];

pub fn lemmas(cfg: &RunConfig, which: &[Lemma], genfun: bool) -> CmdResult {
    let ctx = cfg.ctx();
    let mut jobs: Vec<(Lemma, Ray)> = Vec::new();
    for &lemma in which {
        for ray in cfg.rays(&LEMMA_ALPHAS, &lemma.default_magnitudes())? {
            jobs.push((lemma, ray));
        }
    }
    let mut reports: Vec<LemmaReport> = par::map(&jobs, |(l, ray)| lemma_report_on(*l, ray, &ctx))
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(err)?;
    if genfun {
        let mut gjobs = Vec::new();
        for f in cfg.families() {
            for ray in cfg.rays(&LEMMA_ALPHAS, &[0.2, 0.1, 0.05, 0.025])? {
                gjobs.push((f, ray));
            }
        }
        for r in par::map(&gjobs, |(f, ray)| genfun_asymptotic_check(*f, ray, &ctx)) {
            reports.extend(r.map_err(err)?);
        }
    }
    let passed = reports.iter().all(|r| r.trend_pass);
    outcome("lemmas", passed, &lemma_lines(&reports), &reports)
}

/// Slopes must land within this distance of `N`.
pub const SLOPE_TOLERANCE: f64 = 0.3;

#[derive(Debug, Serialize)]
struct EmLine {
    kind: &'static str,
    dim: usize,
    profile: String,
    n_terms: Option<usize>,
    alpha: Option<String>,
    r: Option<f64>,
    value: String,
    slope: Option<String>,
    passed: bool,
}

#[derive(Debug, Serialize)]
struct EmData {
    slopes: Vec<SlopeReport>,
    aggregate: Vec<(f64, String)>,
    eps_sum: String,
    minus_eps_b1_sum: String,
}

pub fn em(cfg: &RunConfig, dim: usize, terms: &[usize]) -> CmdResult {
    let ctx = cfg.ctx();
    let rays = cfg.rays(&[0.0, FRAC_PI_6], &[0.1, 0.05, 0.025])?;
    let shift = Rational::from((5, 24));
    let zero = Rational::new();
    let shift2 = Rational::from((1, 24));
    let mut jobs = Vec::new();
    for ray in &rays {
        for &n in terms {
            jobs.push((ray.clone(), n));
        }
    }
    let slopes: Vec<SlopeReport> = match dim {
        1 => {
            let g = Gaussian::centered(Rational::from(24)).map_err(err)?;
            par::map(&jobs, |(ray, n)| slope_1d(&g, &shift, ray, *n, &ctx))
                .into_iter()
                .collect::<Result<_, _>>()
                .map_err(err)?
        }
        2 => {
            let forms = [
                QuadForm::from_i64(4, 16, 12).map_err(err)?,
                QuadForm::from_i64(24, 48, 8).map_err(err)?,
            ];
            let jobs2: Vec<_> = forms
                .iter()
                .flat_map(|f| jobs.iter().map(move |j| (f, j)))
                .collect();
            par::map(&jobs2, |(f, (ray, n))| {
                slope_2d(f, (&shift2, &zero), ray, *n, &ctx)
            })
            .into_iter()
            .collect::<Result<_, _>>()
            .map_err(err)?
        }
        d => return Err(format!("--dim must be 1 or 2, got {d}")),
    };
    let mut lines = Vec::new();
    let mut passed = true;
    for s in &slopes {
        let ok = (s.slope - s.n_terms as f64).abs() <= SLOPE_TOLERANCE;
        passed &= ok;
        for &(r, e) in &s.rows {
            lines.push(EmLine {
                kind: "slope",
                dim: s.dim,
                profile: s.profile.clone(),
                n_terms: Some(s.n_terms),
                alpha: Some(format!("{:.6}", s.alpha)),
                r: Some(r),
                value: format!("{e:.6e}"),
                slope: Some(format!("{:.4}", s.slope)),
                passed: ok,
            });
        }
    }
    let mut aggregate = Vec::new();
    let eps_sum = aggregate_eps_sum();
    let b1_sum = aggregate_b1_sum();
    if dim == 1 {
        let zs = [0.2, 0.1, 0.05, 0.025];
        let mut devs = Vec::new();
        for &z in &zs {
            let v = aggregate_lattice(&ctx.complex(z, 0.0), &ctx).map_err(err)?;
            devs.push((v.real().to_f64() - 1.0).abs());
            aggregate.push((z, format_complex(&v, 20)));
        }
        let trend = devs.windows(2).all(|w| w[1] < w[0]);
        passed &= trend;
        for (z, v) in &aggregate {
            lines.push(EmLine {
                kind: "aggregate",
                dim: 1,
                profile: "sum eps(a) exp(-24 (m+a)^2 z)".into(),
                n_terms: None,
                alpha: Some(format!("{:.6}", 0.0)),
                r: Some(*z),
                value: v.clone(),
                slope: None,
                passed: trend,
            });
        }
        let exact_ok = eps_sum == 0 && b1_sum == 1;
        passed &= exact_ok;
        for (name, v) in [("sum eps", &eps_sum), ("-sum eps B_1", &b1_sum)] {
            lines.push(EmLine {
                kind: "exact",
                dim: 1,
                profile: name.into(),
                n_terms: None,
                alpha: None,
                r: None,
                value: v.to_string(),
                slope: None,
                passed: exact_ok,
            });
        }
    }
    let data = EmData {
        slopes,
        aggregate,
        eps_sum: eps_sum.to_string(),
        minus_eps_b1_sum: b1_sum.to_string(),
    };
    outcome("em", passed, &lines, &data)
}

pub fn identities(cfg: &RunConfig) -> CmdResult {
    let rows: Vec<IdentityRow> = identity_suite(cfg.order_or(500)).map_err(err)?;
    let passed = rows.iter().all(|r| r.holds);
    outcome("identities", passed, &rows, &rows)
}

#[derive(Debug, Serialize)]
struct ChainLine {
    lower: FamilyCode,
    upper: FamilyCode,
    checked_through: usize,
    last_failure: Option<usize>,
    n0: Option<usize>,
}

pub fn chain(cfg: &RunConfig) -> CmdResult {
    let order = cfg.order_or(2001);
    let selected = cfg.families();
    let chain: Vec<FamilyCode> = CHAIN.into_iter().filter(|f| selected.contains(f)).collect();
    if chain.len() < 2 {
        return Err("chain needs at least two families".into());
    }
    let catalog = Catalog::build(&chain, order).map_err(err)?;
    let report = inequality_chain(&catalog, &chain).map_err(err)?;
    let lines: Vec<ChainLine> = report
        .last_failure
        .iter()
        .map(|&(lower, upper, last)| ChainLine {
            lower,
            upper,
            checked_through: report.checked_through,
            last_failure: last,
            n0: report.n0,
        })
        .collect();
    outcome("chain", report.n0.is_some(), &lines, &report)
}
