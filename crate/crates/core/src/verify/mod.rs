//! Catalog of worked examples, counting tables checked against closed
//! forms, and the linear-growth dichotomy measured on radius grids.

mod catalog;
mod dichotomy;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

pub use catalog::{catalog, entry, CatalogEntry, ClosedForm, HypothesisFlags, Role};
pub use dichotomy::{
    classify, classify_points, classify_table, gaussian_lattice, Branch, DichotomyReport, DEFAULT_THETA,
    SUGGESTIVE_EXPONENT,
};

use crate::counting::{self, CountingTable, RecordKind, TablePlan, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;
use crate::series::{ExponentialSum, SignConvention};

/// `n` points from `lo` to `hi`, equally spaced in `log r`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![lo];
    }
    let ratio = hi / lo;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * ratio.powf(i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// `n` equally spaced points from `lo` to `hi`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Located points must sit on the closed form within this distance.
const CLOSED_FORM_TOL: f64 = 1e-6;

fn oracle_of(entry: &CatalogEntry) -> Result<&MeromorphicOracle> {
    entry
        .oracle
        .as_ref()
        .ok_or(Error::PreconditionFailed("metadata-only entries are never evaluated"))
}

fn check_closed_form(form: Option<ClosedForm>, found: u64, located: &[ZeroRecord], r: f64) -> Result<()> {
    let Some(form) = form else {
        return Ok(());
    };
    let expected = form.count(r);
    if expected != found {
        return Err(Error::ClosedFormMismatch {
            radius: r,
            expected,
            found,
        });
    }
    let pts = form.points(r);
    for z in located.iter().filter(|z| z.position.norm() <= r) {
        if !pts.iter().any(|p| (z.position - p).norm() <= CLOSED_FORM_TOL * p.norm().max(1.0)) {
            return Err(Error::ClosedFormMismatch {
                radius: r,
                expected,
                found,
            });
        }
    }
    Ok(())
}

/// Counting table of an entry together with the located zeros and poles.
pub fn entry_table(entry: &CatalogEntry, grid: &[f64]) -> Result<(CountingTable, Vec<ZeroRecord>)> {
    let oracle = oracle_of(entry)?;
    let plan = TablePlan::new(oracle, grid, Complex64::new(0.0, 0.0))?;
    let mut rows = Vec::with_capacity(grid.len());
    for &r in grid {
        let row = plan.row(oracle, r)?;
        check_closed_form(entry.closed_zeros, row.n_zero, plan.zeros(), r)?;
        check_closed_form(entry.closed_poles, row.n_pole, plan.poles(), r)?;
        rows.push(row);
    }
    let mut records = plan.zeros().to_vec();
    records.extend_from_slice(plan.poles());
    Ok((plan.assemble(rows), records))
}

/// Counting table cross-checked against the entry's closed forms.
pub fn counting_table(entry: &CatalogEntry, grid: &[f64]) -> Result<CountingTable> {
    Ok(entry_table(entry, grid)?.0)
}

pub fn dichotomy_check(entry: &CatalogEntry, grid: &[f64], theta: f64) -> Result<DichotomyReport> {
    let (table, records) = entry_table(entry, grid)?;
    classify_table(&table, &records, theta, !entry.flags.all())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionCheck {
    /// A single nonzero term has neither zeros nor poles; nothing to compare.
    pub skipped_trivial: bool,
    pub tables_equal: bool,
    /// `λ₁` of the leading term.
    pub lambda1: f64,
    /// Limit of `e^{λ₁ s} f(s)` as `Re s → +∞`, expected to be `a₁`.
    pub normalized_limit: Option<Complex64>,
    pub leading_coefficient: Complex64,
}

/// Compares the counting tables of `f` and `e^{λ₁ s} f`, which share zeros
/// and poles, and checks that the normalized sum tends to `a₁`.
pub fn normalization_reduction_check(sum: &ExponentialSum, grid: &[f64]) -> Result<ReductionCheck> {
    if sum.convention() != SignConvention::Dirichlet {
        return Err(Error::PreconditionFailed("normalization needs a Dirichlet-form sum"));
    }
    let lead = sum.leading();
    if sum.is_trivial() {
        return Ok(ReductionCheck {
            skipped_trivial: true,
            tables_equal: true,
            lambda1: lead.lambda,
            normalized_limit: Some(lead.coeff),
            leading_coefficient: lead.coeff,
        });
    }
    let f = MeromorphicOracle::from_sum(sum)?;
    let g = MeromorphicOracle::scale_by_exponential(&f, lead.lambda)?;
    let tf = counting::counting_table(&f, grid)?;
    let tg = counting::counting_table(&g, grid)?;
    let tables_equal = tf.rows.len() == tg.rows.len()
        && tf.rows.iter().zip(&tg.rows).all(|(a, b)| {
            a.n_zero == b.n_zero
                && a.n_pole == b.n_pole
                && (a.big_n_zero - b.big_n_zero).abs() <= 1e-9 * a.big_n_zero.abs().max(1.0)
                && (a.big_n_pole - b.big_n_pole).abs() <= 1e-9 * a.big_n_pole.abs().max(1.0)
        });
    Ok(ReductionCheck {
        skipped_trivial: false,
        tables_equal,
        lambda1: lead.lambda,
        normalized_limit: g.limit_at_plus_infinity(),
        leading_coefficient: lead.coeff,
    })
}

/// Outcome of every check run on one entry.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryOutcome {
    pub key: &'static str,
    pub name: &'static str,
    pub role: Role,
    pub grid: Vec<f64>,
    pub dichotomy: Option<DichotomyReport>,
    pub reduction: Option<ReductionCheck>,
    pub failures: Vec<String>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn table(&self) -> Option<&CountingTable> {
        self.dichotomy.as_ref().and_then(|d| d.table.as_ref())
    }
}

/// The suite grid of an entry: `grid` when it fits the validity disk,
/// otherwise the entry's own range with `points` radii.
pub fn entry_grid(entry: &CatalogEntry, grid: Option<&[f64]>, points: usize) -> Vec<f64> {
    let validity = entry.oracle.as_ref().map_or(f64::INFINITY, |o| o.validity_radius());
    match grid {
        Some(g) if g.last().is_some_and(|r| *r <= validity) => g.to_vec(),
        _ => log_grid(entry.grid.0, entry.grid.1, points),
    }
}

/// Runs the closed-form, dichotomy and normalization checks on one entry.
pub fn check_entry(entry: &CatalogEntry, grid: &[f64], theta: f64) -> EntryOutcome {
    let mut out = EntryOutcome {
        key: entry.key,
        name: entry.name,
        role: entry.role,
        grid: grid.to_vec(),
        dichotomy: None,
        reduction: None,
        failures: Vec::new(),
    };
    if !entry.is_evaluable() {
        return out;
    }
    match dichotomy_check(entry, grid, theta) {
        Ok(rep) => {
            let expects_linear = entry.flags.all() && entry.declared_order < 2.0;
            if expects_linear && rep.branch != Branch::LinearLowerBound {
                out.failures.push(format!(
                    "expected a linear lower bound, got {} with A = {:.6}",
                    rep.branch.label(),
                    rep.a_lower
                ));
            }
            if entry.role == Role::NegativeControl && rep.counts.iter().any(|n| *n != 0) {
                out.failures
                    .push(String::from("control without zeros or poles produced nonzero counts"));
            }
            if rep.tail_integral_partial.windows(2).any(|w| w[1] < w[0]) {
                out.failures.push(String::from("tail integral partial sums decrease"));
            }
            out.dichotomy = Some(rep);
        }
        Err(e) => out.failures.push(format!("table: {e}")),
    }
    if let Some(sum) = &entry.sum {
        match normalization_reduction_check(sum, grid) {
            Ok(r) => {
                if !r.tables_equal {
                    out.failures.push(String::from("normalized series has a different counting table"));
                }
                let limit_ok = r
                    .normalized_limit
                    .is_some_and(|l| (l - r.leading_coefficient).norm() <= 1e-12 * r.leading_coefficient.norm());
                if !limit_ok {
                    out.failures.push(String::from("normalized series does not tend to its leading coefficient"));
                }
                out.reduction = Some(r);
            }
            Err(e) => out.failures.push(format!("normalization: {e}")),
        }
    }
    out
}

/// Synthetic check: the Gaussian-integer zero set must be classified as a
/// divergent tail, and a Weierstrass product over it must count its points.
pub fn check_gaussian_lattice() -> EntryOutcome {
    let mut out = EntryOutcome {
        key: "gaussian_lattice",
        name: "gaussian lattice product",
        role: Role::Positive,
        grid: log_grid(4.0, 40.0, 8),
        dichotomy: None,
        reduction: None,
        failures: Vec::new(),
    };
    let pts = gaussian_lattice(40.0);
    match classify_points(&pts, &out.grid, DEFAULT_THETA) {
        Ok(rep) => {
            if rep.branch != Branch::DivergentTailSuggestive {
                out.failures
                    .push(format!("expected a divergent tail, got {}", rep.branch.label()));
            }
            out.dichotomy = Some(rep);
        }
        Err(e) => out.failures.push(format!("classification: {e}")),
    }
    let small = gaussian_lattice(6.0);
    let product = MeromorphicOracle::weierstrass(small.clone());
    let counted = product.and_then(|f| counting::count_in_disk(&f, 2.5, counting::Target::zero())?.certified_count());
    let expected = small.iter().filter(|p| p.norm() <= 2.5).count() as u64;
    match counted {
        Ok(n) if n == expected => {}
        Ok(n) => out.failures.push(format!("product counts {n} lattice points, expected {expected}")),
        Err(e) => out.failures.push(format!("product count: {e}")),
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub outcomes: Vec<EntryOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed())
    }
}

/// Runs every catalog entry and the synthetic lattice sequentially.
pub fn run_suite(grid: Option<&[f64]>, points: usize, theta: f64) -> SuiteReport {
    let mut outcomes: Vec<EntryOutcome> = catalog()
        .iter()
        .map(|e| check_entry(e, &entry_grid(e, grid, points), theta))
        .collect();
    outcomes.push(check_gaussian_lattice());
    SuiteReport { outcomes }
}

/// Records of kind `kind` from a located list.
pub fn records_of(records: &[ZeroRecord], kind: RecordKind) -> Vec<ZeroRecord> {
    records.iter().copied().filter(|z| z.kind == kind).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    #[test]
    fn grids() {
        let g = log_grid(5.0, 50.0, 8);
        assert_eq!((g[0], g[7], g.len()), (5.0, 50.0, 8));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(linear_grid(0.0, 1.0, 3), [0.0, 0.5, 1.0]);
    }

    #[test]
    fn closed_form_tables() {
        let e = entry("one_plus_2pow").unwrap();
        let t = counting_table(&e, &[5.0, 10.0, 20.0, 50.0]).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.n_zero).collect::<Vec<_>>(), [2, 2, 4, 12]);
        let g = entry("geometric").unwrap();
        let t = counting_table(&g, &[10.0, 20.0]).unwrap();
        assert_eq!(t.rows.iter().map(|r| (r.n_zero, r.n_pole)).collect::<Vec<_>>(), [(0, 3), (0, 7)]);
        let c = entry("exp_neg").unwrap();
        let t = counting_table(&c, &[5.0, 50.0]).unwrap();
        assert!(t.rows.iter().all(|r| r.n_zero == 0 && r.n_pole == 0));
    }

    #[test]
    fn reduction() {
        let f = ExponentialSum::dirichlet(&[(LN_2, 1.0), (3f64.ln(), 1.0)]).unwrap();
        let r = normalization_reduction_check(&f, &[5.0, 10.0, 20.0]).unwrap();
        assert!(r.tables_equal && !r.skipped_trivial);
        assert_eq!(r.normalized_limit, Some(Complex64::new(1.0, 0.0)));
        let single = ExponentialSum::dirichlet(&[(LN_2, 1.0)]).unwrap();
        assert!(normalization_reduction_check(&single, &[5.0]).unwrap().skipped_trivial);
    }

    #[test]
    fn control_is_labeled() {
        let e = entry("exp_neg").unwrap();
        let o = check_entry(&e, &log_grid(5.0, 50.0, 8), DEFAULT_THETA);
        assert!(o.passed(), "{:?}", o.failures);
        let d = o.dichotomy.unwrap();
        assert!(d.hypothesis_violating && d.a_lower == 0.0 && d.branch == Branch::Degenerate);
    }

    #[test]
    fn synthetic_lattice_passes() {
        let o = check_gaussian_lattice();
        assert!(o.passed(), "{:?}", o.failures);
    }
}
