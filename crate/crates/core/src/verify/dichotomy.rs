use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::counting::{CountingTable, ZeroRecord};
use crate::error::{Error, Result};
use crate::stats::least_squares;

/// Default threshold on `min (n₀ + n∞)(r)/r` for a linear lower bound.
pub const DEFAULT_THETA: f64 = 0.05;
/// Log-log growth exponent from which a divergent tail is suggested.
pub const SUGGESTIVE_EXPONENT: f64 = 1.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `n(r, 0) + n(r, ∞) > A r` on the upper half grid.
    LinearLowerBound,
    /// Counts grow like `r²` or faster, so `∫ n(t)/t³ dt` looks divergent.
    DivergentTailSuggestive,
    Degenerate,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::LinearLowerBound => "linear-lower-bound",
            Branch::DivergentTailSuggestive => "divergent-tail-suggestive",
            Branch::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyReport {
    pub grid: Vec<f64>,
    /// `n(r, 0) + n(r, ∞)` per radius.
    pub counts: Vec<u64>,
    pub table: Option<CountingTable>,
    /// `min counts/r` over the upper half grid.
    pub a_lower: f64,
    /// `∫_{r₀}^{r} (n₀ + n∞)(t)/t³ dt` at each grid radius, `r₀` the first.
    pub tail_integral_partial: Vec<f64>,
    /// Log-log slope of the counts on the upper half grid.
    pub growth_exponent: f64,
    pub branch: Branch,
    pub hypothesis_violating: bool,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    let span = match (grid.first(), grid.last()) {
        (Some(a), Some(b)) if *a > 0.0 => b / a,
        _ => 0.0,
    };
    if grid.len() < 8 || !(span >= 10.0 * (1.0 - 1e-12)) {
        return Err(Error::InsufficientGrid {
            points: grid.len(),
            span,
        });
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radius grid must be strictly increasing"));
    }
    Ok(())
}

/// Partial tail integrals in closed form from the records: each point of
/// modulus `m` contributes `(1/max(r₀, m)² - 1/r²)/2` once `r ≥ m`.
fn tail_partials(grid: &[f64], moduli: &[(f64, u32)]) -> Vec<f64> {
    let r0 = grid[0];
    grid.iter()
        .map(|&r| {
            moduli
                .iter()
                .filter(|(m, _)| *m <= r)
                .map(|&(m, k)| {
                    let lo = m.max(r0);
                    k as f64 * 0.5 * (1.0 / (lo * lo) - 1.0 / (r * r))
                })
                .sum()
        })
        .collect()
}

/// Classifies counts `n₀ + n∞` on a grid; `moduli` lists every zero and pole
/// with its multiplicity.
pub fn classify(
    grid: &[f64],
    counts: &[u64],
    moduli: &[(f64, u32)],
    theta: f64,
    hypothesis_violating: bool,
) -> Result<DichotomyReport> {
    check_grid(grid)?;
    if counts.len() != grid.len() {
        return Err(Error::InvalidParameter("one count per grid radius"));
    }
    let upper = grid.len() / 2;
    let a_lower = grid
        .iter()
        .zip(counts)
        .skip(upper)
        .map(|(r, n)| *n as f64 / r)
        .fold(f64::INFINITY, f64::min);
    let (lx, ly): (Vec<f64>, Vec<f64>) = grid
        .iter()
        .zip(counts)
        .skip(upper)
        .filter(|(_, n)| **n > 0)
        .map(|(r, n)| (r.ln(), (*n as f64).ln()))
        .unzip();
    let growth_exponent = least_squares(&lx, &ly).map_or(0.0, |f| f.slope);
    let branch = if growth_exponent >= SUGGESTIVE_EXPONENT {
        Branch::DivergentTailSuggestive
    } else if a_lower >= theta {
        Branch::LinearLowerBound
    } else {
        Branch::Degenerate
    };
    Ok(DichotomyReport {
        grid: grid.to_vec(),
        counts: counts.to_vec(),
        table: None,
        a_lower,
        tail_integral_partial: tail_partials(grid, moduli),
        growth_exponent,
        branch,
        hypothesis_violating,
    })
}

/// Report for a counting table and the records behind it.
pub fn classify_table(
    table: &CountingTable,
    records: &[ZeroRecord],
    theta: f64,
    hypothesis_violating: bool,
) -> Result<DichotomyReport> {
    let grid: Vec<f64> = table.rows.iter().map(|r| r.r).collect();
    let counts: Vec<u64> = table.rows.iter().map(|r| r.n_zero + r.n_pole).collect();
    let moduli: Vec<(f64, u32)> = records.iter().map(|z| (z.position.norm(), z.multiplicity)).collect();
    let mut rep = classify(&grid, &counts, &moduli, theta, hypothesis_violating)?;
    rep.table = Some(table.clone());
    Ok(rep)
}

/// Nonzero Gaussian integers in `|w| ≤ radius`, sorted lexicographically:
/// a prescribed zero set with `n(t) ≈ πt²`.
pub fn gaussian_lattice(radius: f64) -> Vec<Complex64> {
    let k = radius.floor() as i64;
    let mut out = Vec::new();
    for x in -k..=k {
        for y in -k..=k {
            let w = Complex64::new(x as f64, y as f64);
            if (x, y) != (0, 0) && w.norm() <= radius {
                out.push(w);
            }
        }
    }
    out
}

/// Classification of a prescribed point set counted exactly.
pub fn classify_points(points: &[Complex64], grid: &[f64], theta: f64) -> Result<DichotomyReport> {
    let counts: Vec<u64> = grid
        .iter()
        .map(|r| points.iter().filter(|p| p.norm() <= *r).count() as u64)
        .collect();
    let moduli: Vec<(f64, u32)> = points.iter().map(|p| (p.norm(), 1)).collect();
    classify(grid, &counts, &moduli, theta, false)
}
