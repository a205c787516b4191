//! Symmetric differences of zero multisets and the uniqueness checks built
//! on them.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::counting::{count_in_disk, lex_cmp, locate_values, RecordKind, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;
use crate::stats::{least_squares, LineFit};

pub const DEFAULT_MATCH_TOL: f64 = 1e-6;
/// Threshold on `min D(T)/T` over the upper half grid for a linear verdict.
pub const DEFAULT_THETA: f64 = 0.05;
/// Slope threshold of the sublinearity heuristic.
pub const DEFAULT_THETA_PRIME: f64 = 0.01;

/// A zero of `FG` with its multiplicity in each factor; `0` means unmatched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedPair {
    pub position: Complex64,
    pub m_f: u32,
    pub m_g: u32,
}

impl MatchedPair {
    pub fn difference(&self) -> u32 {
        self.m_f.abs_diff(self.m_g)
    }

    pub fn is_matched(&self) -> bool {
        self.m_f > 0 && self.m_g > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymDiffReport {
    pub t_grid: Vec<f64>,
    pub d_values: Vec<u64>,
    pub matched_pairs: Vec<MatchedPair>,
    /// Least-squares line of `D(T)` against `T`; `None` on a one-point grid.
    pub fit: Option<LineFit>,
}

impl SymDiffReport {
    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

fn zeros_only(records: &[ZeroRecord]) -> Vec<ZeroRecord> {
    let mut out: Vec<ZeroRecord> = records.iter().copied().filter(|z| z.kind == RecordKind::Zero).collect();
    out.sort_by(|a, b| lex_cmp(&a.position, &b.position));
    out
}

/// Pairs zeros of `F` and `G` lying within `tol` of each other. Every zero
/// may have at most one partner candidate; otherwise the pairing is ambiguous.
pub fn match_zeros(zeros_f: &[ZeroRecord], zeros_g: &[ZeroRecord], tol: f64) -> Result<Vec<MatchedPair>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("match tolerance must be positive"));
    }
    let zf = zeros_only(zeros_f);
    let zg = zeros_only(zeros_g);
    let mut partner_of_g: Vec<Option<usize>> = alloc::vec![None; zg.len()];
    let mut out = Vec::with_capacity(zf.len() + zg.len());
    for (i, f) in zf.iter().enumerate() {
        let near: Vec<usize> = (0..zg.len())
            .filter(|&j| (zg[j].position - f.position).norm() <= tol)
            .collect();
        match near.as_slice() {
            [] => out.push(MatchedPair {
                position: f.position,
                m_f: f.multiplicity,
                m_g: 0,
            }),
            [j] => {
                if partner_of_g[*j].is_some() {
                    return Err(ambiguous(zg[*j].position));
                }
                partner_of_g[*j] = Some(i);
                out.push(MatchedPair {
                    position: f.position,
                    m_f: f.multiplicity,
                    m_g: zg[*j].multiplicity,
                });
            }
            _ => return Err(ambiguous(f.position)),
        }
    }
    for (j, g) in zg.iter().enumerate() {
        if partner_of_g[j].is_none() {
            out.push(MatchedPair {
                position: g.position,
                m_f: 0,
                m_g: g.multiplicity,
            });
        }
    }
    out.sort_by(|a, b| lex_cmp(&a.position, &b.position));
    Ok(out)
}

fn ambiguous(p: Complex64) -> Error {
    Error::AmbiguousMatch { position: (p.re, p.im) }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InsufficientGrid { points: 0, span: 0.0 });
    }
    if grid.iter().any(|t| !(*t > 0.0)) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("T grid must be positive and strictly increasing"));
    }
    Ok(())
}

fn fit(grid: &[f64], values: &[u64]) -> Option<LineFit> {
    let y: Vec<f64> = values.iter().map(|v| *v as f64).collect();
    least_squares(grid, &y)
}

/// `D_{F,G}(T) = Σ |m_F(ρ) - m_G(ρ)|` over the zeros of `FG` in `|ρ| ≤ T`.
pub fn symmetric_difference(
    zeros_f: &[ZeroRecord],
    zeros_g: &[ZeroRecord],
    t_grid: &[f64],
    match_tol: f64,
) -> Result<SymDiffReport> {
    check_grid(t_grid)?;
    let pairs = match_zeros(zeros_f, zeros_g, match_tol)?;
    let d_values: Vec<u64> = t_grid
        .iter()
        .map(|t| {
            pairs
                .iter()
                .filter(|p| p.position.norm() <= *t)
                .map(|p| p.difference() as u64)
                .sum()
        })
        .collect();
    Ok(SymDiffReport {
        fit: fit(t_grid, &d_values),
        t_grid: t_grid.to_vec(),
        d_values,
        matched_pairs: pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthVerdict {
    pub linear: bool,
    /// `min D(T)/T` over the upper half of the grid.
    pub a_estimate: f64,
}

fn min_ratio_upper_half(grid: &[f64], values: &[u64], theta: f64) -> Result<GrowthVerdict> {
    let span = grid.last().copied().unwrap_or(0.0) / grid.first().copied().unwrap_or(1.0);
    if grid.len() < 8 || !(span >= 10.0 * (1.0 - 1e-12)) {
        return Err(Error::InsufficientGrid {
            points: grid.len(),
            span,
        });
    }
    let a = grid
        .iter()
        .zip(values)
        .skip(grid.len() / 2)
        .map(|(t, d)| *d as f64 / t)
        .fold(f64::INFINITY, f64::min);
    Ok(GrowthVerdict {
        linear: a > theta,
        a_estimate: a,
    })
}

/// Linear lower bound `D(T) > θT` on the upper half of a grid with at least
/// eight points spanning a decade.
pub fn linear_growth_verdict(report: &SymDiffReport, theta: f64) -> Result<GrowthVerdict> {
    min_ratio_upper_half(&report.t_grid, &report.d_values, theta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSetEstimate {
    pub t_grid: Vec<f64>,
    /// Unmatched zeros with multiplicity in `|s| ≤ T`.
    pub n_e: Vec<u64>,
    pub slope: f64,
    /// Heuristic `n(r, E) = o(r)`: small slope and `n_E(T)/T` nonincreasing
    /// on the upper half grid.
    pub o_r_verdict: bool,
}

pub fn enough_common_zeros(
    zeros_f: &[ZeroRecord],
    zeros_g: &[ZeroRecord],
    t_grid: &[f64],
    match_tol: f64,
    theta_prime: f64,
) -> Result<ExceptionalSetEstimate> {
    check_grid(t_grid)?;
    let pairs = match_zeros(zeros_f, zeros_g, match_tol)?;
    let n_e: Vec<u64> = t_grid
        .iter()
        .map(|t| {
            pairs
                .iter()
                .filter(|p| !p.is_matched() && p.position.norm() <= *t)
                .map(|p| (p.m_f + p.m_g) as u64)
                .sum()
        })
        .collect();
    let slope = fit(t_grid, &n_e).map_or(0.0, |f| f.slope);
    let upper = t_grid.len() / 2;
    let ratios: Vec<f64> = t_grid
        .iter()
        .zip(&n_e)
        .skip(upper)
        .map(|(t, n)| *n as f64 / t)
        .collect();
    let decreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
    Ok(ExceptionalSetEstimate {
        t_grid: t_grid.to_vec(),
        n_e,
        slope,
        o_r_verdict: slope < theta_prime && decreasing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessVerdict {
    Distinct,
    IdenticalNumerically,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniquenessOptions {
    pub match_tol: f64,
    pub theta: f64,
    pub grid_points: usize,
    /// Allowed `|F/G - 1|` far to the right and on the boundary circle.
    pub limit_tol: f64,
}

impl Default for UniquenessOptions {
    fn default() -> Self {
        Self {
            match_tol: DEFAULT_MATCH_TOL,
            theta: DEFAULT_THETA,
            grid_points: 12,
            limit_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    pub verdict: UniquenessVerdict,
    pub symdiff: SymDiffReport,
    /// `n(T, 0; F/G) + n(T, ∞; F/G)` on the same grid.
    pub quotient_counts: Vec<u64>,
    pub symdiff_growth: GrowthVerdict,
    pub quotient_growth: GrowthVerdict,
    /// `max |F/G - 1|` on `|s| = T_max`.
    pub boundary_deviation: f64,
}

/// Log-spaced grid from `t_max/10` to `t_max`.
pub fn decade_grid(t_max: f64, points: usize) -> Vec<f64> {
    let lo = t_max / 10.0;
    (0..points)
        .map(|i| lo * 10f64.powf(i as f64 / (points - 1) as f64))
        .collect()
}

const BOUNDARY_SAMPLES: usize = 64;

/// Decides `F ≢ G` from linear growth of `D_{F,G}` or of the zeros and poles
/// of `F/G`. Requires `F/G → 1` as `Re s → +∞` and declared orders below 2.
pub fn uniqueness_check(f: &MeromorphicOracle, g: &MeromorphicOracle, t_max: f64) -> Result<UniquenessReport> {
    uniqueness_check_with(f, g, t_max, &UniquenessOptions::default())
}

pub fn uniqueness_check_with(
    f: &MeromorphicOracle,
    g: &MeromorphicOracle,
    t_max: f64,
    opts: &UniquenessOptions,
) -> Result<UniquenessReport> {
    if !(t_max > 0.0) {
        return Err(Error::InvalidParameter("T_max must be positive"));
    }
    if opts.grid_points < 2 {
        return Err(Error::InvalidParameter("grid needs at least two points"));
    }
    for o in [f, g] {
        match o.declared_order() {
            Some(rho) if rho < 2.0 => {}
            _ => return Err(Error::PreconditionFailed("F and G must have declared order below 2")),
        }
    }
    let q = MeromorphicOracle::quotient(f, g)?;
    let sigma = 40f64.min(0.9 * q.validity_radius());
    let at_right = q.eval(Complex64::new(sigma, 0.0))?.value;
    if !((at_right - 1.0).norm() < opts.limit_tol) {
        return Err(Error::PreconditionFailed("F/G must tend to 1 as Re(s) → +∞"));
    }
    let grid = decade_grid(t_max, opts.grid_points);
    let zf = locate_values(f, t_max, Target::zero())?;
    let zg = locate_values(g, t_max, Target::zero())?;
    let symdiff = symmetric_difference(&zf, &zg, &grid, opts.match_tol)?;
    let mut quotient_counts = Vec::with_capacity(grid.len());
    for &t in &grid {
        let z = count_in_disk(&q, t, Target::zero())?.certified_count()?;
        let p = count_in_disk(&q, t, Target::Infinity)?.certified_count()?;
        quotient_counts.push(z + p);
    }
    let symdiff_growth = min_ratio_upper_half(&grid, &symdiff.d_values, opts.theta)?;
    let quotient_growth = min_ratio_upper_half(&grid, &quotient_counts, opts.theta)?;
    let mut boundary_deviation: f64 = 0.0;
    for j in 0..BOUNDARY_SAMPLES {
        let s = Complex64::from_polar(t_max, 2.0 * PI * (j as f64 + 0.5) / BOUNDARY_SAMPLES as f64);
        boundary_deviation = boundary_deviation.max((q.eval(s)?.value - 1.0).norm());
    }
    let vanishing = symdiff.d_values.iter().all(|d| *d == 0) && quotient_counts.iter().all(|n| *n == 0);
    let verdict = if symdiff_growth.linear || quotient_growth.linear {
        UniquenessVerdict::Distinct
    } else if vanishing && boundary_deviation <= opts.limit_tol {
        UniquenessVerdict::IdenticalNumerically
    } else {
        UniquenessVerdict::Inconclusive
    };
    Ok(UniquenessReport {
        verdict,
        symdiff,
        quotient_counts,
        symdiff_growth,
        quotient_growth,
        boundary_deviation,
    })
}
