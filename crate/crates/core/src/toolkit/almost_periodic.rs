use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::counting::{count_in_disk, count_in_region, CountOptions, Target};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;
use crate::series::{ExponentialSum, SignConvention};
use crate::stats::least_squares;
use crate::Disk;

/// Grid scan for translation numbers on `Re(s) ≥ sigma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationScan {
    pub sigma0: f64,
    pub start: f64,
    pub end: f64,
    /// Length `l` of the windows that must each contain a hit.
    pub window: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationNumberSet {
    pub epsilon: f64,
    pub interval_length: f64,
    pub sigma0: f64,
    /// Sorted grid points whose term-wise bound is at most `epsilon`.
    pub found: Vec<f64>,
    /// Longest stretch of `[start, end]` without a hit, ends included.
    pub max_gap: f64,
}

/// `(|aₙ|, μₙ)` with each term written as `aₙ e^{μₙ s}`; every `μₙ` must be
/// nonpositive for the bound to be finite on a right half-plane.
fn decaying_terms(sum: &ExponentialSum) -> Result<Vec<(f64, f64)>> {
    if sum.tail_bound().is_some() {
        return Err(Error::PreconditionFailed("translation bounds need a finite sum"));
    }
    let sign = match sum.convention() {
        SignConvention::Dirichlet => -1.0,
        SignConvention::Exponential => 1.0,
    };
    let mut out = Vec::new();
    for t in sum.terms() {
        let a = t.coeff.norm();
        if a == 0.0 {
            continue;
        }
        let mu = sign * t.lambda;
        if mu > 0.0 {
            return Err(Error::PreconditionFailed("a term grows on the right half-plane"));
        }
        out.push((a, mu));
    }
    Ok(out)
}

fn bound_from_terms(terms: &[(f64, f64)], sigma: f64, omega: f64) -> f64 {
    terms
        .iter()
        .map(|&(a, mu)| a * (mu * sigma).exp() * 2.0 * (0.5 * mu * omega).sin().abs())
        .sum()
}

/// `Σ |aₙ| e^{μₙ σ₀} |e^{iμₙ ω} - 1|`, an upper bound for
/// `sup_{Re s ≥ σ₀} |f(s + iω) - f(s)|`.
pub fn translation_bound(sum: &ExponentialSum, sigma0: f64, omega: f64) -> Result<f64> {
    Ok(bound_from_terms(&decaying_terms(sum)?, sigma0, omega))
}

/// Grid points `ω` of `[start, end]` with translation bound at most `epsilon`.
/// Fails with the first hit-free stretch longer than the window length.
pub fn translation_numbers(sum: &ExponentialSum, epsilon: f64, scan: &TranslationScan) -> Result<TranslationNumberSet> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive"));
    }
    if !(scan.step > 0.0) || !(scan.window > 0.0) || !(scan.end > scan.start) {
        return Err(Error::InvalidParameter("scan needs step > 0, window > 0 and end > start"));
    }
    let terms = decaying_terms(sum)?;
    let n = ((scan.end - scan.start) / scan.step).floor() as usize;
    let mut found = Vec::new();
    for j in 0..=n {
        let omega = scan.start + j as f64 * scan.step;
        if bound_from_terms(&terms, scan.sigma0, omega) <= epsilon {
            found.push(omega);
        }
    }
    let mut edges = Vec::with_capacity(found.len() + 2);
    edges.push(scan.start);
    edges.extend(found.iter().copied());
    edges.push(scan.end);
    let mut max_gap = 0.0;
    for w in edges.windows(2) {
        let gap = w[1] - w[0];
        if gap > max_gap {
            max_gap = gap;
        }
        if gap > scan.window {
            return Err(Error::NoHitWindow {
                start: w[0],
                end: w[1],
                found: found.len(),
            });
        }
    }
    Ok(TranslationNumberSet {
        epsilon,
        interval_length: scan.window,
        sigma0: scan.sigma0,
        found,
        max_gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceRow {
    pub r: f64,
    /// Certified solutions in `|s| ≤ r`, a lower bound for `n(r, a; f)`.
    pub certified: u64,
    /// Lower bound for `N(r, a; f)` from the certified disks.
    pub integrated_lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceReport {
    pub seed: Disk,
    /// Solutions of `f = a` in the seed disk.
    pub seed_count: u64,
    /// Lower bound for `min |f - a|` on the seed circle.
    pub mu: f64,
    /// Abscissa at which the translation bounds are evaluated.
    pub sigma_min: f64,
    /// Translations certified by Rouché's theorem, including `0`, sorted and
    /// at least one seed diameter apart.
    pub certified_shifts: Vec<f64>,
    /// Candidates whose bound was not below `mu`.
    pub refused: usize,
    pub rows: Vec<RecurrenceRow>,
    /// Least-squares slope of the integrated lower bound against `r`.
    pub slope: f64,
}

impl RecurrenceReport {
    pub fn centers(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.certified_shifts
            .iter()
            .map(move |w| self.seed.center + Complex64::new(0.0, *w))
    }
}

/// Samples on the seed circle for the boundary minimum.
const BOUNDARY_NODES: usize = 4096;

/// Lower bound for `min |f - a|` on the circle: sampled minimum less the
/// term-wise bound on `|f'|` times the half arc between samples.
fn boundary_minimum(oracle: &MeromorphicOracle, terms: &[(f64, f64)], a: Complex64, seed: &Disk) -> Result<f64> {
    let sigma_min = seed.center.re - seed.radius;
    let lip: f64 = terms.iter().map(|&(c, mu)| c * mu.abs() * (mu * sigma_min).exp()).sum();
    let mut m = f64::INFINITY;
    for j in 0..BOUNDARY_NODES {
        let s = seed.center + Complex64::from_polar(seed.radius, 2.0 * PI * j as f64 / BOUNDARY_NODES as f64);
        m = m.min((oracle.eval(s)?.value - a).norm());
    }
    Ok(m - lip * PI * seed.radius / BOUNDARY_NODES as f64)
}

/// Certifies a solution of `f = a` in each disk `seed + iω` for `ω` in
/// `±omegas` by comparing `f(s)` with `f(s - iω)` on the translated circle,
/// then turns the certified disks into lower bounds for `n` and `N` at
/// `radii`.
pub fn rouche_recurrence(
    sum: &ExponentialSum,
    a: Complex64,
    seed: Disk,
    omegas: &TranslationNumberSet,
    radii: &[f64],
) -> Result<RecurrenceReport> {
    let terms = decaying_terms(sum)?;
    let oracle = MeromorphicOracle::from_sum(sum)?;
    let seed_count = count_in_region(&oracle, seed.center, seed.radius, Target::Value(a), &CountOptions::default())?;
    if seed_count.radius_used != seed.radius {
        return Err(Error::PreconditionFailed("seed circle passes through a solution"));
    }
    let seed_count = seed_count.certified_count()?;
    if seed_count == 0 {
        return Err(Error::PreconditionFailed("seed disk contains no solution"));
    }
    let mu = boundary_minimum(&oracle, &terms, a, &seed)?;
    if !(mu > omegas.epsilon) {
        return Err(Error::CertificationRefused {
            epsilon: omegas.epsilon,
            mu,
        });
    }
    let sigma_min = seed.center.re - seed.radius;
    let mut shifts: Vec<f64> = Vec::with_capacity(2 * omegas.found.len() + 1);
    let mut refused = 0usize;
    let mut best = f64::INFINITY;
    let mut candidates: Vec<f64> = omegas.found.iter().flat_map(|w| [*w, -*w]).collect();
    candidates.push(0.0);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    for w in candidates {
        let b = if w == 0.0 {
            0.0
        } else {
            bound_from_terms(&terms, sigma_min, w)
        };
        if b < mu {
            best = best.min(b);
            shifts.push(w);
        } else {
            refused += 1;
        }
    }
    if shifts.len() <= 1 && !omegas.found.iter().all(|w| *w == 0.0) {
        return Err(Error::CertificationRefused { epsilon: best, mu });
    }
    let kept = separate(&shifts, 2.0 * seed.radius);
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut certified = 0u64;
        let mut big = 0.0;
        for w in &kept {
            let c = seed.center + Complex64::new(0.0, *w);
            let outer = c.norm() + seed.radius;
            if outer <= r {
                certified += seed_count;
                // A solution at the origin contributes log r instead.
                let denom = if c.norm() <= seed.radius { outer.max(1.0) } else { outer };
                big += seed_count as f64 * (r / denom).ln();
            }
        }
        rows.push(RecurrenceRow {
            r,
            certified,
            integrated_lower_bound: big,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.r).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.integrated_lower_bound).collect();
    let slope = least_squares(&xs, &ys).map(|f| f.slope).unwrap_or(0.0);
    Ok(RecurrenceReport {
        seed,
        seed_count,
        mu,
        sigma_min,
        certified_shifts: kept,
        refused,
        rows,
        slope,
    })
}

/// Greedy subset of sorted `shifts` with consecutive gaps of at least `gap`,
/// always keeping `0`.
fn separate(shifts: &[f64], gap: f64) -> Vec<f64> {
    let mut up: Vec<f64> = Vec::new();
    for &w in shifts.iter().filter(|w| **w >= 0.0) {
        if up.last().map_or(w == 0.0, |l| w - l >= gap) {
            up.push(w);
        }
    }
    let mut down: Vec<f64> = Vec::new();
    for &w in shifts.iter().rev().filter(|w| **w < 0.0) {
        if down.last().map_or(-w >= gap, |l| l - w >= gap) {
            down.push(w);
        }
    }
    down.reverse();
    down.extend(up);
    down
}

/// Confirms every certified disk inside the oracle's validity disk by a
/// direct count; returns how many were checked.
pub fn confirm_by_counting(oracle: &MeromorphicOracle, a: Complex64, report: &RecurrenceReport) -> Result<usize> {
    let mut checked = 0;
    for c in report.centers() {
        if c.norm() + 2.0 * report.seed.radius > oracle.validity_radius() {
            continue;
        }
        let n = count_in_region(oracle, c, report.seed.radius, Target::Value(a), &CountOptions::default())?
            .certified_count()?;
        if n != report.seed_count {
            return Err(Error::CountMismatch {
                expected: report.seed_count,
                located: n,
            });
        }
        checked += 1;
    }
    for row in &report.rows {
        if row.r * (1.0 + 1e-3) > oracle.validity_radius() {
            continue;
        }
        let n = count_in_disk(oracle, row.r, Target::Value(a))?.certified_count()?;
        if n < row.certified {
            return Err(Error::CountMismatch {
                expected: row.certified,
                located: n,
            });
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exact_periods() {
        let f = ExponentialSum::dirichlet(&[(0.0, 1.0), (LN_2, 1.0)]).unwrap();
        let p = 2.0 * PI / LN_2;
        assert!(translation_bound(&f, 0.0, p).unwrap() < 1e-14);
        assert!(translation_bound(&f, 0.0, 3.0 * p).unwrap() < 1e-13);
        assert!((translation_bound(&f, 0.0, 0.5 * p).unwrap() - 2.0).abs() < 1e-12);
        let scan = TranslationScan {
            sigma0: 0.0,
            start: 0.0,
            end: 100.0,
            window: 10.0,
            step: 1e-3,
        };
        let t = translation_numbers(&f, 1e-3, &scan).unwrap();
        assert!(t.found.iter().any(|w| (w - p).abs() < 1e-3));
        assert!(t.max_gap < 9.1);
    }

    #[test]
    fn constant_and_growing_sums() {
        let one = ExponentialSum::dirichlet(&[(0.0, 1.0)]).unwrap();
        let scan = TranslationScan {
            sigma0: 0.0,
            start: 0.0,
            end: 1.0,
            window: 0.1,
            step: 0.01,
        };
        assert_eq!(translation_numbers(&one, 1e-12, &scan).unwrap().found.len(), 101);
        let grow = ExponentialSum::dirichlet(&[(-1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert!(translation_bound(&grow, 0.0, 1.0).is_err());
    }

    #[test]
    fn sparse_hits_are_reported() {
        let f = ExponentialSum::dirichlet(&[(0.0, 1.0), (LN_2, 1.0), (3f64.ln(), 1.0)]).unwrap();
        let scan = TranslationScan {
            sigma0: 0.0,
            start: 0.0,
            end: 200.0,
            window: 5.0,
            step: 1e-2,
        };
        match translation_numbers(&f, 0.05, &scan) {
            Err(Error::NoHitWindow { start, end, .. }) => assert!(end - start > 5.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lattice_recurrence() {
        // 1 - e^{-s} vanishes at 2πik; translation by 2π is an exact period.
        let f = ExponentialSum::dirichlet(&[(0.0, 1.0), (1.0, -1.0)]).unwrap();
        let scan = TranslationScan {
            sigma0: 0.0,
            start: 0.0,
            end: 200.0,
            window: 7.0,
            step: 1e-3,
        };
        let t = translation_numbers(&f, 1e-3, &scan).unwrap();
        let seed = Disk::new(c(0.0, 0.0), 1.0).unwrap();
        let radii: Vec<f64> = (1..=10).map(|k| 20.0 * k as f64).collect();
        let rep = rouche_recurrence(&f, c(0.0, 0.0), seed, &t, &radii).unwrap();
        assert_eq!(rep.seed_count, 1);
        for row in &rep.rows {
            // Disks of radius 1 around 2πik inside |s| ≤ r.
            let k = ((row.r - 1.0) / (2.0 * PI)).floor() as u64;
            assert_eq!(row.certified, 2 * k + 1, "r = {}", row.r);
        }
        assert!(rep.slope > 0.0);
        let oracle = MeromorphicOracle::from_sum(&f).unwrap();
        assert!(confirm_by_counting(&oracle, c(0.0, 0.0), &rep).unwrap() > 20);
    }

    #[test]
    fn refusal_when_margin_too_small() {
        let f = ExponentialSum::dirichlet(&[(0.0, 1.0), (1.0, -1.0)]).unwrap();
        let t = TranslationNumberSet {
            epsilon: 10.0,
            interval_length: 1.0,
            sigma0: 0.0,
            found: alloc::vec![2.0 * PI],
            max_gap: 0.0,
        };
        let seed = Disk::new(c(0.0, 0.0), 1.0).unwrap();
        assert!(matches!(
            rouche_recurrence(&f, c(0.0, 0.0), seed, &t, &[10.0]),
            Err(Error::CertificationRefused { .. })
        ));
    }
}
