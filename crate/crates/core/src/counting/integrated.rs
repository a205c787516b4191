use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::count::{count_in_disk, pole_records};
use super::{locate_values, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;

/// Both estimates of `N(r, a; f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratedCount {
    /// `Σ log(r/|αₖ|) + n(0)·log r` over the located solutions.
    pub zero_sum: f64,
    /// `∫₀ʳ (n(t) - n(0))/t dt + n(0)·log r` from counts alone, with the
    /// jumps of `n` found by bisection.
    pub step_integral: f64,
    pub discrepancy: f64,
    pub origin_multiplicity: u32,
}

/// Records closer to the origin than this (relative to `max(1, r)`) are
/// treated as solutions at `s = 0`.
const ORIGIN_RADIUS: f64 = 1e-8;
/// Relative width at which a jump of `n(t)` is considered located.
const JUMP_RESOLUTION: f64 = 1e-7;
const LOG_GRID: usize = 32;

/// Multiplicity of `a` at the origin.
pub(crate) fn origin_multiplicity(oracle: &MeromorphicOracle, target: Target) -> Result<u32> {
    match target {
        Target::Infinity => Ok((-oracle.origin_order()).max(0) as u32),
        Target::Value(a) if a == Complex64::new(0.0, 0.0) => Ok(oracle.origin_order().max(0) as u32),
        Target::Value(a) => {
            if oracle.origin_order() < 0 {
                return Ok(0);
            }
            let v = oracle.eval(Complex64::new(0.0, 0.0))?;
            if (v.value - a).norm() <= (v.error + 1e-12 * a.norm()).max(f64::MIN_POSITIVE) {
                Err(Error::MissingOriginOrder)
            } else {
                Ok(0)
            }
        }
    }
}

/// `Σ_{0<|α|≤r} m·log(r/|α|) + n0·log r`; origin records are skipped in the
/// sum since `n0` already accounts for them.
pub fn zero_sum_from_records(records: &[ZeroRecord], r: f64, n0: u32) -> f64 {
    let tiny = ORIGIN_RADIUS * r.max(1.0);
    let mut acc = n0 as f64 * r.ln();
    for z in records {
        let m = z.position.norm();
        if m > tiny {
            acc += z.multiplicity as f64 * (r / m).ln();
        }
    }
    acc
}

pub(crate) fn origin_records_multiplicity(records: &[ZeroRecord], r: f64) -> u32 {
    let tiny = ORIGIN_RADIUS * r.max(1.0);
    records
        .iter()
        .filter(|z| z.position.norm() <= tiny)
        .map(|z| z.multiplicity)
        .sum()
}

/// `N(r, a; f)` by both estimators.
pub fn integrated_count(oracle: &MeromorphicOracle, r: f64, target: Target) -> Result<IntegratedCount> {
    let n0 = origin_multiplicity(oracle, target)?;
    let records = match target {
        Target::Infinity => {
            let used = count_in_disk(oracle, r, target)?.radius_used;
            let mut p = pole_records(oracle, used)?;
            p.retain(|z| z.position.norm() <= used);
            p
        }
        Target::Value(_) => locate_values(oracle, r, target)?,
    };
    let at_origin = origin_records_multiplicity(&records, r);
    if at_origin != n0 {
        return Err(Error::CountMismatch {
            expected: n0 as u64,
            located: at_origin as u64,
        });
    }
    let zero_sum = zero_sum_from_records(&records, r, n0);
    let step_integral = step_integral(oracle, r, target, n0)?;
    Ok(IntegratedCount {
        zero_sum,
        step_integral,
        discrepancy: (zero_sum - step_integral).abs(),
        origin_multiplicity: n0,
    })
}

fn n_at(oracle: &MeromorphicOracle, t: f64, target: Target) -> Result<u64> {
    count_in_disk(oracle, t, target)?.certified_count()
}

fn step_integral(oracle: &MeromorphicOracle, r: f64, target: Target, n0: u32) -> Result<f64> {
    let t_min = r * 1e-6;
    let grid: Vec<f64> = (0..LOG_GRID)
        .map(|i| t_min * (r / t_min).powf(i as f64 / (LOG_GRID - 1) as f64))
        .collect();
    let mut counts = Vec::with_capacity(grid.len());
    for &t in &grid {
        counts.push(n_at(oracle, t, target)?);
    }
    let mut jumps: Vec<(f64, u64)> = Vec::new();
    if counts[0] > n0 as u64 {
        // Solutions inside the smallest circle but off the origin.
        jumps.push((0.5 * t_min, counts[0] - n0 as u64));
    }
    for i in 1..grid.len() {
        bisect_jumps(oracle, target, grid[i - 1], counts[i - 1], grid[i], counts[i], &mut jumps)?;
    }
    let mut acc = n0 as f64 * r.ln();
    for (t, k) in jumps {
        acc += k as f64 * (r / t).ln();
    }
    Ok(acc)
}

fn bisect_jumps(
    oracle: &MeromorphicOracle,
    target: Target,
    lo: f64,
    n_lo: u64,
    hi: f64,
    n_hi: u64,
    out: &mut Vec<(f64, u64)>,
) -> Result<()> {
    if n_hi <= n_lo {
        return Ok(());
    }
    if hi - lo <= JUMP_RESOLUTION * hi {
        out.push((0.5 * (lo + hi), n_hi - n_lo));
        return Ok(());
    }
    let mid = 0.5 * (lo + hi);
    let n_mid = n_at(oracle, mid, target)?;
    bisect_jumps(oracle, target, lo, n_lo, mid, n_mid.min(n_hi).max(n_lo), out)?;
    bisect_jumps(oracle, target, mid, n_mid.min(n_hi).max(n_lo), hi, n_hi, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::as_oracle;
    use crate::series::ExponentialSum;
    use core::f64::consts::{LN_2, PI};

    fn sum(pairs: &[(f64, f64)]) -> MeromorphicOracle {
        as_oracle(&ExponentialSum::dirichlet(pairs).unwrap()).unwrap()
    }

    #[test]
    fn origin_zero_and_boundary_pair() {
        let f = sum(&[(0.0, 1.0), (1.0, -1.0)]);
        let n = integrated_count(&f, 2.0 * PI, Target::zero()).unwrap();
        assert_eq!(n.origin_multiplicity, 1);
        assert!((n.zero_sum - (2.0 * PI).ln()).abs() < 1e-6, "{}", n.zero_sum);
    }

    #[test]
    fn two_estimators_agree() {
        let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
        let n = integrated_count(&f, 10.0, Target::zero()).unwrap();
        let expect = 2.0 * (10.0 * LN_2 / PI).ln();
        assert!((n.zero_sum - expect).abs() < 1e-9);
        assert!(n.discrepancy <= 0.02 * n.zero_sum.abs());
    }

    #[test]
    fn zero_free_disk_gives_zero() {
        let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
        let n = integrated_count(&f, 3.0, Target::zero()).unwrap();
        assert_eq!(n.zero_sum, 0.0);
        assert_eq!(n.step_integral, 0.0);
    }

    #[test]
    fn a_point_at_origin_needs_its_order() {
        let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
        assert_eq!(
            integrated_count(&f, 3.0, Target::Value(Complex64::new(2.0, 0.0))),
            Err(Error::MissingOriginOrder)
        );
    }
}
