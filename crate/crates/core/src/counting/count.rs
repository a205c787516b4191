use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::contour::{circle_winding, rule, ContourError, LogDerivative};
use super::{lex_cmp, locate_values, RecordKind, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::{trapezoid_winding, MeromorphicOracle, OracleKind};

/// Knobs of the argument-principle count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountOptions {
    /// Absolute tolerance on the winding number of the first pass; the
    /// confirming pass uses a hundredth of it.
    pub tol: f64,
    /// A contour point whose Newton distance `|f-a|/|f'|` is below
    /// `proximity · r` counts as hitting a zero or pole.
    pub proximity: f64,
    /// Relative outward step of the first retry; later retries double it.
    pub delta: f64,
    pub max_retries: u32,
    pub max_panels: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            proximity: 1e-7,
            delta: 1e-6,
            max_retries: 24,
            max_panels: 1 << 14,
        }
    }
}

/// Outcome of a count on a closed disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountResult {
    /// Solutions of `f = a` with multiplicity, or poles when the target is ∞.
    pub count: u64,
    /// Poles inside the disk, with multiplicity.
    pub poles: u64,
    /// Raw winding number of `f - a` on the circle actually used.
    pub winding: f64,
    pub radius: f64,
    /// First radius of the outward retry schedule whose circle was clean.
    pub radius_used: f64,
    pub retries: u32,
    pub certified: bool,
}

impl CountResult {
    /// The count, or an error when the winding did not settle on an integer.
    pub fn certified_count(&self) -> Result<u64> {
        if self.certified {
            Ok(self.count)
        } else {
            Err(Error::Uncertified {
                radius: self.radius_used,
                winding: self.winding,
            })
        }
    }
}

/// Counts solutions of `f = a` (or poles) in `|s| ≤ r`.
pub fn count_in_disk(oracle: &MeromorphicOracle, r: f64, target: Target) -> Result<CountResult> {
    count_in_region(oracle, Complex64::new(0.0, 0.0), r, target, &CountOptions::default())
}

pub fn count_in_disk_with(
    oracle: &MeromorphicOracle,
    r: f64,
    target: Target,
    opts: &CountOptions,
) -> Result<CountResult> {
    count_in_region(oracle, Complex64::new(0.0, 0.0), r, target, opts)
}

/// Counts solutions of `f = a` (or poles) in `|s - center| ≤ r`.
pub fn count_in_region(
    oracle: &MeromorphicOracle,
    center: Complex64,
    r: f64,
    target: Target,
    opts: &CountOptions,
) -> Result<CountResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter("count radius must be positive and finite"));
    }
    let a = match target {
        Target::Value(a) => a,
        Target::Infinity => Complex64::new(0.0, 0.0),
    };
    let gl = rule();
    let mut last_radius = r;
    for k in 0..=opts.max_retries {
        let rk = if k == 0 {
            r
        } else {
            r * (1.0 + opts.delta * (1u64 << (k - 1)) as f64)
        };
        if center.norm() + rk > oracle.validity_radius() {
            return Err(Error::OutsideValidity {
                modulus: center.norm() + rk,
                radius: oracle.validity_radius(),
            });
        }
        last_radius = rk;
        let ld = LogDerivative::new(oracle, a, opts.proximity * rk);
        let first = match circle_winding(&gl, &ld, center, rk, opts.tol, opts.max_panels) {
            Ok((w, _)) => w,
            Err(ContourError::Near) | Err(ContourError::NotConverged(_)) => continue,
            Err(ContourError::Oracle(e)) => return Err(e),
        };
        let second = match circle_winding(&gl, &ld, center, rk, opts.tol * 0.01, opts.max_panels) {
            Ok((w, _)) => w,
            Err(ContourError::Near) | Err(ContourError::NotConverged(_)) => continue,
            Err(ContourError::Oracle(e)) => return Err(e),
        };
        let wk = second.round();
        let certified = first.round() == wk && (second - wk).abs() < 0.25;
        let poles = poles_in(oracle, center, rk)?;
        let zeros = wk as i64 + poles as i64;
        let certified = certified && zeros >= 0;
        let count = match target {
            Target::Value(_) => zeros.max(0) as u64,
            Target::Infinity => poles,
        };
        return Ok(CountResult {
            count,
            poles,
            winding: second,
            radius: r,
            radius_used: rk,
            retries: k,
            certified,
        });
    }
    Ok(CountResult {
        count: 0,
        poles: 0,
        winding: f64::NAN,
        radius: r,
        radius_used: last_radius,
        retries: opts.max_retries,
        certified: false,
    })
}

fn poles_in(oracle: &MeromorphicOracle, center: Complex64, r: f64) -> Result<u64> {
    if let Some(list) = oracle.declared_poles(center.norm() + r) {
        return Ok(list
            .iter()
            .filter(|p| (p.position - center).norm() <= r)
            .map(|p| p.order as u64)
            .sum());
    }
    let recs = pole_records(oracle, center.norm() + r)?;
    Ok(recs
        .iter()
        .filter(|p| (p.position - center).norm() <= r)
        .map(|p| p.multiplicity as u64)
        .sum())
}

/// Poles in `|s| ≤ r`, declared ones directly and composite ones from the
/// net order at every candidate (poles of numerators and factors, zeros of
/// denominators).
pub fn pole_records(oracle: &MeromorphicOracle, r: f64) -> Result<Vec<ZeroRecord>> {
    let mut out = Vec::new();
    if let Some(list) = oracle.declared_poles(r) {
        let positions: Vec<Complex64> = list.iter().map(|p| p.position).collect();
        for p in &list {
            let rho = isolation_radius(p.position, &positions);
            out.push(pole_record(oracle, p.position, p.order, rho));
        }
        out.sort_by(|a, b| lex_cmp(&a.position, &b.position));
        return Ok(out);
    }
    let mut cand = pole_candidates(oracle, r)?;
    cand.sort_by(lex_cmp);
    let mut uniq: Vec<Complex64> = Vec::new();
    for p in cand {
        if !uniq.iter().any(|q| (p - *q).norm() <= 1e-9 * p.norm().max(1.0)) {
            uniq.push(p);
        }
    }
    for &p in &uniq {
        let rho = isolation_radius(p, &uniq);
        let w = trapezoid_winding(oracle, p, rho)?;
        let k = w.round();
        if (w - k).abs() > 0.25 {
            return Err(Error::Uncertified { radius: rho, winding: w });
        }
        if k < 0.0 {
            out.push(pole_record(oracle, p, (-k) as u32, rho));
        }
    }
    out.sort_by(|a, b| lex_cmp(&a.position, &b.position));
    Ok(out)
}

fn isolation_radius(p: Complex64, others: &[Complex64]) -> f64 {
    let gap = others
        .iter()
        .filter(|q| **q != p)
        .map(|q| (p - *q).norm())
        .fold(f64::INFINITY, f64::min);
    (1e-4 * p.norm().max(1.0)).min(0.3 * gap)
}

fn pole_record(oracle: &MeromorphicOracle, p: Complex64, order: u32, rho: f64) -> ZeroRecord {
    let residual = match oracle.eval(p) {
        Ok(e) if e.value.norm().is_finite() && e.value.norm() > 0.0 => 1.0 / e.value.norm(),
        _ => 0.0,
    };
    ZeroRecord {
        position: p,
        multiplicity: order,
        kind: RecordKind::Pole,
        certification_radius: rho,
        residual,
        cluster: false,
    }
}

fn pole_candidates(oracle: &MeromorphicOracle, r: f64) -> Result<Vec<Complex64>> {
    if let Some(list) = oracle.declared_poles(r) {
        return Ok(list.iter().map(|p| p.position).collect());
    }
    match oracle.kind() {
        OracleKind::ScaleExp { base, .. } => pole_candidates(base, r),
        OracleKind::Shift { base, offset } => Ok(pole_candidates(base, r + offset.norm())?
            .into_iter()
            .map(|p| p - offset)
            .filter(|p| p.norm() <= r)
            .collect()),
        OracleKind::Quotient { numer, denom } => {
            let mut c = pole_candidates(numer, r)?;
            for z in locate_values(denom, r, Target::zero())? {
                c.push(z.position);
            }
            Ok(c)
        }
        OracleKind::Product(factors) => {
            let mut c = Vec::new();
            for f in factors {
                c.extend(pole_candidates(f, r)?);
            }
            Ok(c)
        }
        _ => Ok(Vec::new()),
    }
}
