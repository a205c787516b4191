use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::count::{count_in_disk, pole_records};
use super::integrated::origin_records_multiplicity;
use super::{locate_values, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::{MeromorphicOracle, SMALL_CIRCLE_NODES};
use crate::quadrature::{adaptive, AdaptiveOptions, GaussLegendre, QuadError};

#[derive(Debug, Clone, PartialEq)]
pub struct JensenReport {
    pub residual: f64,
    /// `log|f(0)|`, or `log|a_m| + m·log R` when the origin has order `m ≠ 0`.
    pub lhs: f64,
    pub rhs: f64,
    /// Radius actually used after the boundary protocol.
    pub radius_used: f64,
    /// Error estimate of the boundary average.
    pub quadrature_error: f64,
    pub origin_order: i32,
    pub zeros: Vec<ZeroRecord>,
    pub poles: Vec<ZeroRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonJensenReport {
    pub residual: f64,
    pub log_modulus: f64,
    pub reconstruction: f64,
    pub radius_used: f64,
    pub quadrature_error: f64,
}

struct DiskData {
    radius: f64,
    zeros: Vec<ZeroRecord>,
    poles: Vec<ZeroRecord>,
}

fn disk_data(oracle: &MeromorphicOracle, r: f64) -> Result<DiskData> {
    let zeros = locate_values(oracle, r, Target::zero())?;
    // The pole count shares the zero count's perturbation schedule, so its
    // radius is the one whose circle is clean for f'/f.
    let used = count_in_disk(oracle, r, Target::zero())?.radius_used;
    let mut poles = pole_records(oracle, used)?;
    poles.retain(|p| p.position.norm() <= used);
    Ok(DiskData {
        radius: used,
        zeros,
        poles,
    })
}

/// Boundary integral `(1/2π) ∫ w(φ)·log|f(R e^{iφ})| dφ`.
fn boundary_average<W: Fn(Complex64) -> f64>(
    oracle: &MeromorphicOracle,
    radius: f64,
    weight: W,
    tol: f64,
) -> Result<(f64, f64)> {
    let gl = GaussLegendre::new(16);
    let opts = AdaptiveOptions {
        initial_panels: 64,
        abs_tol: tol * 2.0 * PI,
        max_panels: 1 << 16,
        max_depth: 30,
        singular_fallback: true,
    };
    let r = adaptive(
        &gl,
        |t: f64| {
            let s = Complex64::from_polar(radius, t);
            let lm = oracle.log_modulus(s)?;
            // A node exactly on a zero is a measure-zero event; the tanh rule
            // never samples panel endpoints.
            let lm = if lm.is_finite() { lm } else { 0.0 };
            Ok::<_, Error>(Complex64::new(weight(s) * lm, 0.0))
        },
        0.0,
        2.0 * PI,
        &opts,
    );
    match r {
        Ok(q) => Ok((q.value.re / (2.0 * PI), q.error / (2.0 * PI))),
        Err(QuadError::Integrand(e)) => Err(e),
        Err(QuadError::NotConverged { error, .. }) => Err(Error::QuadratureFailed {
            achieved: error / (2.0 * PI),
        }),
    }
}

/// Laurent coefficient `a_m` at the origin from the trapezoid rule on a
/// circle that isolates `s = 0`.
fn origin_coefficient(oracle: &MeromorphicOracle, m: i32, rho: f64) -> Result<Complex64> {
    let n = SMALL_CIRCLE_NODES;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let t = 2.0 * PI * (j as f64 + 0.5) / n as f64;
        let s = Complex64::from_polar(rho, t);
        acc += oracle.eval(s)?.value * s.powi(-m);
    }
    Ok(acc / n as f64)
}

fn nearest_off_origin(data: &DiskData, r: f64) -> f64 {
    let tiny = 1e-8 * r.max(1.0);
    data.zeros
        .iter()
        .chain(&data.poles)
        .map(|z| z.position.norm())
        .filter(|m| *m > tiny)
        .fold(f64::INFINITY, f64::min)
}

/// `|LHS - RHS|` of Jensen's formula on `|s| = R`.
pub fn jensen_residual(oracle: &MeromorphicOracle, r: f64, quad_tol: f64) -> Result<JensenReport> {
    if !(quad_tol > 0.0) {
        return Err(Error::InvalidParameter("quadrature tolerance must be positive"));
    }
    let data = disk_data(oracle, r)?;
    let radius = data.radius;
    let m = oracle.origin_order();
    let tiny = 1e-8 * r.max(1.0);
    if m > 0 && origin_records_multiplicity(&data.zeros, r) != m as u32 {
        return Err(Error::CountMismatch {
            expected: m as u64,
            located: origin_records_multiplicity(&data.zeros, r) as u64,
        });
    }
    let lhs = if m == 0 {
        oracle.log_modulus(Complex64::new(0.0, 0.0))?
    } else {
        let rho = 0.25 * nearest_off_origin(&data, r).min(1.0).min(0.5 * radius);
        let am = origin_coefficient(oracle, m, rho)?;
        am.norm().ln() + m as f64 * radius.ln()
    };
    let (avg, qerr) = boundary_average(oracle, radius, |_| 1.0, quad_tol)?;
    let mut rhs = avg;
    for z in &data.zeros {
        let d = z.position.norm();
        if d > tiny {
            rhs -= z.multiplicity as f64 * (radius / d).ln();
        }
    }
    for p in &data.poles {
        let d = p.position.norm();
        if d > tiny {
            rhs += p.multiplicity as f64 * (radius / d).ln();
        }
    }
    Ok(JensenReport {
        residual: (lhs - rhs).abs(),
        lhs,
        rhs,
        radius_used: radius,
        quadrature_error: qerr,
        origin_order: m,
        zeros: data.zeros,
        poles: data.poles,
    })
}

fn blaschke(r: f64, s: Complex64, a: Complex64) -> f64 {
    let num = Complex64::new(r * r, 0.0) - a.conj() * s;
    (num.norm() / (r * (s - a).norm())).ln()
}

/// `|log|f(s)| - reconstruction|` of the Poisson–Jensen formula on `|s| < R`.
pub fn poisson_jensen_residual(oracle: &MeromorphicOracle, s: Complex64, r: f64) -> Result<PoissonJensenReport> {
    if !(s.norm() < r) {
        return Err(Error::InvalidParameter("the point must lie inside the disk"));
    }
    let data = disk_data(oracle, r)?;
    let radius = data.radius;
    let log_modulus = oracle.log_modulus(s)?;
    if !log_modulus.is_finite() {
        return Err(Error::PreconditionFailed("f(s) must be finite and nonzero"));
    }
    let kernel = |z: Complex64| ((z + s) / (z - s)).re;
    let (avg, qerr) = boundary_average(oracle, radius, kernel, 1e-11)?;
    let mut rec = avg;
    for z in &data.zeros {
        rec -= z.multiplicity as f64 * blaschke(radius, s, z.position);
    }
    for p in &data.poles {
        rec += p.multiplicity as f64 * blaschke(radius, s, p.position);
    }
    Ok(PoissonJensenReport {
        residual: (log_modulus - rec).abs(),
        log_modulus,
        reconstruction: rec,
        radius_used: radius,
        quadrature_error: qerr,
    })
}
