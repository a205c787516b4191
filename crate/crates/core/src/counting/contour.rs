//! Contour integrals of `f'/(f - a)` along circles and segments.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::oracle::{safe_div, MeromorphicOracle};
use crate::quadrature::{adaptive, AdaptiveOptions, GaussLegendre, QuadError};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum ContourError {
    /// The contour passes too close to a zero or pole.
    Near,
    Oracle(Error),
    NotConverged(f64),
}

impl From<Error> for ContourError {
    fn from(e: Error) -> Self {
        ContourError::Oracle(e)
    }
}

impl From<QuadError<ContourError>> for ContourError {
    fn from(e: QuadError<ContourError>) -> Self {
        match e {
            QuadError::Integrand(e) => e,
            QuadError::NotConverged { error, .. } => ContourError::NotConverged(error),
        }
    }
}

/// Logarithmic derivative of `f - a` with a proximity guard.
pub(crate) struct LogDerivative<'a> {
    pub oracle: &'a MeromorphicOracle,
    /// `None` means `a = 0` (or poles), which uses the oracle's own `f'/f`.
    pub target: Option<Complex64>,
    /// Distance below which `1/|f'/(f-a)|` flags a nearby zero or pole.
    pub near: f64,
}

impl<'a> LogDerivative<'a> {
    pub fn new(oracle: &'a MeromorphicOracle, target: Complex64, near: f64) -> Self {
        let target = if target == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(target)
        };
        Self { oracle, target, near }
    }

    pub fn at(&self, s: Complex64) -> Result<Complex64, ContourError> {
        let l = match self.target {
            None => self.oracle.log_derivative(s)?,
            Some(a) => {
                let (v, d) = self.oracle.value_and_derivative(s)?;
                safe_div(d.value, v.value - a)
            }
        };
        if !l.re.is_finite() || !l.im.is_finite() || l.norm() * self.near > 1.0 {
            return Err(ContourError::Near);
        }
        Ok(l)
    }
}

pub(crate) fn rule() -> GaussLegendre {
    GaussLegendre::new(16)
}

/// Raw winding `(1/2πi) ∮ f'/(f-a) ds` on `|s - center| = radius`, with the
/// accumulated quadrature error.
pub(crate) fn circle_winding(
    gl: &GaussLegendre,
    ld: &LogDerivative<'_>,
    center: Complex64,
    radius: f64,
    tol: f64,
    max_panels: usize,
) -> Result<(f64, f64), ContourError> {
    let opts = AdaptiveOptions {
        initial_panels: 32,
        abs_tol: tol * 2.0 * PI,
        max_panels,
        max_depth: 40,
        singular_fallback: false,
    };
    let r = adaptive(
        gl,
        |t: f64| {
            let e = Complex64::from_polar(radius, t);
            Ok::<_, ContourError>(ld.at(center + e)? * e)
        },
        0.0,
        2.0 * PI,
        &opts,
    )?;
    Ok((r.value.re / (2.0 * PI), r.error / (2.0 * PI)))
}

/// `∫_{z0}^{z1} f'/(f-a) ds` along the straight segment.
pub(crate) fn segment_integral(
    gl: &GaussLegendre,
    ld: &LogDerivative<'_>,
    z0: Complex64,
    z1: Complex64,
    abs_tol: f64,
) -> Result<Complex64, ContourError> {
    let dz = z1 - z0;
    let opts = AdaptiveOptions {
        initial_panels: 4,
        abs_tol,
        max_panels: 1 << 12,
        max_depth: 40,
        singular_fallback: false,
    };
    let r = adaptive(gl, |t: f64| Ok::<_, ContourError>(ld.at(z0 + dz * t)? * dz), 0.0, 1.0, &opts)?;
    Ok(r.value)
}
