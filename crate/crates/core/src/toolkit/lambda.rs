use num_complex::Complex64;

use crate::counting::{count_in_disk, Target};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;

pub const DEFAULT_TAU: f64 = 0.1;

/// `Λf(s) = f(s + τ) / f(s)`; the validity radius shrinks by `τ`.
pub fn lambda_apply(oracle: &MeromorphicOracle, tau: f64) -> Result<MeromorphicOracle> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter("tau must be positive and finite"));
    }
    let shifted = MeromorphicOracle::shift(oracle, Complex64::new(tau, 0.0))?;
    MeromorphicOracle::quotient(&shifted, oracle)
}

/// `Λᵈ f`, built by repeated composition.
pub fn lambda_iterate(oracle: &MeromorphicOracle, tau: f64, d: u32) -> Result<MeromorphicOracle> {
    let mut f = oracle.clone();
    for _ in 0..d {
        f = lambda_apply(&f, tau)?;
    }
    Ok(f)
}

/// Whether `f` has neither zeros nor poles in `|s| ≤ 2dτ`, the condition
/// under which the iterates stay well defined near the origin.
pub fn tau_admissible(oracle: &MeromorphicOracle, tau: f64, d: u32) -> Result<bool> {
    let r = 2.0 * d.max(1) as f64 * tau;
    let zeros = count_in_disk(oracle, r, Target::zero())?.certified_count()?;
    let poles = count_in_disk(oracle, r, Target::Infinity)?.certified_count()?;
    Ok(zeros == 0 && poles == 0)
}
