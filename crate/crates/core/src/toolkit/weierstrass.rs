use core::f64::consts::LN_2;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;

/// Entire oracle `Π (1 - s/w) e^{s/w}` vanishing exactly at `zeros`.
pub fn weierstrass_oracle(zeros: &[Complex64]) -> Result<MeromorphicOracle> {
    MeromorphicOracle::weierstrass(zeros.to_vec())
}

/// Both sides of the growth estimate for a genus-one product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound {
    /// `log |Π(s)|`, `-∞` when `s` is one of the zeros.
    pub lhs: f64,
    /// `4(2 + log 2)(A + B)`.
    pub rhs: f64,
    /// `A = |s| ∫₀^{|s|} n(t)/t² dt`.
    pub inner: f64,
    /// `B = |s|² ∫_{|s|}^∞ n(t)/t³ dt`.
    pub outer: f64,
    pub at_zero: bool,
}

impl GrowthBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Evaluates `log|Π(s)| ≤ 4(2 + log 2)(A + B)` with the integrals in closed
/// form for the step function `n(t)` of a finite zero list.
pub fn growth_bound_check(zeros: &[Complex64], s: Complex64) -> Result<GrowthBound> {
    let r = s.norm();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter("growth bound needs 0 < |s| < ∞"));
    }
    if zeros.iter().any(|w| w.norm() == 0.0) {
        return Err(Error::ZeroAtOrigin);
    }
    let mut inner = 0.0;
    let mut outer = 0.0;
    let mut lhs = 0.0;
    let mut at_zero = false;
    for &w in zeros {
        let m = w.norm();
        // ∫_{m}^{r} t^{-2} dt and ∫_{max(m,r)}^∞ t^{-3} dt
        if m <= r {
            inner += 1.0 / m - 1.0 / r;
        }
        let top = m.max(r);
        outer += 0.5 / (top * top);
        let u = s / w;
        let f = Complex64::new(1.0, 0.0) - u;
        if f.norm() == 0.0 {
            at_zero = true;
        } else {
            lhs += f.norm().ln() + u.re;
        }
    }
    let inner = r * inner;
    let outer = r * r * outer;
    Ok(GrowthBound {
        lhs: if at_zero { f64::NEG_INFINITY } else { lhs },
        rhs: 4.0 * (2.0 + LN_2) * (inner + outer),
        inner,
        outer,
        at_zero,
    })
}
