//! Finite (optionally tail-bounded) exponential sums `Σ aₙ e^{∓λₙ s}`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::CompensatedSum;

/// How the exponent enters each term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// `a · e^{-λ s}`, the general Dirichlet series form.
    Dirichlet,
    /// `a · e^{+λ s}`.
    Exponential,
}

impl SignConvention {
    fn sign(self) -> f64 {
        match self {
            SignConvention::Dirichlet => -1.0,
            SignConvention::Exponential => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub lambda: f64,
    pub coeff: Complex64,
}

impl Term {
    pub fn new(lambda: f64, coeff: Complex64) -> Self {
        Self { lambda, coeff }
    }

    pub fn real(lambda: f64, coeff: f64) -> Self {
        Self::new(lambda, Complex64::new(coeff, 0.0))
    }
}

/// Bound on the omitted terms `n > N` of a truncated infinite series:
/// `|aₙ| ≤ coeff_bound` and `λₙ ≥ growth_floor · ln n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub coeff_bound: f64,
    pub growth_floor: f64,
}

/// Margin kept between the evaluation point and the tail's abscissa `1/κ`.
const TAIL_MARGIN: f64 = 0.05;

/// An exponential sum with strictly increasing exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    terms: Vec<Term>,
    convention: SignConvention,
    tail: Option<TailBound>,
}

impl ExponentialSum {
    /// Validates and builds a sum. Exponents must be finite and strictly
    /// increasing, and at least one coefficient must be nonzero.
    pub fn new(terms: Vec<Term>, convention: SignConvention) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (i, t) in terms.iter().enumerate() {
            if !t.lambda.is_finite() || !t.coeff.re.is_finite() || !t.coeff.im.is_finite() {
                return Err(Error::NonFiniteTerm { index: i });
            }
            if i > 0 && t.lambda <= terms[i - 1].lambda {
                return Err(Error::NonIncreasingExponents { index: i });
            }
        }
        if terms.iter().all(|t| t.coeff == Complex64::new(0.0, 0.0)) {
            return Err(Error::AllZeroCoefficients);
        }
        Ok(Self {
            terms,
            convention,
            tail: None,
        })
    }

    /// Dirichlet-form shorthand for real coefficients: `[(λ, a), ...]`.
    pub fn dirichlet(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs.iter().map(|&(l, a)| Term::real(l, a)).collect(),
            SignConvention::Dirichlet,
        )
    }

    pub fn with_tail_bound(mut self, tail: TailBound) -> Result<Self> {
        if !(tail.coeff_bound >= 0.0) || !(tail.growth_floor > 0.0) {
            return Err(Error::InvalidParameter("tail bound needs coeff_bound ≥ 0 and growth_floor > 0"));
        }
        self.tail = Some(tail);
        Ok(self)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    pub fn tail_bound(&self) -> Option<TailBound> {
        self.tail
    }

    /// First term with a nonzero coefficient, `(λ₁, a₁)` after normalization.
    pub fn leading(&self) -> Term {
        *self
            .terms
            .iter()
            .find(|t| t.coeff != Complex64::new(0.0, 0.0))
            .expect("validated sums have a nonzero coefficient")
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| t.coeff != Complex64::new(0.0, 0.0))
    }

    /// A single nonzero term `a·e^{∓λs}`, which has neither zeros nor poles.
    pub fn is_trivial(&self) -> bool {
        self.tail.is_none() && self.nonzero_terms().count() < 2
    }

    pub fn max_abs_lambda(&self) -> f64 {
        self.nonzero_terms().map(|t| t.lambda.abs()).fold(0.0, f64::max)
    }

    /// Limit as `Re(s) → +∞`, when it exists and is finite.
    pub fn limit_at_plus_infinity(&self) -> Option<Complex64> {
        self.limit_after_scaling(0.0)
    }

    /// Limit of `e^{shift·s} f(s)` as `Re(s) → +∞`.
    pub(crate) fn limit_after_scaling(&self, shift: f64) -> Option<Complex64> {
        if self.tail.is_some() && self.convention == SignConvention::Exponential {
            return None;
        }
        let sign = self.convention.sign();
        // Effective growth rate of each term along the positive real axis.
        let mut limit = Complex64::new(0.0, 0.0);
        for t in self.nonzero_terms() {
            let rate = sign * t.lambda + shift;
            if rate > 0.0 {
                return None;
            }
            if rate == 0.0 {
                limit += t.coeff;
            }
        }
        if self.tail.is_some() && shift > 0.0 {
            return None;
        }
        Some(limit)
    }

    /// Real part of `s` seen by the decaying direction of the series.
    fn effective_sigma(&self, s: Complex64) -> f64 {
        match self.convention {
            SignConvention::Dirichlet => s.re,
            SignConvention::Exponential => -s.re,
        }
    }

    fn check_tail(&self, s: Complex64) -> Result<Option<(TailBound, f64)>> {
        let Some(tail) = self.tail else {
            return Ok(None);
        };
        let sigma = self.effective_sigma(s);
        let min_sigma = (1.0 + TAIL_MARGIN) / tail.growth_floor;
        if sigma <= min_sigma {
            return Err(Error::OutsideConvergence { sigma, min_sigma });
        }
        Ok(Some((tail, sigma)))
    }

    /// Evaluates the sum at `s`, failing if the error bound exceeds `tol`.
    pub fn evaluate(&self, s: Complex64, tol: f64) -> Result<crate::Evaluation> {
        let e = self.evaluate_unchecked(s)?;
        if e.error > tol {
            return Err(Error::ToleranceUnattainable {
                requested: tol,
                achievable: e.error,
            });
        }
        Ok(e)
    }

    /// Termwise derivative `Σ (∓λₙ) aₙ e^{∓λₙ s}`, failing if the bound exceeds `tol`.
    pub fn derivative(&self, s: Complex64, tol: f64) -> Result<crate::Evaluation> {
        let (_, d) = self.value_and_derivative(s)?;
        if d.error > tol {
            return Err(Error::ToleranceUnattainable {
                requested: tol,
                achievable: d.error,
            });
        }
        Ok(d)
    }

    pub(crate) fn evaluate_unchecked(&self, s: Complex64) -> Result<crate::Evaluation> {
        Ok(self.value_and_derivative(s)?.0)
    }

    /// Value and derivative with rounding (and tail) error bounds.
    pub fn value_and_derivative(
        &self,
        s: Complex64,
    ) -> Result<(crate::Evaluation, crate::Evaluation)> {
        let tail = self.check_tail(s)?;
        let sign = self.convention.sign();
        let mut value = CompensatedSum::default();
        let mut deriv = CompensatedSum::default();
        let mut value_mag = 0.0;
        let mut deriv_mag = 0.0;
        let n = self.terms.len() as f64;
        for t in &self.terms {
            if t.coeff == Complex64::new(0.0, 0.0) {
                continue;
            }
            let arg = s * (sign * t.lambda);
            let term = t.coeff * arg.exp();
            // Relative error of exp(arg) grows with |arg| through argument rounding.
            let rel = f64::EPSILON * (arg.norm() + n + 4.0);
            let mag = term.norm();
            value.add(term);
            value_mag += mag * rel;
            let dterm = term * (sign * t.lambda);
            deriv.add(dterm);
            deriv_mag += dterm.norm() * (rel + f64::EPSILON);
        }
        let mut value_err = value_mag;
        let mut deriv_err = deriv_mag;
        if let Some((tb, sigma)) = tail {
            let (tv, td) = tail_estimates(tb, self.terms.len(), sigma)?;
            value_err += tv;
            deriv_err += td;
        }
        Ok((
            crate::Evaluation::new(value.total(), value_err),
            crate::Evaluation::new(deriv.total(), deriv_err),
        ))
    }

    /// Taylor coefficient `f^{(k)}(0) / k!` and the magnitude scale used to
    /// judge whether it vanishes.
    pub(crate) fn taylor_at_origin(&self, k: u32) -> (Complex64, f64) {
        let sign = self.convention.sign();
        let mut fact = 1.0;
        for j in 1..=k {
            fact *= j as f64;
        }
        let mut c = CompensatedSum::default();
        let mut scale = 0.0;
        for t in self.nonzero_terms() {
            let p = (sign * t.lambda).powi(k as i32) / fact;
            c.add(t.coeff * p);
            scale += t.coeff.norm() * (t.lambda.abs().max(1.0)).powi(k as i32) / fact;
        }
        (c.total(), scale)
    }
}

/// Tail bounds for value and derivative at effective real part `sigma`.
fn tail_estimates(tb: TailBound, kept: usize, sigma: f64) -> Result<(f64, f64)> {
    let n = kept.max(1) as f64;
    let p = tb.growth_floor * sigma;
    // Σ_{m>N} m^{-p} ≤ N^{1-p}/(p-1)
    let value = tb.coeff_bound * n.powf(1.0 - p) / (p - 1.0);
    // λ e^{-λσ} is decreasing once λ ≥ 1/σ; the floor κ ln m must clear it.
    let ln_n = n.ln();
    if tb.growth_floor * ln_n < 1.0 / sigma || ln_n < 1.0 / p {
        return Err(Error::OutsideConvergence {
            sigma,
            min_sigma: 1.0 / (tb.growth_floor * ln_n.max(f64::MIN_POSITIVE)),
        });
    }
    let deriv = tb.coeff_bound
        * tb.growth_floor
        * n.powf(1.0 - p)
        * (ln_n / (p - 1.0) + 1.0 / ((p - 1.0) * (p - 1.0)));
    Ok((value, deriv))
}
