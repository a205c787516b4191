//! Meromorphic oracles: a uniform evaluation interface over exponential sums,
//! closed forms and their compositions.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::series::ExponentialSum;
use crate::Evaluation;

/// Largest derivative order probed when resolving the order at the origin.
pub const MAX_ORIGIN_ORDER: u32 = 8;
/// Relative threshold below which a Taylor coefficient counts as zero.
pub const ORIGIN_THRESHOLD: f64 = 1e-9;
/// Default validity radius of the zeta oracle.
pub const ZETA_DEFAULT_RADIUS: f64 = 35.0;
/// Exponent magnitude kept clear of overflow by the validity radii.
const EXP_HEADROOM: f64 = 700.0;

/// How an oracle evaluates; composites hold their operands.
#[derive(Debug, Clone)]
pub enum OracleKind {
    Sum(ExponentialSum),
    /// `1 / (1 - e^{-s})`.
    Geometric,
    Zeta,
    Constant(Complex64),
    /// Coefficients in ascending degree.
    Polynomial(Vec<Complex64>),
    /// `exp(Q(s))`, coefficients of `Q` in ascending degree.
    ExpPolynomial(Vec<Complex64>),
    /// Genus-one product `Π (1 - s/w) e^{s/w}`.
    Weierstrass(Vec<Complex64>),
    /// `base(s + offset)`.
    Shift {
        base: MeromorphicOracle,
        offset: Complex64,
    },
    Quotient {
        numer: MeromorphicOracle,
        denom: MeromorphicOracle,
    },
    Product(Vec<MeromorphicOracle>),
    /// `e^{λ s} · base(s)`.
    ScaleExp {
        base: MeromorphicOracle,
        lambda: f64,
    },
}

/// A pole declared in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub position: Complex64,
    pub order: u32,
}

/// Immutable, cheaply clonable meromorphic function.
#[derive(Debug, Clone)]
pub struct MeromorphicOracle {
    kind: Arc<OracleKind>,
    validity_radius: f64,
    origin_order: i32,
    limit: Option<Complex64>,
    declared_order: Option<f64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `1 - e^{-s}` without cancellation near the origin.
fn one_minus_exp_neg(s: Complex64) -> Complex64 {
    if s.norm() < 0.5 {
        // s - s²/2! + s³/3! - ...
        let mut term = s;
        let mut sum = s;
        for k in 2..30 {
            term *= -s / k as f64;
            sum += term;
        }
        sum
    } else {
        c(1.0, 0.0) - (-s).exp()
    }
}

/// `a / b` with both operands rescaled first, so values near the overflow
/// threshold still divide cleanly.
pub(crate) fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let k = b.re.abs().max(b.im.abs());
    if k > 0.0 && k.is_finite() {
        (a / k) / (b / k)
    } else {
        a / b
    }
}

fn horner(coeffs: &[Complex64], s: Complex64) -> (Complex64, Complex64) {
    let mut p = c(0.0, 0.0);
    let mut d = c(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        d = d * s + p;
        p = p * s + a;
    }
    (p, d)
}

fn coeff_magnitude(coeffs: &[Complex64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

impl MeromorphicOracle {
    fn build(kind: OracleKind, validity_radius: f64) -> Result<Self> {
        let oracle = Self {
            kind: Arc::new(kind),
            validity_radius,
            origin_order: 0,
            limit: None,
            declared_order: None,
        };
        if !(validity_radius > 0.0) {
            return Err(Error::ValidityExhausted);
        }
        Ok(oracle)
    }

    /// Entire oracle for a finite exponential sum.
    pub fn from_sum(sum: &ExponentialSum) -> Result<Self> {
        if sum.tail_bound().is_some() {
            return Err(Error::PreconditionFailed(
                "an oracle needs a finite sum; tail-bounded series only evaluate in their half-plane",
            ));
        }
        let max_l = sum.max_abs_lambda();
        let validity = if max_l > 0.0 {
            EXP_HEADROOM / max_l
        } else {
            f64::INFINITY
        };
        let order = sum_origin_order(sum)?;
        let mut o = Self::build(OracleKind::Sum(sum.clone()), validity)?;
        o.origin_order = order;
        o.limit = sum.limit_at_plus_infinity();
        o.declared_order = Some(if sum.is_trivial() && max_l == 0.0 { 0.0 } else { 1.0 });
        Ok(o)
    }

    /// `1 / (1 - e^{-s})`, with simple poles at `2πik`.
    pub fn geometric() -> Self {
        let mut o = Self::build(OracleKind::Geometric, EXP_HEADROOM).expect("positive radius");
        o.origin_order = -1;
        o.limit = Some(c(1.0, 0.0));
        o.declared_order = Some(1.0);
        o
    }

    pub fn zeta() -> Self {
        Self::zeta_with_radius(ZETA_DEFAULT_RADIUS).expect("positive radius")
    }

    pub fn zeta_with_radius(radius: f64) -> Result<Self> {
        if !(radius > 1.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter("zeta validity radius must exceed 1"));
        }
        let mut o = Self::build(OracleKind::Zeta, radius)?;
        o.limit = Some(c(1.0, 0.0));
        o.declared_order = Some(1.0);
        Ok(o)
    }

    pub fn constant(value: Complex64) -> Result<Self> {
        if value == c(0.0, 0.0) || !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::InvalidParameter("constant oracle needs a finite nonzero value"));
        }
        let mut o = Self::build(OracleKind::Constant(value), f64::INFINITY)?;
        o.limit = Some(value);
        o.declared_order = Some(0.0);
        Ok(o)
    }

    /// Polynomial with coefficients in ascending degree.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&c(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::AllZeroCoefficients);
        }
        let order = coeffs.iter().position(|a| *a != c(0.0, 0.0)).unwrap_or(0) as i32;
        let limit = if coeffs.len() == 1 { Some(coeffs[0]) } else { None };
        let mut o = Self::build(OracleKind::Polynomial(coeffs), f64::INFINITY)?;
        o.origin_order = order;
        o.limit = limit;
        o.declared_order = Some(0.0);
        Ok(o)
    }

    /// `exp(Q(s))` for a polynomial `Q` in ascending degree.
    pub fn exp_polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&c(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(c(0.0, 0.0));
        }
        // Largest radius keeping |Q| under the exponent headroom.
        let validity = if coeffs.len() == 1 {
            f64::INFINITY
        } else {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            while coeff_magnitude(&coeffs, hi) < EXP_HEADROOM && hi < 1e300 {
                hi *= 2.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if coeff_magnitude(&coeffs, mid) < EXP_HEADROOM {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        let degree = (coeffs.len() - 1) as f64;
        let limit = if coeffs.len() == 1 { Some(coeffs[0].exp()) } else { None };
        let mut o = Self::build(OracleKind::ExpPolynomial(coeffs), validity)?;
        o.limit = limit;
        o.declared_order = Some(degree);
        Ok(o)
    }

    /// Genus-one product over nonzero `zeros`.
    pub fn weierstrass(zeros: Vec<Complex64>) -> Result<Self> {
        if zeros.iter().any(|w| w.norm() == 0.0) {
            return Err(Error::ZeroAtOrigin);
        }
        if zeros.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::InvalidParameter("product zeros must be finite"));
        }
        let mut o = Self::build(OracleKind::Weierstrass(zeros), f64::INFINITY)?;
        o.declared_order = Some(1.0);
        Ok(o)
    }

    /// `base(s + offset)`; zeros move to `α - offset`.
    pub fn shift(base: &Self, offset: Complex64) -> Result<Self> {
        let validity = base.validity_radius - offset.norm();
        if !(validity > 0.0) {
            return Err(Error::ValidityExhausted);
        }
        let kind = OracleKind::Shift {
            base: base.clone(),
            offset,
        };
        let mut o = Self::build(kind, validity)?;
        o.origin_order = if offset == c(0.0, 0.0) {
            base.origin_order
        } else {
            local_order(base, offset)?
        };
        o.limit = base.limit;
        o.declared_order = base.declared_order;
        Ok(o)
    }

    pub fn quotient(numer: &Self, denom: &Self) -> Result<Self> {
        let validity = numer.validity_radius.min(denom.validity_radius);
        let limit = match (numer.limit, denom.limit) {
            (Some(a), Some(b)) if b != c(0.0, 0.0) => Some(a / b),
            _ => None,
        };
        let kind = OracleKind::Quotient {
            numer: numer.clone(),
            denom: denom.clone(),
        };
        let mut o = Self::build(kind, validity)?;
        o.origin_order = numer.origin_order - denom.origin_order;
        o.limit = limit;
        o.declared_order = max_order(&[numer.declared_order, denom.declared_order]);
        Ok(o)
    }

    pub fn product(factors: &[Self]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("product needs at least one factor"));
        }
        let validity = factors
            .iter()
            .map(|f| f.validity_radius)
            .fold(f64::INFINITY, f64::min);
        let mut limit = Some(c(1.0, 0.0));
        for f in factors {
            limit = match (limit, f.limit) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            };
        }
        let orders: Vec<Option<f64>> = factors.iter().map(|f| f.declared_order).collect();
        let origin: i32 = factors.iter().map(|f| f.origin_order).sum();
        let mut o = Self::build(OracleKind::Product(factors.to_vec()), validity)?;
        o.origin_order = origin;
        o.limit = limit;
        o.declared_order = max_order(&orders);
        Ok(o)
    }

    /// `e^{λ s} · base(s)`, which has the zeros and poles of `base`.
    pub fn scale_by_exponential(base: &Self, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter("scaling exponent must be finite"));
        }
        let validity = if lambda == 0.0 {
            base.validity_radius
        } else {
            base.validity_radius.min(EXP_HEADROOM / lambda.abs())
        };
        let limit = match base.kind.as_ref() {
            OracleKind::Sum(sum) => sum.limit_after_scaling(lambda),
            _ if lambda == 0.0 => base.limit,
            _ if lambda < 0.0 && base.limit.is_some() => Some(c(0.0, 0.0)),
            _ => None,
        };
        let kind = OracleKind::ScaleExp {
            base: base.clone(),
            lambda,
        };
        let mut o = Self::build(kind, validity)?;
        o.origin_order = base.origin_order;
        o.limit = limit;
        o.declared_order = max_order(&[base.declared_order, Some(1.0)]);
        Ok(o)
    }

    /// Replaces the validity radius with a smaller one.
    pub fn restrict(&self, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || radius > self.validity_radius {
            return Err(Error::InvalidParameter("restriction must shrink the validity radius"));
        }
        let mut o = self.clone();
        o.validity_radius = radius;
        Ok(o)
    }

    /// Overrides the catalog order metadata.
    pub fn with_declared_order(mut self, order: f64) -> Self {
        self.declared_order = Some(order);
        self
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    pub fn validity_radius(&self) -> f64 {
        self.validity_radius
    }

    /// Order of the zero (positive) or pole (negative) at `s = 0`.
    pub fn origin_order(&self) -> i32 {
        self.origin_order
    }

    pub fn limit_at_plus_infinity(&self) -> Option<Complex64> {
        self.limit
    }

    pub fn declared_order(&self) -> Option<f64> {
        self.declared_order
    }

    fn check(&self, s: Complex64) -> Result<()> {
        let m = s.norm();
        if !(m <= self.validity_radius) {
            return Err(Error::OutsideValidity {
                modulus: m,
                radius: self.validity_radius,
            });
        }
        Ok(())
    }

    pub fn eval(&self, s: Complex64) -> Result<Evaluation> {
        Ok(self.value_and_derivative(s)?.0)
    }

    pub fn deriv(&self, s: Complex64) -> Result<Evaluation> {
        Ok(self.value_and_derivative(s)?.1)
    }

    pub fn value_and_derivative(&self, s: Complex64) -> Result<(Evaluation, Evaluation)> {
        self.check(s)?;
        self.vd(s)
    }

    /// `f'(s) / f(s)`; non-finite at zeros and poles.
    pub fn log_derivative(&self, s: Complex64) -> Result<Complex64> {
        self.check(s)?;
        self.ld(s)
    }

    /// `log |f(s)|`; `-∞` at zeros.
    pub fn log_modulus(&self, s: Complex64) -> Result<f64> {
        self.check(s)?;
        self.lm(s)
    }

    /// Poles in `|s| ≤ r` known in closed form; `None` when they must be
    /// found numerically.
    pub fn declared_poles(&self, r: f64) -> Option<Vec<Pole>> {
        match self.kind.as_ref() {
            OracleKind::Geometric => {
                let kmax = (r / (2.0 * PI)).floor() as i64;
                Some(
                    (-kmax..=kmax)
                        .map(|k| Pole {
                            position: c(0.0, 2.0 * PI * k as f64),
                            order: 1,
                        })
                        .filter(|p| p.position.norm() <= r)
                        .collect(),
                )
            }
            OracleKind::Zeta => Some(if r >= 1.0 {
                alloc::vec![Pole {
                    position: c(1.0, 0.0),
                    order: 1,
                }]
            } else {
                Vec::new()
            }),
            OracleKind::Sum(_)
            | OracleKind::Constant(_)
            | OracleKind::Polynomial(_)
            | OracleKind::ExpPolynomial(_)
            | OracleKind::Weierstrass(_) => Some(Vec::new()),
            OracleKind::ScaleExp { base, .. } => base.declared_poles(r),
            OracleKind::Shift { .. } | OracleKind::Quotient { .. } | OracleKind::Product(_) => None,
        }
    }

    fn vd(&self, s: Complex64) -> Result<(Evaluation, Evaluation)> {
        let eps = f64::EPSILON;
        match self.kind.as_ref() {
            OracleKind::Sum(sum) => sum.value_and_derivative(s),
            OracleKind::Geometric => {
                let d = one_minus_exp_neg(s);
                let e = (-s).exp();
                let v = d.inv();
                let dv = -e * v * v;
                let rel = eps * (s.norm() + 8.0);
                Ok((
                    Evaluation::new(v, v.norm() * rel),
                    Evaluation::new(dv, dv.norm() * 2.0 * rel),
                ))
            }
            OracleKind::Zeta => Ok(crate::zeta::zeta_with_derivative(s)),
            OracleKind::Constant(a) => Ok((Evaluation::new(*a, 0.0), Evaluation::new(c(0.0, 0.0), 0.0))),
            OracleKind::Polynomial(p) => {
                let (v, d) = horner(p, s);
                let scale = coeff_magnitude(p, s.norm());
                let n = p.len() as f64;
                Ok((
                    Evaluation::new(v, 2.0 * n * eps * scale),
                    Evaluation::new(d, 2.0 * n * n * eps * scale.max(d.norm())),
                ))
            }
            OracleKind::ExpPolynomial(q) => {
                let (qv, qd) = horner(q, s);
                let v = qv.exp();
                let d = qd * v;
                let rel = eps * (coeff_magnitude(q, s.norm()) + 4.0);
                Ok((
                    Evaluation::new(v, v.norm() * rel),
                    Evaluation::new(d, d.norm() * 2.0 * rel),
                ))
            }
            OracleKind::Weierstrass(zeros) => {
                let v = weierstrass_value(zeros, s);
                let ld = weierstrass_log_derivative(zeros, s);
                let d = if v == c(0.0, 0.0) {
                    weierstrass_derivative_at_zero(zeros, s)
                } else {
                    v * ld
                };
                let rel = eps * (zeros.len() as f64 + 4.0) * (1.0 + s.norm() * inv_min_modulus(zeros));
                Ok((
                    Evaluation::new(v, v.norm() * rel),
                    Evaluation::new(d, d.norm() * 2.0 * rel),
                ))
            }
            OracleKind::Shift { base, offset } => base.vd(s + offset),
            OracleKind::Quotient { numer, denom } => {
                let (n, nd) = numer.vd(s)?;
                let (d, dd) = denom.vd(s)?;
                let q = safe_div(n.value, d.value);
                let qd = safe_div(nd.value - q * dd.value, d.value);
                let en = n.error / n.value.norm() + d.error / d.value.norm();
                let ed = (nd.error + q.norm() * dd.error) / d.value.norm() + qd.norm() * d.error / d.value.norm();
                Ok((Evaluation::new(q, q.norm() * en), Evaluation::new(qd, ed)))
            }
            OracleKind::Product(factors) => {
                let mut v = c(1.0, 0.0);
                let mut d = c(0.0, 0.0);
                let mut rel = 0.0;
                let mut derr = 0.0;
                for f in factors {
                    let (fv, fd) = f.vd(s)?;
                    d = d * fv.value + v * fd.value;
                    derr = derr * fv.value.norm() + v.norm() * fd.error;
                    v *= fv.value;
                    rel += fv.error / fv.value.norm().max(f64::MIN_POSITIVE);
                }
                Ok((Evaluation::new(v, v.norm() * rel), Evaluation::new(d, derr + d.norm() * rel)))
            }
            OracleKind::ScaleExp { base, lambda } => {
                let (bv, bd) = base.vd(s)?;
                let e = (s * *lambda).exp();
                let v = e * bv.value;
                let d = e * (bv.value * *lambda + bd.value);
                let rel = eps * (s.norm() * lambda.abs() + 4.0);
                Ok((
                    Evaluation::new(v, e.norm() * bv.error + v.norm() * rel),
                    Evaluation::new(d, e.norm() * (bd.error + lambda.abs() * bv.error) + d.norm() * rel),
                ))
            }
        }
    }

    fn ld(&self, s: Complex64) -> Result<Complex64> {
        match self.kind.as_ref() {
            OracleKind::Geometric => {
                // f'/f = -e^{-s}/(1-e^{-s}) = -1/(e^s - 1)
                let em1 = -one_minus_exp_neg(-s);
                Ok(-em1.inv())
            }
            OracleKind::Constant(_) => Ok(c(0.0, 0.0)),
            OracleKind::ExpPolynomial(q) => Ok(horner(q, s).1),
            OracleKind::Weierstrass(zeros) => Ok(weierstrass_log_derivative(zeros, s)),
            OracleKind::Shift { base, offset } => base.ld(s + offset),
            OracleKind::Quotient { numer, denom } => Ok(numer.ld(s)? - denom.ld(s)?),
            OracleKind::Product(factors) => {
                let mut acc = c(0.0, 0.0);
                for f in factors {
                    acc += f.ld(s)?;
                }
                Ok(acc)
            }
            OracleKind::ScaleExp { base, lambda } => Ok(base.ld(s)? + *lambda),
            OracleKind::Sum(_) | OracleKind::Zeta | OracleKind::Polynomial(_) => {
                let (v, d) = self.vd(s)?;
                Ok(safe_div(d.value, v.value))
            }
        }
    }

    fn lm(&self, s: Complex64) -> Result<f64> {
        match self.kind.as_ref() {
            OracleKind::Geometric => Ok(-one_minus_exp_neg(s).norm().ln()),
            OracleKind::ExpPolynomial(q) => Ok(horner(q, s).0.re),
            OracleKind::Weierstrass(zeros) => {
                let mut acc = 0.0;
                for w in zeros {
                    let u = s / w;
                    acc += (c(1.0, 0.0) - u).norm().ln() + u.re;
                }
                Ok(acc)
            }
            OracleKind::Shift { base, offset } => base.lm(s + offset),
            OracleKind::Quotient { numer, denom } => Ok(numer.lm(s)? - denom.lm(s)?),
            OracleKind::Product(factors) => {
                let mut acc = 0.0;
                for f in factors {
                    acc += f.lm(s)?;
                }
                Ok(acc)
            }
            OracleKind::ScaleExp { base, lambda } => Ok(base.lm(s)? + lambda * s.re),
            OracleKind::Sum(_) | OracleKind::Zeta | OracleKind::Constant(_) | OracleKind::Polynomial(_) => {
                Ok(self.vd(s)?.0.value.norm().ln())
            }
        }
    }
}

fn max_order(orders: &[Option<f64>]) -> Option<f64> {
    let mut m: Option<f64> = Some(0.0);
    for o in orders {
        m = match (m, o) {
            (Some(a), Some(b)) => Some(a.max(*b)),
            _ => None,
        };
    }
    m
}

fn inv_min_modulus(zeros: &[Complex64]) -> f64 {
    zeros.iter().map(|w| 1.0 / w.norm()).fold(0.0, f64::max)
}

/// Lists up to this size are multiplied directly; longer ones are summed in log space.
const DIRECT_PRODUCT_LIMIT: usize = 32;

pub(crate) fn weierstrass_value(zeros: &[Complex64], s: Complex64) -> Complex64 {
    let one = c(1.0, 0.0);
    if zeros.len() <= DIRECT_PRODUCT_LIMIT {
        let mut p = one;
        let mut phase = c(0.0, 0.0);
        for w in zeros {
            let u = s / w;
            p *= one - u;
            phase += u;
        }
        return p * phase.exp();
    }
    // Log-space: moduli add, arguments are reassembled from each factor so
    // no branch cut of a single logarithm is ever crossed.
    let mut log_mod = 0.0;
    let mut unit = one;
    let mut phase = c(0.0, 0.0);
    for w in zeros {
        let u = s / w;
        let f = one - u;
        let m = f.norm();
        if m == 0.0 {
            return c(0.0, 0.0);
        }
        log_mod += m.ln();
        unit *= f / m;
        phase += u;
    }
    let unit = unit / unit.norm();
    unit * (phase + log_mod).exp()
}

fn weierstrass_log_derivative(zeros: &[Complex64], s: Complex64) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for w in zeros {
        acc += (s - w).inv() + w.inv();
    }
    acc
}

/// Derivative at a listed zero: nonzero only when the zero is simple.
fn weierstrass_derivative_at_zero(zeros: &[Complex64], s: Complex64) -> Complex64 {
    let hits = zeros.iter().filter(|w| **w == s).count();
    if hits != 1 {
        return c(0.0, 0.0);
    }
    let rest: Vec<Complex64> = zeros.iter().copied().filter(|w| *w != s).collect();
    // d/ds [(1 - s/w) e^{s/w}] at s = w equals -e/w.
    weierstrass_value(&rest, s) * (-core::f64::consts::E / s)
}

/// Order of a finite sum at the origin from its exact Taylor coefficients.
fn sum_origin_order(sum: &ExponentialSum) -> Result<i32> {
    for k in 0..=MAX_ORIGIN_ORDER {
        let (coeff, scale) = sum.taylor_at_origin(k);
        if coeff.norm() > ORIGIN_THRESHOLD * scale {
            return Ok(k as i32);
        }
    }
    Err(Error::OriginOrderExceeded {
        max_order: MAX_ORIGIN_ORDER,
    })
}

/// Number of trapezoid nodes used on isolating circles.
pub(crate) const SMALL_CIRCLE_NODES: usize = 64;

/// Winding of `f` on `|s - center| = rho` by the periodic trapezoid rule;
/// accurate when every other zero or pole is well outside the circle.
pub(crate) fn trapezoid_winding(f: &MeromorphicOracle, center: Complex64, rho: f64) -> Result<f64> {
    let n = SMALL_CIRCLE_NODES;
    let mut acc = c(0.0, 0.0);
    for j in 0..n {
        let t = 2.0 * PI * (j as f64 + 0.5) / n as f64;
        let e = Complex64::from_polar(rho, t);
        let l = f.log_derivative(center + e)?;
        if !l.re.is_finite() || !l.im.is_finite() {
            return Err(Error::Uncertified {
                radius: rho,
                winding: f64::NAN,
            });
        }
        acc += l * e;
    }
    Ok((acc / n as f64).re)
}

/// Signed order of `f` at `point` from a small isolating circle.
pub(crate) fn local_order(f: &MeromorphicOracle, point: Complex64) -> Result<i32> {
    let rho = 1e-6 * point.norm().max(1.0);
    let w = trapezoid_winding(f, point, rho)?;
    let k = w.round();
    if (w - k).abs() > 0.25 {
        return Err(Error::Uncertified { radius: rho, winding: w });
    }
    Ok(k as i32)
}

/// Oracle for a finite exponential sum.
pub fn as_oracle(sum: &ExponentialSum) -> Result<MeromorphicOracle> {
    MeromorphicOracle::from_sum(sum)
}

pub fn geometric_oracle() -> MeromorphicOracle {
    MeromorphicOracle::geometric()
}

pub fn zeta_oracle() -> MeromorphicOracle {
    MeromorphicOracle::zeta()
}

pub fn shift_oracle(oracle: &MeromorphicOracle, s0: Complex64) -> Result<MeromorphicOracle> {
    MeromorphicOracle::shift(oracle, s0)
}

pub fn quotient_oracle(numer: &MeromorphicOracle, denom: &MeromorphicOracle) -> Result<MeromorphicOracle> {
    MeromorphicOracle::quotient(numer, denom)
}

pub fn scale_by_exponential(oracle: &MeromorphicOracle, lambda: f64) -> Result<MeromorphicOracle> {
    MeromorphicOracle::scale_by_exponential(oracle, lambda)
}
