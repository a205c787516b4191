//! Riemann zeta by Euler–Maclaurin summation on `Re(s) ≥ -1` and the
//! reflection formula elsewhere, with value and derivative.

use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::Evaluation;

/// Number of direct terms kept before the Euler–Maclaurin correction.
const EM_TERMS: u32 = 40;
/// Number of Bernoulli corrections.
const EM_CORRECTIONS: usize = 30;
/// Left of this abscissa the reflection formula takes over.
const REFLECTION_ABSCISSA: f64 = -1.0;

/// Bernoulli numbers B₂…B₂₀ for the Stirling series.
const STIRLING_BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `B_{2k}/(2k)!` for k = 1..=n, from `2ζ(2k)/(2π)^{2k}` with alternating sign.
fn bernoulli_over_factorial(k: usize) -> f64 {
    let two_k = 2 * k as i32;
    let zeta_even = match k {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        4 => PI.powi(8) / 9450.0,
        _ => {
            let mut s = 0.0;
            for n in (1..=200).rev() {
                s += (n as f64).powi(-two_k);
            }
            s
        }
    };
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2.0 * zeta_even / (2.0 * PI).powi(two_k)
}

/// ζ(s) and ζ′(s) for `s ≠ 1` of moderate size with `Re(s) ≥ -1`.
fn euler_maclaurin(s: Complex64) -> (Evaluation, Evaluation) {
    let one = Complex64::new(1.0, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for n in 1..EM_TERMS {
        let ln_n = (n as f64).ln();
        let t = (-s * ln_n).exp();
        value += t;
        deriv -= t * ln_n;
        mag += t.norm();
    }
    let big_n = EM_TERMS as f64;
    let ln_big = big_n.ln();
    let n_pow = (-s * ln_big).exp(); // N^{-s}
    let sm1 = s - one;
    let head = n_pow * big_n / sm1;
    value += head + n_pow * 0.5;
    deriv += -head * ln_big - n_pow * big_n / (sm1 * sm1) - n_pow * (0.5 * ln_big);
    mag += head.norm() + 0.5 * n_pow.norm();

    // poly = s(s+1)…(s+2k-2), tracked with its derivative.
    let mut poly = s;
    let mut poly_d = one;
    let mut n_factor = n_pow / big_n; // N^{-s-1}
    for k in 1..=EM_CORRECTIONS {
        let c = bernoulli_over_factorial(k);
        let term = poly * n_factor * c;
        let dterm = (poly_d - poly * ln_big) * n_factor * c;
        value += term;
        deriv += dterm;
        mag += term.norm();
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        poly_d = poly_d * a * b + poly * (a + b);
        poly = poly * a * b;
        n_factor /= big_n * big_n;
    }
    // Remainder of the first omitted correction, scaled by |s+2M+1|/(σ+2M+1).
    let next = bernoulli_over_factorial(EM_CORRECTIONS + 1).abs() * (poly * n_factor).norm();
    let m2 = (2 * EM_CORRECTIONS + 1) as f64;
    let remainder = next * (s + m2).norm() / (s.re + m2);
    let rounding = f64::EPSILON * mag * (s.norm() * ln_big + 16.0);
    let derr = remainder * (ln_big + 1.0) + rounding * (ln_big + 1.0);
    (
        Evaluation::new(value, remainder + rounding),
        Evaluation::new(deriv, derr),
    )
}

/// Principal-branch-free log Γ(z) for `Re(z) > 0`; only its exponential is meaningful.
pub(crate) fn ln_gamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for (k, b) in STIRLING_BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += p * (b / (2.0 * k * (2.0 * k - 1.0)));
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Digamma ψ(z) for `Re(z) > 0`.
pub(crate) fn digamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in STIRLING_BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += p * (b / (2.0 * k));
        p *= inv2;
    }
    w.ln() - inv * 0.5 - series - shift
}

/// ζ(s) and ζ′(s) with error bounds; `s = 1` yields a non-finite value.
pub fn zeta_with_derivative(s: Complex64) -> (Evaluation, Evaluation) {
    if s.re >= REFLECTION_ABSCISSA {
        return euler_maclaurin(s);
    }
    let one = Complex64::new(1.0, 0.0);
    let w = one - s;
    let (zv, zd) = euler_maclaurin(w);
    let half_pi_s = s * (0.5 * PI);
    let sin = half_pi_s.sin();
    let cos = half_pi_s.cos();
    // 2^s π^{s-1} Γ(1-s)
    let base = (s * 2f64.ln() + (s - one) * PI.ln() + ln_gamma(w)).exp();
    let chi = base * sin;
    let chi_d = base * ((Complex64::new((2.0 * PI).ln(), 0.0) - digamma(w)) * sin + cos * (0.5 * PI));
    let value = chi * zv.value;
    let deriv = chi_d * zv.value - chi * zd.value;
    let rounding = f64::EPSILON * (s.norm() + 32.0);
    let verr = chi.norm() * zv.error + rounding * value.norm().max(base.norm() * f64::EPSILON);
    let derr = chi_d.norm() * zv.error + chi.norm() * zd.error + rounding * deriv.norm();
    (Evaluation::new(value, verr), Evaluation::new(deriv, derr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        let (v, _) = zeta_with_derivative(c(2.0, 0.0));
        assert!((v.value.re - PI * PI / 6.0).abs() < 1e-10);
        let (v, _) = zeta_with_derivative(c(0.0, 0.0));
        assert!((v.value.re + 0.5).abs() < 1e-10);
        let (v, _) = zeta_with_derivative(c(-2.0, 0.0));
        assert!(v.value.norm() < 1e-10);
        let (v, _) = zeta_with_derivative(c(-1.0, 0.0));
        assert!((v.value.re + 1.0 / 12.0).abs() < 1e-10);
    }

    #[test]
    fn first_nontrivial_zero() {
        let rho = c(0.5, 14.134_725_141_734_693);
        let (v, _) = zeta_with_derivative(rho);
        assert!(v.value.norm() < 1e-9, "{}", v.value);
    }

    #[test]
    fn derivative_matches_central_difference() {
        for &s in &[c(2.0, 3.0), c(-3.5, 7.0), c(0.3, 20.0), c(-20.0, 5.0)] {
            let h = 1e-5;
            let (fp, _) = zeta_with_derivative(s + h);
            let (fm, _) = zeta_with_derivative(s - h);
            let fd = (fp.value - fm.value) / (2.0 * h);
            let (_, d) = zeta_with_derivative(s);
            assert!((fd - d.value).norm() <= 1e-6 * d.value.norm().max(1.0), "{s}: {fd} vs {}", d.value);
        }
    }

    #[test]
    fn agrees_with_reference_values_across_the_disk() {
        let cases = [
            (c(-25.0, 10.0), c(3_126_062_854.014_267, 26_669_150_943.049_107)),
            (c(0.3, 29.0), c(1.035_437_631_315_738_7, -2.146_055_737_174_888)),
            (c(-0.8, -20.0), c(-1.692_390_115_406_470_9, 3.995_105_166_818_217)),
            (c(10.0, 25.0), c(1.000_036_018_954_18, 0.000_963_119_130_435_057_5)),
            (c(-29.5, 0.5), c(-47_689_083.055_969_35, 9_730_063.506_376_632)),
        ];
        for (s, want) in cases {
            let (v, _) = zeta_with_derivative(s);
            let err = (v.value - want).norm();
            assert!(err <= 1e-11 * want.norm(), "{s}: {} vs {want}", v.value);
            assert!(err <= v.error.max(1e-13 * want.norm()) * 10.0, "{s}: bound {} < {err}", v.error);
        }
    }

    #[test]
    fn gamma_and_digamma() {
        assert!((ln_gamma(c(5.0, 0.0)).exp().re - 24.0).abs() < 1e-11);
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).re + euler_gamma).abs() < 1e-13);
    }
}
