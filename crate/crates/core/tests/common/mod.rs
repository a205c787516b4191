//! Test-only oracles that share no code with the library: an alternating
//! series evaluation of zeta and a phase-tracking box count.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

const BORWEIN_TERMS: usize = 100;

fn borwein_weights() -> Vec<f64> {
    let n = BORWEIN_TERMS;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    let mut acc = term;
    d.push(acc);
    for i in 0..n {
        term *= 4.0 * ((n + i) as f64) * ((n - i) as f64) / (((2 * i + 1) * (2 * i + 2)) as f64);
        acc += term;
        d.push(acc);
    }
    d
}

/// Dirichlet eta by Borwein's acceleration, accurate for `Re s ≥ 1/2`.
fn eta(s: Complex64, d: &[f64]) -> Complex64 {
    let n = BORWEIN_TERMS;
    let dn = d[n];
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let base = ((k + 1) as f64).ln();
        acc += (-s * base).exp() * (sign * (dk - dn));
    }
    -acc / dn
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` for `Re z ≥ 1/2` by the Lanczos approximation.
fn ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub struct Zeta {
    d: Vec<f64>,
}

impl Default for Zeta {
    fn default() -> Self {
        Self { d: borwein_weights() }
    }
}

impl Zeta {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        if s.re >= 0.5 {
            let denom = Complex64::new(1.0, 0.0) - Complex64::new(2.0, 0.0).powc(Complex64::new(1.0, 0.0) - s);
            return eta(s, &self.d) / denom;
        }
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one = Complex64::new(1.0, 0.0);
        let log_factor = s * 2f64.ln() + (s - one) * PI.ln() + ln_gamma(one - s);
        log_factor.exp() * (s * (PI / 2.0)).sin() * self.eval(one - s)
    }
}

fn arg_step(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

/// Phase change of `f` along the segment, bisected until every step is small.
fn segment_phase(f: &dyn Fn(Complex64) -> Complex64, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let fm = f(m);
    let d1 = arg_step(fa, fm);
    let d2 = arg_step(fm, fb);
    if d1.abs() < 0.2 && d2.abs() < 0.2 && depth > 2 {
        return d1 + d2;
    }
    assert!(depth < 60, "zero on a box edge near {m}");
    segment_phase(f, a, m, fa, fm, depth + 1) + segment_phase(f, m, b, fm, fb, depth + 1)
}

/// Net number of zeros minus poles of `f` in the open rectangle.
pub fn box_winding(f: &dyn Fn(Complex64) -> Complex64, lo: Complex64, hi: Complex64) -> i64 {
    let corners = [
        lo,
        Complex64::new(hi.re, lo.im),
        hi,
        Complex64::new(lo.re, hi.im),
    ];
    let values: Vec<Complex64> = corners.iter().map(|z| f(*z)).collect();
    let mut total = 0.0;
    for i in 0..4 {
        let j = (i + 1) % 4;
        total += segment_phase(f, corners[i], corners[j], values[i], values[j], 0);
    }
    let w = total / (2.0 * PI);
    let k = w.round();
    assert!((w - k).abs() < 1e-6, "box winding {w} is not an integer");
    k as i64
}

fn min_modulus(lo: Complex64, hi: Complex64) -> f64 {
    let x = if lo.re > 0.0 { lo.re } else if hi.re < 0.0 { hi.re } else { 0.0 };
    let y = if lo.im > 0.0 { lo.im } else if hi.im < 0.0 { hi.im } else { 0.0 };
    (x * x + y * y).sqrt()
}

fn max_modulus(lo: Complex64, hi: Complex64) -> f64 {
    let x = lo.re.abs().max(hi.re.abs());
    let y = lo.im.abs().max(hi.im.abs());
    (x * x + y * y).sqrt()
}

/// Zeros (with multiplicity) of `f` in `|s| ≤ r`, given its poles, by
/// recursive subdivision of a box around the disk. Points within `1e-7` of
/// the circle count as inside.
pub fn zeros_in_disk(f: &dyn Fn(Complex64) -> Complex64, poles: &[Complex64], r: f64, lo: Complex64, hi: Complex64) -> u64 {
    let poles_in = |lo: Complex64, hi: Complex64| {
        poles
            .iter()
            .filter(|p| p.re > lo.re && p.re < hi.re && p.im > lo.im && p.im < hi.im)
            .count() as i64
    };
    let mut stack = vec![(lo, hi)];
    let mut total = 0i64;
    while let Some((lo, hi)) = stack.pop() {
        if min_modulus(lo, hi) > r + 1e-7 {
            continue;
        }
        let zeros = box_winding(f, lo, hi) + poles_in(lo, hi);
        assert!(zeros >= 0);
        if zeros == 0 {
            continue;
        }
        if max_modulus(lo, hi) <= r {
            total += zeros;
            continue;
        }
        let size = (hi.re - lo.re).max(hi.im - lo.im);
        if size < 1e-9 {
            let c = 0.5 * (lo + hi);
            if c.norm() <= r + 1e-7 {
                total += zeros;
            }
            continue;
        }
        // Uneven split keeps new edges off symmetric zero positions.
        let xm = lo.re + 0.4813 * (hi.re - lo.re);
        let ym = lo.im + 0.5179 * (hi.im - lo.im);
        stack.push((lo, Complex64::new(xm, ym)));
        stack.push((Complex64::new(xm, lo.im), Complex64::new(hi.re, ym)));
        stack.push((Complex64::new(lo.re, ym), Complex64::new(xm, hi.im)));
        stack.push((Complex64::new(xm, ym), hi));
    }
    total as u64
}

/// Zeros of zeta in `|s| ≤ r`, for `r ≤ 30`.
pub fn zeta_zero_count(r: f64) -> u64 {
    let z = Zeta::default();
    let f = |s: Complex64| z.eval(s);
    zeros_in_disk(&f, &[Complex64::new(1.0, 0.0)], r, Complex64::new(-r - 0.7, -r - 0.9), Complex64::new(r + 0.3, r + 0.1))
}
