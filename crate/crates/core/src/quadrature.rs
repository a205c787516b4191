//! Composite Gauss–Legendre quadrature with local panel bisection, plus a
//! tanh–sinh rule for panels that end on an integrable singularity.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<E, F>(&self, f: &mut F, a: f64, b: f64) -> Result<Complex64, E>
    where
        F: FnMut(f64) -> Result<Complex64, E>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = CompensatedSum::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(mid + half * x)? * *w);
        }
        Ok(acc.total() * half)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp += Complex64::new(cre, cim);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let c = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, c)
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    /// Number of equal panels the interval starts with.
    pub initial_panels: usize,
    /// Target for the summed panel error estimates.
    pub abs_tol: f64,
    /// Hard cap on the number of panels.
    pub max_panels: usize,
    /// Bisection depth after which a panel is frozen or handed to the fallback.
    pub max_depth: u32,
    /// Integrate floor-depth panels with tanh–sinh instead of failing.
    pub singular_fallback: bool,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            initial_panels: 32,
            abs_tol: 1e-10,
            max_panels: 1 << 14,
            max_depth: 48,
            singular_fallback: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Sum of per-panel coarse/fine discrepancies.
    pub error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError<E> {
    /// The integrand asked to stop.
    Integrand(E),
    /// The panel budget ran out.
    NotConverged { value: Complex64, error: f64 },
}

impl<E> From<E> for QuadError<E> {
    fn from(e: E) -> Self {
        QuadError::Integrand(e)
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    fine: Complex64,
    error: f64,
    depth: u32,
}

/// Heap key: largest error first, ties broken by creation order.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

fn make_panel<E, F>(rule: &GaussLegendre, f: &mut F, lo: f64, hi: f64, coarse: Complex64, depth: u32) -> Result<Panel, E>
where
    F: FnMut(f64) -> Result<Complex64, E>,
{
    let mid = 0.5 * (lo + hi);
    let fine = rule.integrate(f, lo, mid)? + rule.integrate(f, mid, hi)?;
    let error = (fine - coarse).norm();
    let error = if error.is_finite() { error } else { f64::INFINITY };
    Ok(Panel {
        lo,
        hi,
        fine,
        error,
        depth,
    })
}

/// Adaptive composite Gauss–Legendre on `[a, b]`.
///
/// Each panel's error is the gap between the rule and the sum over its two
/// halves. The panel with the largest error is bisected until the total
/// falls below `abs_tol`, so noisy spikes (a near-singular `f'/f`) stop
/// consuming panels once their contribution is negligible. Panels are summed
/// left to right at the end, which keeps results bit-reproducible.
pub fn adaptive<E, F>(
    rule: &GaussLegendre,
    mut f: F,
    a: f64,
    b: f64,
    opts: &AdaptiveOptions,
) -> Result<QuadResult, QuadError<E>>
where
    F: FnMut(f64) -> Result<Complex64, E>,
{
    let n0 = opts.initial_panels.max(1);
    let total = b - a;
    let mut arena: Vec<Panel> = Vec::with_capacity(2 * n0 + 64);
    let mut heap: BinaryHeap<Key> = BinaryHeap::new();
    let mut done: Vec<usize> = Vec::new();
    let mut err = 0.0;
    for i in 0..n0 {
        let lo = a + total * (i as f64) / (n0 as f64);
        let hi = a + total * ((i + 1) as f64) / (n0 as f64);
        let coarse = rule.integrate(&mut f, lo, hi)?;
        let p = make_panel(rule, &mut f, lo, hi, coarse, 0)?;
        err += p.error;
        heap.push(Key(p.error, arena.len()));
        arena.push(p);
    }
    while err > opts.abs_tol {
        let Some(Key(e, idx)) = heap.pop() else {
            break;
        };
        let p = arena[idx];
        if p.depth >= opts.max_depth {
            if opts.singular_fallback {
                let share = opts.abs_tol * ((p.hi - p.lo) / total).abs();
                let v = tanh_sinh(&mut f, p.lo, p.hi, share.max(1e-15))?;
                arena[idx].fine = v;
                arena[idx].error = 0.0;
            }
            err -= e;
            done.push(idx);
            continue;
        }
        if arena.len() + 1 > opts.max_panels {
            heap.push(Key(e, idx));
            let value = sum_panels(&arena, heap.iter().map(|k| k.1).chain(done.iter().copied()));
            return Err(QuadError::NotConverged { value, error: err });
        }
        let mid = 0.5 * (p.lo + p.hi);
        let left_coarse = rule.integrate(&mut f, p.lo, mid)?;
        let right_coarse = rule.integrate(&mut f, mid, p.hi)?;
        let left = make_panel(rule, &mut f, p.lo, mid, left_coarse, p.depth + 1)?;
        let right = make_panel(rule, &mut f, mid, p.hi, right_coarse, p.depth + 1)?;
        err += left.error + right.error - e;
        arena[idx] = left;
        heap.push(Key(left.error, idx));
        heap.push(Key(right.error, arena.len()));
        arena.push(right);
    }
    let live: Vec<usize> = heap.iter().map(|k| k.1).chain(done.iter().copied()).collect();
    let panels = live.len();
    Ok(QuadResult {
        value: sum_panels(&arena, live.into_iter()),
        error: err.max(0.0),
        panels,
    })
}

fn sum_panels(arena: &[Panel], idx: impl Iterator<Item = usize>) -> Complex64 {
    let mut order: Vec<usize> = idx.collect();
    order.sort_by(|x, y| arena[*x].lo.total_cmp(&arena[*y].lo));
    let mut acc = CompensatedSum::default();
    for i in order {
        acc.add(arena[i].fine);
    }
    acc.total()
}

/// Tanh–sinh quadrature on `[a, b]`; nodes never touch the endpoints, so
/// integrable endpoint singularities (log or inverse square root) are fine.
pub fn tanh_sinh<E, F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<Complex64, E>
where
    F: FnMut(f64) -> Result<Complex64, E>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let t_max = 3.2;
    let mut h = 0.5;
    let mut sum = sample_ts(f, mid, half, 0.0)?;
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += sample_ts(f, mid, half, t)? + sample_ts(f, mid, half, -t)?;
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..8 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum += sample_ts(f, mid, half, t)? + sample_ts(f, mid, half, -t)?;
            k += 2;
        }
        let cur = sum * h;
        if (cur - prev).norm() <= tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

fn sample_ts<E, F>(f: &mut F, mid: f64, half: f64, t: f64) -> Result<Complex64, E>
where
    F: FnMut(f64) -> Result<Complex64, E>,
{
    let u = 0.5 * PI * t.sinh();
    let x = u.tanh();
    let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
    // Nodes that round onto an endpoint carry negligible weight.
    if (1.0 - x.abs()) * half.abs() <= f64::EPSILON * (mid.abs() + half.abs()) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(f(mid + half * x)? * (w * half))
}
