use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::counting::{lex_cmp, locate_values, pole_records, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;

/// Exclusion disks of Cartan's lemma for `n_points` points and parameter `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskCover {
    /// `(center, radius)` in construction order.
    pub disks: Vec<(Complex64, f64)>,
    /// Points removed at each step; radius `j` is `2·λⱼ·h/n`.
    pub weights: Vec<u32>,
    pub h: f64,
    pub n_points: usize,
}

impl DiskCover {
    /// `2h·Σλⱼ/n`, which is `2h` whenever there is at least one point.
    pub fn total_radius(&self) -> f64 {
        if self.n_points == 0 {
            return 0.0;
        }
        let lambdas: u64 = self.weights.iter().map(|w| *w as u64).sum();
        2.0 * self.h * lambdas as f64 / self.n_points as f64
    }

    /// Whether `s` lies in some closed disk of the cover.
    pub fn contains(&self, s: Complex64) -> bool {
        self.disks.iter().any(|(c, r)| (s - c).norm() <= *r)
    }
}

/// Slack on disk membership so that points on a candidate circle count.
const MEMBERSHIP_SLACK: f64 = 1e-9;

fn covered(points: &[Complex64], center: Complex64, rho: f64) -> usize {
    let lim = rho * (1.0 + MEMBERSHIP_SLACK);
    points.iter().filter(|p| (**p - center).norm() <= lim).count()
}

/// Centers that realize the largest number of points in some disk of radius
/// `rho`: the points themselves and the intersections of radius-`rho`
/// circles around pairs. Sorted lexicographically.
fn candidate_centers(points: &[Complex64], rho: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = points.to_vec();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = points[j] - points[i];
            let dist = d.norm();
            if dist == 0.0 || dist > 2.0 * rho {
                continue;
            }
            let mid = points[i] + d * 0.5;
            let half = (rho * rho - 0.25 * dist * dist).max(0.0).sqrt();
            let normal = Complex64::new(-d.im, d.re) / dist;
            out.push(mid + normal * half);
            out.push(mid - normal * half);
        }
    }
    out.sort_by(lex_cmp);
    out.dedup();
    out
}

/// Lexicographically first center whose disk of radius `rho` holds at least
/// `need` points.
fn find_cluster(points: &[Complex64], rho: f64, need: usize) -> Option<Complex64> {
    candidate_centers(points, rho)
        .into_iter()
        .find(|c| covered(points, *c, rho) >= need)
}

/// Maximal-cluster construction: repeatedly take the largest `λ` such that
/// a disk of radius `λh/n` holds `λ` of the remaining points, remove those
/// points and record the concentric disk of radius `2λh/n`. Outside the
/// result `Π|s - aₖ| > (h/e)ⁿ`.
pub fn cartan_cover(points: &[Complex64], h: f64) -> Result<DiskCover> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter("h must be positive and finite"));
    }
    if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
        return Err(Error::InvalidParameter("cover points must be finite"));
    }
    let n = points.len();
    let mut rest: Vec<Complex64> = points.to_vec();
    rest.sort_by(lex_cmp);
    let mut disks = Vec::new();
    let mut weights = Vec::new();
    while !rest.is_empty() {
        let mut chosen = None;
        for lambda in (1..=rest.len()).rev() {
            let rho = lambda as f64 * h / n as f64;
            if let Some(c) = find_cluster(&rest, rho, lambda) {
                chosen = Some((lambda, c));
                break;
            }
        }
        // λ = 1 always succeeds with a point as its own center.
        let (lambda, center) = chosen.expect("a single point is a cluster");
        let mut order: Vec<usize> = (0..rest.len()).collect();
        order.sort_by(|a, b| {
            let da = (rest[*a] - center).norm();
            let db = (rest[*b] - center).norm();
            da.total_cmp(&db).then_with(|| lex_cmp(&rest[*a], &rest[*b]))
        });
        let mut drop: Vec<usize> = order[..lambda].to_vec();
        drop.sort_unstable();
        for i in drop.into_iter().rev() {
            rest.remove(i);
        }
        disks.push((center, 2.0 * lambda as f64 * h / n as f64));
        weights.push(lambda as u32);
    }
    Ok(DiskCover {
        disks,
        weights,
        h,
        n_points: n,
    })
}

/// Counts of a dense-sampling check of the product bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverCheck {
    pub outside: usize,
    pub violations: usize,
    /// Smallest `Σ log|s - aₖ| - n·log(h/e)` over outside samples.
    pub min_margin: f64,
}

/// Checks `Π|s - aₖ| > (h/e)ⁿ` in log space at every sample outside the cover.
pub fn verify_cover(points: &[Complex64], cover: &DiskCover, samples: &[Complex64]) -> CoverCheck {
    let floor = points.len() as f64 * (cover.h.ln() - 1.0);
    let mut outside = 0;
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for &s in samples {
        if cover.contains(s) {
            continue;
        }
        outside += 1;
        let lp: f64 = points.iter().map(|a| (s - a).norm().ln()).sum();
        let margin = lp - floor;
        if !(margin > 0.0) {
            violations += 1;
        }
        min_margin = min_margin.min(margin);
    }
    CoverCheck {
        outside,
        violations,
        min_margin,
    }
}

const MAX_SCAN_LEVEL: u32 = 10;

/// First point of the annulus `R₁/16 ≤ |s| ≤ R₁/4` outside every cover,
/// scanning polar grids of `4·2ᴸ` rings by `16·2ᴸ` rays for `L = 0, 1, …`.
pub fn select_annulus_point(covers: &[DiskCover], r1: f64) -> Result<Complex64> {
    if !(r1 > 0.0) || !r1.is_finite() {
        return Err(Error::InvalidParameter("R1 must be positive and finite"));
    }
    let (lo, hi) = (r1 / 16.0, r1 / 4.0);
    for level in 0..=MAX_SCAN_LEVEL {
        let rings = 4usize << level;
        let rays = 16usize << level;
        for i in 0..rings {
            let rad = lo + (hi - lo) * i as f64 / (rings - 1) as f64;
            for j in 0..rays {
                let s = Complex64::from_polar(rad, 2.0 * PI * j as f64 / rays as f64);
                if !covers.iter().any(|c| c.contains(s)) {
                    return Ok(s);
                }
            }
        }
    }
    Err(Error::ScanExhausted)
}

/// Annulus point for `f` with the zeros and poles in `|s| ≤ R₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusPoint {
    pub point: Complex64,
    pub zero_cover: DiskCover,
    pub pole_cover: DiskCover,
}

fn expand(records: &[ZeroRecord], r: f64) -> Vec<Complex64> {
    let mut out = Vec::new();
    for z in records.iter().filter(|z| z.position.norm() <= r) {
        for _ in 0..z.multiplicity {
            out.push(z.position);
        }
    }
    out
}

/// Covers the zeros and the poles of `f` in `|s| ≤ R₁` separately with
/// `h = R₁/32` and picks a point of the annulus outside both; `f` is finite
/// and nonzero there.
pub fn annulus_point_for(oracle: &MeromorphicOracle, r1: f64) -> Result<AnnulusPoint> {
    let zeros = expand(&locate_values(oracle, r1, Target::zero())?, r1);
    let poles = expand(&pole_records(oracle, r1)?, r1);
    let h = r1 / 32.0;
    let zero_cover = cartan_cover(&zeros, h)?;
    let pole_cover = cartan_cover(&poles, h)?;
    let point = select_annulus_point(&[zero_cover.clone(), pole_cover.clone()], r1)?;
    let lm = oracle.log_modulus(point)?;
    if !lm.is_finite() {
        return Err(Error::PreconditionFailed("selected point is a zero or pole"));
    }
    Ok(AnnulusPoint {
        point,
        zero_cover,
        pole_cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::as_oracle;
    use crate::series::ExponentialSum;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(r: f64, n: usize) -> Vec<Complex64> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = -r + 2.0 * r * (i as f64 + 0.5) / n as f64;
                let y = -r + 2.0 * r * (j as f64 + 0.5) / n as f64;
                out.push(c(x, y));
            }
        }
        out
    }

    #[test]
    fn single_point() {
        let cover = cartan_cover(&[c(0.0, 0.0)], 1.0).unwrap();
        assert_eq!(cover.disks, alloc::vec![(c(0.0, 0.0), 2.0)]);
        assert_eq!(cover.total_radius(), 2.0);
        let double = [c(0.0, 0.0), c(0.0, 0.0)];
        let cover = cartan_cover(&double, 1.0).unwrap();
        assert_eq!(cover.disks, alloc::vec![(c(0.0, 0.0), 2.0)]);
        assert_eq!(verify_cover(&double, &cover, &grid(5.0, 40)).violations, 0);
    }

    #[test]
    fn clusters_are_grouped() {
        let pts = [c(0.0, 0.0), c(0.1, 0.0), c(0.0, 0.1), c(5.0, 5.0)];
        let cover = cartan_cover(&pts, 1.0).unwrap();
        assert_eq!(cover.weights, [3, 1]);
        assert_eq!(cover.total_radius(), 2.0);
        let check = verify_cover(&pts, &cover, &grid(8.0, 80));
        assert!(check.outside > 5000);
        assert_eq!(check.violations, 0);
    }

    #[test]
    fn deterministic_under_permutation() {
        let pts = [c(1.0, 2.0), c(-1.0, 0.5), c(1.2, 2.1), c(3.0, -1.0)];
        let mut rev = pts;
        rev.reverse();
        assert_eq!(cartan_cover(&pts, 0.7).unwrap(), cartan_cover(&rev, 0.7).unwrap());
    }

    #[test]
    fn annulus_point() {
        assert_eq!(select_annulus_point(&[], 16.0).unwrap(), c(1.0, 0.0));
        let cover = cartan_cover(&[c(2.0, 0.0)], 0.5).unwrap();
        let s = select_annulus_point(core::slice::from_ref(&cover), 16.0).unwrap();
        assert!(!cover.contains(s));
        assert!(s.norm() >= 1.0 && s.norm() <= 4.0 + 1e-12);
    }

    #[test]
    fn annulus_point_for_lattice() {
        let f = as_oracle(&ExponentialSum::dirichlet(&[(0.0, 1.0), (1.0, -1.0)]).unwrap()).unwrap();
        let a = annulus_point_for(&f, 32.0).unwrap();
        assert_eq!(a.zero_cover.n_points, 11);
        assert!(f.eval(a.point).unwrap().value.norm() > 0.0);
        let zeros = expand(&locate_values(&f, 32.0, Target::zero()).unwrap(), 32.0);
        let check = verify_cover(&zeros, &a.zero_cover, &[a.point]);
        assert_eq!((check.outside, check.violations), (1, 0));
    }
}
