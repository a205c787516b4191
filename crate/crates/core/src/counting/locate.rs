//! Zero location by recursive subdivision with argument-principle box counts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::contour::{rule, segment_integral, ContourError, LogDerivative};
use super::count::{count_in_disk_with, pole_records, CountOptions};
use super::{lex_cmp, RecordKind, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::{MeromorphicOracle, SMALL_CIRCLE_NODES};
use crate::quadrature::GaussLegendre;

/// Split positions tried in turn; none is the midpoint, so symmetry axes of
/// real-coefficient functions never become box edges.
const SPLITS: [f64; 8] = [0.4731, 0.5269, 0.4379, 0.5621, 0.4127, 0.5873, 0.3833, 0.6167];
/// Multiplicities above this are reported as clusters.
pub const MULTIPLICITY_CAP: u32 = 16;
const SEGMENT_TOL: f64 = 1e-8;
/// Edge proximity, relative to the box side.
const EDGE_NEAR: f64 = 1e-5;
const GRID_OFFSET: (f64, f64) = (0.3719, 0.4127);

#[derive(Debug, Clone, Copy)]
struct Cell {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    /// Counter-clockwise edge integrals: bottom, right, top, left.
    edges: [Complex64; 4],
    zeros: u32,
}

impl Cell {
    fn side(&self) -> f64 {
        (self.x1 - self.x0).min(self.y1 - self.y0)
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn nearest_modulus(&self) -> f64 {
        let dx = if self.x0 > 0.0 {
            self.x0
        } else if self.x1 < 0.0 {
            -self.x1
        } else {
            0.0
        };
        let dy = if self.y0 > 0.0 {
            self.y0
        } else if self.y1 < 0.0 {
            -self.y1
        } else {
            0.0
        };
        dx.hypot(dy)
    }

    fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.re >= self.x0 - slack && z.re <= self.x1 + slack && z.im >= self.y0 - slack && z.im <= self.y1 + slack
    }
}

fn nearest_modulus(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    Cell {
        x0,
        y0,
        x1,
        y1,
        edges: [Complex64::new(0.0, 0.0); 4],
        zeros: 0,
    }
    .nearest_modulus()
}

fn farthest_modulus(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    x0.abs().max(x1.abs()).hypot(y0.abs().max(y1.abs()))
}

fn winding_of(edges: &[Complex64; 4]) -> f64 {
    let total = edges[0] + edges[1] + edges[2] + edges[3];
    (total / Complex64::new(0.0, 2.0 * PI)).re
}

struct Grid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    cells: Vec<(usize, usize)>,
    extent: f64,
}

fn choose_grid(r: f64, h: f64, validity: f64) -> Option<Grid> {
    let mut k = 1usize;
    while k <= 64 {
        let (xs, ys) = if k == 1 {
            (alloc::vec![-h, h], alloc::vec![-h, h])
        } else {
            let side = 2.0 * h / k as f64;
            let xs = (0..=k + 1)
                .map(|j| -h + (j as f64 + GRID_OFFSET.0 - 1.0) * side)
                .collect();
            let ys = (0..=k + 1)
                .map(|i| -h + (i as f64 + GRID_OFFSET.1 - 1.0) * side)
                .collect();
            (xs, ys)
        };
        let mut cells = Vec::new();
        let mut extent: f64 = 0.0;
        for i in 0..ys.len() - 1 {
            for j in 0..xs.len() - 1 {
                if nearest_modulus(xs[j], ys[i], xs[j + 1], ys[i + 1]) <= r {
                    cells.push((i, j));
                    extent = extent.max(farthest_modulus(xs[j], ys[i], xs[j + 1], ys[i + 1]));
                }
            }
        }
        if extent < validity {
            return Some(Grid { xs, ys, cells, extent });
        }
        k *= 2;
    }
    None
}

/// Locates the solutions of `f = a` (or the poles) in `|s| ≤ r`.
pub fn locate_values(oracle: &MeromorphicOracle, r: f64, target: Target) -> Result<Vec<ZeroRecord>> {
    locate_values_with(oracle, r, target, &CountOptions::default())
}

pub fn locate_values_with(
    oracle: &MeromorphicOracle,
    r: f64,
    target: Target,
    opts: &CountOptions,
) -> Result<Vec<ZeroRecord>> {
    let count = count_in_disk_with(oracle, r, target, opts)?;
    let n = count.certified_count()?;
    let a = match target {
        Target::Infinity => {
            let mut poles = pole_records(oracle, count.radius_used)?;
            poles.retain(|p| p.position.norm() <= count.radius_used);
            return Ok(poles);
        }
        Target::Value(a) => a,
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    locate_counted(oracle, count.radius_used, a, n)
}

struct Locator<'a> {
    oracle: &'a MeromorphicOracle,
    a: Complex64,
    gl: GaussLegendre,
    poles: Vec<Complex64>,
    pole_orders: Vec<u32>,
    floor: f64,
}

struct Found {
    position: Complex64,
    multiplicity: u32,
    verified_radius: f64,
    cluster: bool,
}

impl<'a> Locator<'a> {
    fn ld(&self, near: f64) -> LogDerivative<'a> {
        LogDerivative::new(self.oracle, self.a, near)
    }

    fn seg(&self, z0: Complex64, z1: Complex64, near: f64) -> core::result::Result<Complex64, ContourError> {
        segment_integral(&self.gl, &self.ld(near), z0, z1, SEGMENT_TOL)
    }

    fn poles_inside(&self, x0: f64, y0: f64, x1: f64, y1: f64) -> u32 {
        self.poles
            .iter()
            .zip(&self.pole_orders)
            .filter(|(p, _)| p.re > x0 && p.re < x1 && p.im > y0 && p.im < y1)
            .map(|(_, k)| *k)
            .sum()
    }

    fn box_zeros(&self, x0: f64, y0: f64, x1: f64, y1: f64, edges: &[Complex64; 4]) -> Result<u32> {
        let w = winding_of(edges);
        let k = w.round();
        if (w - k).abs() > 0.25 {
            return Err(Error::Uncertified {
                radius: (x1 - x0).max(y1 - y0),
                winding: w,
            });
        }
        let z = k as i64 + self.poles_inside(x0, y0, x1, y1) as i64;
        if z < 0 {
            return Err(Error::Uncertified {
                radius: (x1 - x0).max(y1 - y0),
                winding: w,
            });
        }
        Ok(z as u32)
    }

    fn tiny_winding(&self, z: Complex64, rho: f64) -> Option<f64> {
        let ld = self.ld(0.0);
        let n = SMALL_CIRCLE_NODES;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let t = 2.0 * PI * (j as f64 + 0.5) / n as f64;
            let e = Complex64::from_polar(rho, t);
            acc += ld.at(z + e).ok()? * e;
        }
        Some((acc / n as f64).re)
    }

    /// Newton (modified by the multiplicity when it exceeds one) from the
    /// cell center; returns the limit and the last step length.
    fn newton(&self, cell: &Cell, mult: u32) -> Option<(Complex64, f64)> {
        let ld = self.ld(0.0);
        let mut z = cell.center();
        let slack = 0.5 * cell.side();
        let mut prev = f64::INFINITY;
        for it in 0..80 {
            let l = match ld.at(z) {
                Ok(l) => l,
                Err(ContourError::Near) => return Some((z, 0.0)),
                Err(_) => return None,
            };
            let step = Complex64::new(mult as f64, 0.0) / l;
            let len = step.norm();
            if !len.is_finite() {
                return None;
            }
            if it >= 3 && len >= prev && prev < 1e-6 * z.norm().max(1.0) {
                return Some((z, prev));
            }
            z -= step;
            if !cell.contains(z, slack) {
                return None;
            }
            if len <= 1e-14 * z.norm().max(1.0) {
                return Some((z, len));
            }
            prev = len;
        }
        if prev < 1e-6 * z.norm().max(1.0) {
            Some((z, prev))
        } else {
            None
        }
    }

    fn try_isolate(&self, cell: &Cell) -> Option<Found> {
        let (z, step) = self.newton(cell, cell.zeros)?;
        if !cell.contains(z, 1e-12 * z.norm().max(1.0)) {
            return None;
        }
        let base = if cell.zeros == 1 { 1e-6 } else { 1e-5 };
        let rho = (base * z.norm().max(1.0)).max(100.0 * step).min(0.25 * cell.side().max(self.floor));
        let w = self.tiny_winding(z, rho)?;
        if (w - cell.zeros as f64).abs() < 0.25 {
            Some(Found {
                position: z,
                multiplicity: cell.zeros,
                verified_radius: rho,
                cluster: cell.zeros > MULTIPLICITY_CAP,
            })
        } else {
            None
        }
    }

    fn split(&self, cell: &Cell) -> Result<[Cell; 4]> {
        let mut last_err = Error::QuadratureFailed { achieved: f64::NAN };
        for &f in SPLITS.iter() {
            let fy = 1.0 - f;
            let xs = cell.x0 + f * (cell.x1 - cell.x0);
            let ys = cell.y0 + fy * (cell.y1 - cell.y0);
            let near = EDGE_NEAR * (cell.side() * f.min(fy));
            match self.split_at(cell, xs, ys, near) {
                Ok(children) => return Ok(children),
                Err(ContourError::Near) => continue,
                Err(ContourError::NotConverged(e)) => {
                    last_err = Error::QuadratureFailed { achieved: e };
                    continue;
                }
                Err(ContourError::Oracle(e)) => return Err(e),
            }
        }
        Err(last_err)
    }

    fn split_at(
        &self,
        cell: &Cell,
        xs: f64,
        ys: f64,
        near: f64,
    ) -> core::result::Result<[Cell; 4], ContourError> {
        let p = |x: f64, y: f64| Complex64::new(x, y);
        let (x0, y0, x1, y1) = (cell.x0, cell.y0, cell.x1, cell.y1);
        let [bottom, right, top, left] = cell.edges;
        let b1 = self.seg(p(x0, y0), p(xs, y0), near)?;
        let r1 = self.seg(p(x1, y0), p(x1, ys), near)?;
        let t1 = self.seg(p(x1, y1), p(xs, y1), near)?;
        let l1 = self.seg(p(x0, y1), p(x0, ys), near)?;
        let v1 = self.seg(p(xs, y0), p(xs, ys), near)?;
        let v2 = self.seg(p(xs, ys), p(xs, y1), near)?;
        let h1 = self.seg(p(x0, ys), p(xs, ys), near)?;
        let h2 = self.seg(p(xs, ys), p(x1, ys), near)?;
        let (b2, r2, t2, l2) = (bottom - b1, right - r1, top - t1, left - l1);
        let make = |x0: f64, y0: f64, x1: f64, y1: f64, edges: [Complex64; 4]| Cell {
            x0,
            y0,
            x1,
            y1,
            edges,
            zeros: 0,
        };
        Ok([
            make(x0, y0, xs, ys, [b1, v1, -h1, l2]),
            make(xs, y0, x1, ys, [b2, r1, -h2, -v1]),
            make(xs, ys, x1, y1, [h2, r2, t1, -v2]),
            make(x0, ys, xs, y1, [h1, v2, t2, l1]),
        ])
    }
}

fn locate_counted(oracle: &MeromorphicOracle, r: f64, a: Complex64, n: u64) -> Result<Vec<ZeroRecord>> {
    let mut last_err = Error::ValidityExhausted;
    for attempt in 0..8 {
        let h = r * 1.03125 * (1.0 + 0.0137 * attempt as f64);
        let grid = choose_grid(r, h, oracle.validity_radius()).ok_or(Error::ValidityExhausted)?;
        match locate_on_grid(oracle, r, a, n, &grid) {
            Ok(v) => return Ok(v),
            Err(Some(e)) => return Err(e),
            Err(None) => {
                last_err = Error::QuadratureFailed { achieved: f64::NAN };
            }
        }
    }
    Err(last_err)
}

/// `Err(None)` asks for a perturbed grid.
fn locate_on_grid(
    oracle: &MeromorphicOracle,
    r: f64,
    a: Complex64,
    n: u64,
    grid: &Grid,
) -> core::result::Result<Vec<ZeroRecord>, Option<Error>> {
    let poles = pole_records(oracle, grid.extent).map_err(Some)?;
    let loc = Locator {
        oracle,
        a,
        gl: rule(),
        poles: poles.iter().map(|p| p.position).collect(),
        pole_orders: poles.iter().map(|p| p.multiplicity).collect(),
        floor: 1e-9 * r.max(1.0),
    };
    let side = (grid.xs[1] - grid.xs[0]).min(grid.ys[1] - grid.ys[0]);
    let near = EDGE_NEAR * side;
    let mut cache: BTreeMap<(u8, usize, usize), Complex64> = BTreeMap::new();
    let mut edge = |kind: u8, i: usize, j: usize| -> core::result::Result<Complex64, Option<Error>> {
        if let Some(v) = cache.get(&(kind, i, j)) {
            return Ok(*v);
        }
        let (z0, z1) = if kind == 0 {
            (Complex64::new(grid.xs[j], grid.ys[i]), Complex64::new(grid.xs[j + 1], grid.ys[i]))
        } else {
            (Complex64::new(grid.xs[j], grid.ys[i]), Complex64::new(grid.xs[j], grid.ys[i + 1]))
        };
        let v = match loc.seg(z0, z1, near) {
            Ok(v) => v,
            Err(ContourError::Oracle(e)) => return Err(Some(e)),
            Err(_) => return Err(None),
        };
        cache.insert((kind, i, j), v);
        Ok(v)
    };
    let mut stack: Vec<Cell> = Vec::new();
    for &(i, j) in grid.cells.iter().rev() {
        let edges = [edge(0, i, j)?, edge(1, i, j + 1)?, -edge(0, i + 1, j)?, -edge(1, i, j)?];
        let (x0, y0, x1, y1) = (grid.xs[j], grid.ys[i], grid.xs[j + 1], grid.ys[i + 1]);
        let zeros = loc.box_zeros(x0, y0, x1, y1, &edges).map_err(Some)?;
        if zeros > 0 {
            stack.push(Cell {
                x0,
                y0,
                x1,
                y1,
                edges,
                zeros,
            });
        }
    }

    let mut found: Vec<Found> = Vec::new();
    while let Some(cell) = stack.pop() {
        if cell.nearest_modulus() > r {
            continue;
        }
        if let Some(f) = loc.try_isolate(&cell) {
            found.push(f);
            continue;
        }
        if cell.side() <= loc.floor {
            found.push(Found {
                position: cell.center(),
                multiplicity: cell.zeros,
                verified_radius: cell.side(),
                cluster: true,
            });
            continue;
        }
        let children = loc.split(&cell).map_err(Some)?;
        for mut ch in children.into_iter().rev() {
            ch.zeros = loc.box_zeros(ch.x0, ch.y0, ch.x1, ch.y1, &ch.edges).map_err(Some)?;
            if ch.zeros > 0 {
                stack.push(ch);
            }
        }
    }

    let positions: Vec<Complex64> = found
        .iter()
        .map(|f| f.position)
        .chain(loc.poles.iter().copied())
        .collect();
    let mut records = Vec::with_capacity(found.len());
    for (idx, f) in found.iter().enumerate() {
        if f.position.norm() > r {
            continue;
        }
        let gap = positions
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, q)| (*q - f.position).norm())
            .fold(f64::INFINITY, f64::min);
        let mut rho = (0.4 * gap).min(1e-2 * r.max(1.0)).max(f.verified_radius);
        if !f.cluster {
            match loc.tiny_winding(f.position, rho) {
                Some(w) if (w - f.multiplicity as f64).abs() < 0.25 => {}
                _ => rho = f.verified_radius,
            }
        }
        let residual = oracle
            .eval(f.position)
            .map(|e| (e.value - a).norm())
            .unwrap_or(f64::NAN);
        records.push(ZeroRecord {
            position: f.position,
            multiplicity: f.multiplicity,
            kind: RecordKind::Zero,
            certification_radius: rho,
            residual,
            cluster: f.cluster,
        });
    }
    records.sort_by(|x, y| lex_cmp(&x.position, &y.position));
    let located: u64 = records.iter().map(|z| z.multiplicity as u64).sum();
    if located != n {
        return Err(Some(Error::CountMismatch { expected: n, located }));
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{as_oracle, MeromorphicOracle};
    use crate::series::ExponentialSum;
    use core::f64::consts::LN_2;

    fn sum(pairs: &[(f64, f64)]) -> MeromorphicOracle {
        as_oracle(&ExponentialSum::dirichlet(pairs).unwrap()).unwrap()
    }

    #[test]
    fn one_minus_exp_lattice() {
        let f = sum(&[(0.0, 1.0), (1.0, -1.0)]);
        let z = locate_values(&f, 7.0, Target::zero()).unwrap();
        assert_eq!(z.len(), 3);
        let expect = [-2.0 * PI, 0.0, 2.0 * PI];
        let mut ims: Vec<f64> = z.iter().map(|r| r.position.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in ims.iter().zip(expect) {
            assert!((got - want).abs() < 1e-10);
        }
        assert!(z.iter().all(|r| r.multiplicity == 1 && r.position.re.abs() < 1e-10));
    }

    #[test]
    fn counterexample_member_zeros() {
        let f = sum(&[(0.0, 1.0), (4f64.ln(), 2.0)]);
        let z = locate_values(&f, 5.0, Target::zero()).unwrap();
        assert_eq!(z.len(), 2);
        for r in &z {
            assert!((r.position.re - 0.5).abs() < 1e-10);
            assert!((r.position.im.abs() - PI / 4f64.ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn squared_oracle_doubles_multiplicity() {
        let f = sum(&[(0.0, 1.0), (1.0, -1.0)]);
        let sq = MeromorphicOracle::product(&[f.clone(), f]).unwrap();
        let z = locate_values(&sq, 7.0, Target::zero()).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn records_are_sorted_and_isolated() {
        let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
        let z = locate_values(&f, 20.0, Target::zero()).unwrap();
        assert_eq!(z.len(), 4);
        for w in z.windows(2) {
            assert!(lex_cmp(&w[0].position, &w[1].position).is_le());
            let d = (w[0].position - w[1].position).norm();
            assert!(w[0].certification_radius + w[1].certification_radius < d);
        }
    }
}
