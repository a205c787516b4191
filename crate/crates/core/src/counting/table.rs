use alloc::vec::Vec;
use core::f64::consts::E;

use num_complex::Complex64;

use super::count::{count_in_disk, pole_records};
use super::integrated::{origin_multiplicity, zero_sum_from_records};
use super::{locate_values, Target, ZeroRecord};
use crate::error::{Error, Result};
use crate::oracle::MeromorphicOracle;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub r: f64,
    pub n_zero: u64,
    pub n_pole: u64,
    pub big_n_zero: f64,
    pub big_n_pole: f64,
    /// `(n_zero + n_pole) / r`.
    pub ratio: f64,
}

/// Counting functions of `f = a` and of the poles over a radius grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingTable {
    pub target: Complex64,
    pub rows: Vec<TableRow>,
}

/// Solutions and poles located once on the largest disk, reused row by row.
#[derive(Debug, Clone)]
pub struct TablePlan {
    target: Complex64,
    grid: Vec<f64>,
    zeros: Vec<ZeroRecord>,
    poles: Vec<ZeroRecord>,
    n0_zero: u32,
    n0_pole: u32,
}

fn check_grid(grid: &[f64], validity: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InsufficientGrid { points: 0, span: 0.0 });
    }
    if grid.iter().any(|r| !(*r > 0.0)) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radius grid must be positive and strictly increasing"));
    }
    let last = *grid.last().expect("nonempty");
    if last > validity {
        return Err(Error::OutsideValidity {
            modulus: last,
            radius: validity,
        });
    }
    Ok(())
}

impl TablePlan {
    pub fn new(oracle: &MeromorphicOracle, grid: &[f64], target: Complex64) -> Result<Self> {
        check_grid(grid, oracle.validity_radius())?;
        let r_max = *grid.last().expect("checked");
        let zeros = locate_values(oracle, r_max, Target::Value(target))?;
        let used = count_in_disk(oracle, r_max, Target::Infinity)?.radius_used;
        let mut poles = pole_records(oracle, used)?;
        poles.retain(|p| p.position.norm() <= used);
        Ok(Self {
            target,
            grid: grid.to_vec(),
            zeros,
            poles,
            n0_zero: origin_multiplicity(oracle, Target::Value(target))?,
            n0_pole: origin_multiplicity(oracle, Target::Infinity)?,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn zeros(&self) -> &[ZeroRecord] {
        &self.zeros
    }

    pub fn poles(&self) -> &[ZeroRecord] {
        &self.poles
    }

    /// Row at radius `r`; the argument-principle counts must agree with the
    /// records located on the largest disk.
    pub fn row(&self, oracle: &MeromorphicOracle, r: f64) -> Result<TableRow> {
        let cz = count_in_disk(oracle, r, Target::Value(self.target))?;
        let n_zero = cz.certified_count()?;
        let cp = count_in_disk(oracle, r, Target::Infinity)?;
        let n_pole = cp.certified_count()?;
        let zeros = select(&self.zeros, cz.radius_used);
        let poles = select(&self.poles, cp.radius_used);
        let located: u64 = zeros.iter().map(|z| z.multiplicity as u64).sum();
        if located != n_zero {
            return Err(Error::CountMismatch {
                expected: n_zero,
                located,
            });
        }
        let located: u64 = poles.iter().map(|z| z.multiplicity as u64).sum();
        if located != n_pole {
            return Err(Error::CountMismatch {
                expected: n_pole,
                located,
            });
        }
        Ok(TableRow {
            r,
            n_zero,
            n_pole,
            big_n_zero: zero_sum_from_records(&zeros, r, self.n0_zero),
            big_n_pole: zero_sum_from_records(&poles, r, self.n0_pole),
            ratio: (n_zero + n_pole) as f64 / r,
        })
    }

    pub fn assemble(&self, rows: Vec<TableRow>) -> CountingTable {
        CountingTable {
            target: self.target,
            rows,
        }
    }
}

fn select(records: &[ZeroRecord], r: f64) -> Vec<ZeroRecord> {
    records.iter().copied().filter(|z| z.position.norm() <= r).collect()
}

/// Table of zeros and poles over `grid`.
pub fn counting_table(oracle: &MeromorphicOracle, grid: &[f64]) -> Result<CountingTable> {
    counting_table_for(oracle, grid, Complex64::new(0.0, 0.0))
}

/// Table of the solutions of `f = a` and of the poles over `grid`.
pub fn counting_table_for(oracle: &MeromorphicOracle, grid: &[f64], a: Complex64) -> Result<CountingTable> {
    let plan = TablePlan::new(oracle, grid, a)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &r in grid {
        rows.push(plan.row(oracle, r)?);
    }
    Ok(plan.assemble(rows))
}

impl CountingTable {
    /// Grid indices `(i, j)` with `r_j ≥ e·r_i` and `r_j ≥ e` where
    /// `n(r_i) > N(r_j)` for the combined zero and pole counts.
    pub fn chain_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                if b.r >= E * a.r && b.r >= E {
                    let n = (a.n_zero + a.n_pole) as f64;
                    let big = b.big_n_zero + b.big_n_pole;
                    if n > big + 1e-9 * big.abs().max(1.0) {
                        bad.push((i, j));
                    }
                }
            }
        }
        bad
    }

    pub fn is_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].n_zero >= w[0].n_zero && w[1].n_pole >= w[0].n_pole)
    }
}
