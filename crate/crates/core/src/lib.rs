//! Value distribution of exponential sums and general Dirichlet series.
//!
//! The crate counts zeros, poles and a-points of meromorphic oracles with the
//! argument principle, locates them with multiplicities, evaluates the
//! integrated counting function and the Jensen identities, and carries the
//! auxiliary machinery (genus-one products, the difference quotient `Λ`,
//! Cartan exclusion disks, Bohr translation numbers) used to study linear
//! lower bounds for `n(r,0) + n(r,∞)`.
//!
//! Everything here is `no_std` with `alloc`; file formats, parallel sweeps and
//! the command-line front end live in the companion `valdist` crate.

#![no_std]
// `Float` is shadowed by inherent f64 methods whenever std is in the graph.
#![allow(unused_imports)]

extern crate alloc;

pub mod counting;
pub mod error;
pub mod oracle;
pub mod quadrature;
pub mod series;
pub mod stats;
pub mod symdiff;
pub mod toolkit;
pub mod verify;
pub mod zeta;

use num_complex::Complex64;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use counting::{
    count_in_disk, integrated_count, jensen_residual, locate_values, poisson_jensen_residual,
    CountOptions, CountResult, CountingTable, RecordKind, TableRow, Target, ZeroRecord,
};
pub use error::{Error, Result};
pub use oracle::MeromorphicOracle;
pub use series::{ExponentialSum, SignConvention, TailBound, Term};

/// A complex value with an upper bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub error: f64,
}

impl Evaluation {
    pub fn new(value: Complex64, error: f64) -> Self {
        Self { value, error }
    }
}

/// Closed disk `|s - center| ≤ radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter("disk radius must be positive and finite"));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, s: Complex64) -> bool {
        (s - self.center).norm() <= self.radius
    }
}
