//! Argument-principle counting, zero location, integrated counting functions
//! and the Jensen identities.

mod contour;
mod count;
mod integrated;
mod jensen;
mod locate;
mod table;

use num_complex::Complex64;

pub use count::{count_in_disk, count_in_disk_with, count_in_region, pole_records, CountOptions, CountResult};
pub use integrated::{integrated_count, zero_sum_from_records, IntegratedCount};
pub use jensen::{jensen_residual, poisson_jensen_residual, JensenReport, PoissonJensenReport};
pub use locate::{locate_values, locate_values_with};
pub use table::{counting_table, counting_table_for, CountingTable, TablePlan, TableRow};

/// Value whose solutions are counted; `Infinity` counts poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Value(Complex64),
    Infinity,
}

impl Target {
    pub fn zero() -> Self {
        Target::Value(Complex64::new(0.0, 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    /// A solution of `f = a`.
    Zero,
    Pole,
}

/// A located solution or pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub position: Complex64,
    pub multiplicity: u32,
    pub kind: RecordKind,
    /// Radius of the circle on which the winding number equals `multiplicity`.
    pub certification_radius: f64,
    /// `|f(position) - a|` for zeros, `1/|f(position)|` for poles.
    pub residual: f64,
    /// Unresolved cluster merged at the resolution floor.
    pub cluster: bool,
}

/// Lexicographic order on positions, used for deterministic output.
pub(crate) fn lex_cmp(a: &Complex64, b: &Complex64) -> core::cmp::Ordering {
    a.re
        .partial_cmp(&b.re)
        .unwrap_or(core::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(core::cmp::Ordering::Equal))
}
