use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use num_traits::Float;

use crate::oracle::MeromorphicOracle;
use crate::series::ExponentialSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Satisfies every hypothesis of the dichotomy.
    Positive,
    /// Violates a hypothesis on purpose.
    NegativeControl,
    /// Member of the distinct pair with disjoint zero sets.
    PairMember,
    /// Listed for its metadata only and never evaluated.
    MetadataOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisFlags {
    /// Finite nonzero limit as `Re s → +∞`.
    pub nonzero_limit: bool,
    pub finite_order: bool,
    /// More than one nonzero term, or not an exponential sum at all.
    pub nontrivial: bool,
}

impl HypothesisFlags {
    pub fn all(&self) -> bool {
        self.nonzero_limit && self.finite_order && self.nontrivial
    }
}

/// Exactly known zero or pole set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Empty,
    /// One simple point.
    Point { re: f64, im: f64 },
    /// Simple points `re + i(phase + k·spacing)`, `k ∈ ℤ`.
    Vertical { re: f64, phase: f64, spacing: f64 },
}

impl ClosedForm {
    /// Points with `|p| ≤ r`, sorted by imaginary part.
    pub fn points(&self, r: f64) -> Vec<Complex64> {
        match *self {
            ClosedForm::Empty => Vec::new(),
            ClosedForm::Point { re, im } => {
                let p = Complex64::new(re, im);
                if p.norm() <= r {
                    alloc::vec![p]
                } else {
                    Vec::new()
                }
            }
            ClosedForm::Vertical { re, phase, spacing } => {
                if re.abs() > r {
                    return Vec::new();
                }
                let k0 = ((-r - phase) / spacing).floor() as i64 - 1;
                let k1 = ((r - phase) / spacing).ceil() as i64 + 1;
                (k0..=k1)
                    .map(|k| Complex64::new(re, phase + k as f64 * spacing))
                    .filter(|p| p.norm() <= r)
                    .collect()
            }
        }
    }

    pub fn count(&self, r: f64) -> u64 {
        self.points(r).len() as u64
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Short key used on the command line.
    pub key: &'static str,
    pub name: &'static str,
    pub role: Role,
    /// `None` for metadata-only entries.
    pub oracle: Option<MeromorphicOracle>,
    /// The underlying finite sum, when there is one.
    pub sum: Option<ExponentialSum>,
    pub closed_zeros: Option<ClosedForm>,
    pub closed_poles: Option<ClosedForm>,
    pub declared_order: f64,
    pub flags: HypothesisFlags,
    /// Radius grid bounds `(min, max)` used by the suite.
    pub grid: (f64, f64),
}

impl CatalogEntry {
    pub fn is_evaluable(&self) -> bool {
        self.oracle.is_some()
    }
}

const ALL: HypothesisFlags = HypothesisFlags {
    nonzero_limit: true,
    finite_order: true,
    nontrivial: true,
};

fn dirichlet(pairs: &[(f64, f64)]) -> ExponentialSum {
    ExponentialSum::dirichlet(pairs).expect("catalog sums are valid")
}

fn sum_entry(
    key: &'static str,
    name: &'static str,
    role: Role,
    pairs: &[(f64, f64)],
    zeros: ClosedForm,
    flags: HypothesisFlags,
) -> CatalogEntry {
    let sum = dirichlet(pairs);
    CatalogEntry {
        key,
        name,
        role,
        oracle: Some(MeromorphicOracle::from_sum(&sum).expect("catalog sums are finite")),
        sum: Some(sum),
        closed_zeros: Some(zeros),
        closed_poles: Some(ClosedForm::Empty),
        declared_order: 1.0,
        flags,
        grid: (5.0, 50.0),
    }
}

/// Zeros of `1 + c·b^{-s}`: `ln c/ln b + iπ(2k+1)/ln b`.
fn one_plus(c: f64, b: f64) -> ClosedForm {
    ClosedForm::Vertical {
        re: c.ln() / b.ln(),
        phase: PI / b.ln(),
        spacing: 2.0 * PI / b.ln(),
    }
}

const TWO_PI_LATTICE: ClosedForm = ClosedForm::Vertical {
    re: 0.0,
    phase: 0.0,
    spacing: 2.0 * PI,
};

pub fn catalog() -> Vec<CatalogEntry> {
    let geometric = MeromorphicOracle::geometric();
    let zeta = MeromorphicOracle::zeta();
    alloc::vec![
        sum_entry(
            "one_plus_2pow",
            "1+2^-s",
            Role::Positive,
            &[(0.0, 1.0), (LN_2, 1.0)],
            one_plus(1.0, 2.0),
            ALL,
        ),
        sum_entry(
            "exp_neg",
            "e^-s",
            Role::NegativeControl,
            &[(1.0, 1.0)],
            ClosedForm::Empty,
            HypothesisFlags {
                nonzero_limit: false,
                finite_order: true,
                nontrivial: false,
            },
        ),
        CatalogEntry {
            key: "geometric",
            name: "1/(1-e^-s)",
            role: Role::Positive,
            oracle: Some(geometric),
            sum: None,
            closed_zeros: Some(ClosedForm::Empty),
            closed_poles: Some(TWO_PI_LATTICE),
            declared_order: 1.0,
            flags: ALL,
            grid: (5.0, 50.0),
        },
        sum_entry(
            "one_minus_exp",
            "1-e^-s",
            Role::Positive,
            &[(0.0, 1.0), (1.0, -1.0)],
            TWO_PI_LATTICE,
            ALL,
        ),
        sum_entry(
            "F45",
            "1+2*4^-s",
            Role::PairMember,
            &[(0.0, 1.0), (4f64.ln(), 2.0)],
            one_plus(2.0, 4.0),
            ALL,
        ),
        sum_entry(
            "G9",
            "1+3*9^-s",
            Role::PairMember,
            &[(0.0, 1.0), (9f64.ln(), 3.0)],
            one_plus(3.0, 9.0),
            ALL,
        ),
        CatalogEntry {
            key: "zeta",
            name: "zeta",
            role: Role::Positive,
            oracle: Some(zeta),
            sum: None,
            closed_zeros: None,
            closed_poles: Some(ClosedForm::Point { re: 1.0, im: 0.0 }),
            declared_order: 1.0,
            flags: ALL,
            grid: (3.0, 30.0),
        },
        CatalogEntry {
            key: "exp_exp_neg",
            name: "exp(e^-s)",
            role: Role::MetadataOnly,
            oracle: None,
            sum: None,
            closed_zeros: Some(ClosedForm::Empty),
            closed_poles: Some(ClosedForm::Empty),
            declared_order: f64::INFINITY,
            flags: HypothesisFlags {
                nonzero_limit: true,
                finite_order: false,
                nontrivial: true,
            },
            grid: (5.0, 50.0),
        },
    ]
}

pub fn entry(key: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.key == key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattices() {
        let z = entry("one_plus_2pow").unwrap().closed_zeros.unwrap();
        assert_eq!(z.points(10.0).len(), 2);
        assert!((z.points(10.0)[1].im - PI / LN_2).abs() < 1e-12);
        assert_eq!([5.0, 10.0, 20.0, 50.0].map(|r| z.count(r)), [2, 2, 4, 12]);
        let p = entry("geometric").unwrap().closed_poles.unwrap();
        assert_eq!([10.0, 20.0].map(|r| p.count(r)), [3, 7]);
        assert_eq!(entry("one_minus_exp").unwrap().closed_zeros.unwrap().count(50.0), 15);
    }

    #[test]
    fn flags() {
        assert!(!entry("exp_neg").unwrap().flags.nonzero_limit);
        let meta = entry("exp_exp_neg").unwrap();
        assert!(!meta.is_evaluable() && meta.declared_order.is_infinite());
        assert_eq!(catalog().len(), 8);
    }
}
