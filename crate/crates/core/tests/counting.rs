use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use valdist_core::counting::{counting_table, integrated_count, locate_values, Target};
use valdist_core::{count_in_disk, ExponentialSum, MeromorphicOracle, RecordKind};

fn sum(pairs: &[(f64, f64)]) -> MeromorphicOracle {
    MeromorphicOracle::from_sum(&ExponentialSum::dirichlet(pairs).unwrap()).unwrap()
}

/// Zeros of `1 + 2^{-s}` sit at `iπ(2k+1)/ln 2`.
fn lattice(r: f64) -> u64 {
    (-100i64..100).filter(|k| (PI * (2 * k + 1) as f64 / LN_2).abs() <= r).count() as u64
}

#[test]
fn table_matches_the_lattice() {
    let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
    let grid = [5.0, 10.0, 20.0, 50.0];
    let t = counting_table(&f, &grid).unwrap();
    for row in &t.rows {
        assert_eq!(row.n_zero, lattice(row.r));
        assert_eq!(row.n_pole, 0);
        assert!((row.ratio - row.n_zero as f64 / row.r).abs() < 1e-15);
    }
    assert!(t.is_monotone());
}

#[test]
fn one_minus_exp_has_a_zero_at_the_origin() {
    let f = sum(&[(0.0, 1.0), (1.0, -1.0)]);
    assert_eq!(count_in_disk(&f, 50.0, Target::zero()).unwrap().certified_count().unwrap(), 15);
    let zeros = locate_values(&f, 10.0, Target::zero()).unwrap();
    assert_eq!(zeros.len(), 3);
    assert!(zeros.iter().any(|z| z.position.norm() < 1e-8));
    // N(r,0) = log r + 2 log(r/2π) for 2π < r < 4π.
    let n = integrated_count(&f, 10.0, Target::zero()).unwrap();
    let exact = 10f64.ln() + 2.0 * (10.0 / (2.0 * PI)).ln();
    assert_eq!(n.origin_multiplicity, 1);
    assert!((n.zero_sum - exact).abs() < 1e-8);
    assert!((n.step_integral - exact).abs() < 1e-5);
}

#[test]
fn geometric_poles_and_a_points() {
    let f = MeromorphicOracle::geometric();
    let p = count_in_disk(&f, 20.0, Target::Infinity).unwrap();
    assert_eq!(p.certified_count().unwrap(), 7);
    // 1/(1-e^{-s}) = 2 exactly where e^{-s} = 1/2, i.e. s = ln 2 + 2πik.
    let two = Target::Value(Complex64::new(2.0, 0.0));
    let pts = locate_values(&f, 10.0, two).unwrap();
    assert_eq!(pts.len(), 3);
    for z in &pts {
        assert_eq!(z.kind, RecordKind::Zero);
        assert!((z.position.re - LN_2).abs() < 1e-8);
        let k = z.position.im / (2.0 * PI);
        assert!((k - k.round()).abs() < 1e-8);
    }
}

#[test]
fn outside_validity_is_an_error() {
    let z = MeromorphicOracle::zeta();
    assert!(count_in_disk(&z, 1e4, Target::zero()).is_err());
}
