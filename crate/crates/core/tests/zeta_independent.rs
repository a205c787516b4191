mod common;

use num_complex::Complex64;
use valdist_core::counting::{count_in_disk, Target};
use valdist_core::oracle::MeromorphicOracle;

#[test]
fn independent_zeta_agrees_with_known_values() {
    let z = common::Zeta::default();
    let two = z.eval(Complex64::new(2.0, 0.0));
    assert!((two.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    let half = z.eval(Complex64::new(0.5, 0.0));
    assert!((half.re + 1.460_354_508_809_586_8).abs() < 1e-12);
    let neg = z.eval(Complex64::new(-1.0, 0.0));
    assert!((neg.re + 1.0 / 12.0).abs() < 1e-11);
    let first = z.eval(Complex64::new(0.5, 14.134_725_141_734_693));
    assert!(first.norm() < 1e-10);
}

#[test]
fn independent_oracle_matches_library_values() {
    let z = common::Zeta::default();
    let lib = MeromorphicOracle::zeta();
    for s in [
        Complex64::new(0.3, 25.0),
        Complex64::new(-12.5, 7.0),
        Complex64::new(3.0, -29.0),
        Complex64::new(-25.0, 0.5),
    ] {
        let a = z.eval(s);
        let b = lib.eval(s).unwrap().value;
        assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0), "{s}: {a} vs {b}");
    }
}

#[test]
fn box_subdivision_confirms_zeta_counts() {
    let independent = common::zeta_zero_count(30.0);
    assert_eq!(independent, 21);
    let lib = MeromorphicOracle::zeta();
    let zeros = count_in_disk(&lib, 30.0, Target::zero()).unwrap();
    let poles = count_in_disk(&lib, 30.0, Target::Infinity).unwrap();
    assert_eq!((zeros.certified_count().unwrap(), poles.certified_count().unwrap()), (independent, 1));
}
