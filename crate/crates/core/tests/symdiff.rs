use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use valdist_core::symdiff::*;
use valdist_core::{locate_values, ExponentialSum, MeromorphicOracle, Target};

fn sum(pairs: &[(f64, f64)]) -> MeromorphicOracle {
    MeromorphicOracle::from_sum(&ExponentialSum::dirichlet(pairs).unwrap()).unwrap()
}

fn pair() -> (MeromorphicOracle, MeromorphicOracle) {
    (sum(&[(0.0, 1.0), (4f64.ln(), 2.0)]), sum(&[(0.0, 1.0), (9f64.ln(), 3.0)]))
}

/// Zeros of `1 + c·b^{-s}` lie at `ln c/ln b + iπ(2k+1)/ln b`; counted in
/// `|s| ≤ T` directly.
fn lattice_count(c: f64, b: f64, t: f64) -> u64 {
    let re = c.ln() / b.ln();
    (-200i64..200)
        .filter(|k| {
            let im = PI * (2 * k + 1) as f64 / b.ln();
            (re * re + im * im).sqrt() <= t
        })
        .count() as u64
}

#[test]
fn closed_form_pair() {
    let (f, g) = pair();
    let zf = locate_values(&f, 20.0, Target::zero()).unwrap();
    let zg = locate_values(&g, 20.0, Target::zero()).unwrap();
    assert_eq!(zf.len() as u64, lattice_count(2.0, 4.0, 20.0));
    assert_eq!(zg.len() as u64, lattice_count(3.0, 9.0, 20.0));
    let r = symmetric_difference(&zf, &zg, &[20.0], DEFAULT_MATCH_TOL).unwrap();
    assert_eq!(r.d_values, [22]);
    assert!(r.matched_pairs.iter().all(|p| !p.is_matched()));
}

#[test]
fn pair_is_distinct() {
    let (f, g) = pair();
    let u = uniqueness_check(&f, &g, 40.0).unwrap();
    assert_eq!(u.verdict, UniquenessVerdict::Distinct);
    let slope = u.symdiff.slope().unwrap();
    let theory = (4f64.ln() + 9f64.ln()) / PI;
    assert!((slope - theory).abs() < 0.1 * theory, "{slope}");
    let e = enough_common_zeros(
        &locate_values(&f, 40.0, Target::zero()).unwrap(),
        &locate_values(&g, 40.0, Target::zero()).unwrap(),
        &u.symdiff.t_grid,
        DEFAULT_MATCH_TOL,
        DEFAULT_THETA_PRIME,
    )
    .unwrap();
    assert_eq!(e.n_e, u.symdiff.d_values);
    assert!(!e.o_r_verdict);
}

#[test]
fn same_function_is_identical() {
    let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
    let u = uniqueness_check(&f, &f, 30.0).unwrap();
    assert_eq!(u.verdict, UniquenessVerdict::IdenticalNumerically);
    let v = linear_growth_verdict(&u.symdiff, DEFAULT_THETA).unwrap();
    assert!(!v.linear);
}

#[test]
fn period_shift_has_the_same_zeros() {
    let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
    let shifted = MeromorphicOracle::shift(&f, Complex64::new(0.0, 2.0 * PI / LN_2)).unwrap();
    let grid = decade_grid(30.0, 10);
    let r = symmetric_difference(
        &locate_values(&f, 30.0, Target::zero()).unwrap(),
        &locate_values(&shifted, 30.0, Target::zero()).unwrap(),
        &grid,
        DEFAULT_MATCH_TOL,
    )
    .unwrap();
    assert!(r.d_values.iter().all(|d| *d == 0));
    assert!(!linear_growth_verdict(&r, DEFAULT_THETA).unwrap().linear);
}

#[test]
fn shared_zeros_but_different_functions() {
    // 1 + e^{-35} e^{-s} has no zeros in |s| < 35 and tends to 1.
    let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
    let factor = sum(&[(0.0, 1.0), (1.0, (-35f64).exp())]);
    let g = MeromorphicOracle::product(&[f.clone(), factor]).unwrap();
    let u = uniqueness_check(&f, &g, 30.0).unwrap();
    assert!(u.symdiff.d_values.iter().all(|d| *d == 0));
    assert!(u.quotient_counts.iter().all(|n| *n == 0));
    assert_eq!(u.verdict, UniquenessVerdict::Inconclusive);
}

#[test]
fn limit_hypothesis_is_checked() {
    let f = sum(&[(0.0, 1.0), (LN_2, 1.0)]);
    let g = sum(&[(0.0, 2.0), (LN_2, 1.0)]);
    assert!(uniqueness_check(&f, &g, 10.0).is_err());
}
