use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use valdist_core::toolkit::*;
use valdist_core::verify::catalog;
use valdist_core::{count_in_disk, ExponentialSum, MeromorphicOracle, Target};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn weierstrass_product_counts_its_zeros() {
    let zeros = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, -3.0), c(3.5, 0.0)];
    let f = weierstrass_oracle(&zeros).unwrap();
    for (r, n) in [(1.0, 0), (1.5, 1), (2.5, 2), (3.2, 3), (4.0, 4)] {
        assert_eq!(count_in_disk(&f, r, Target::zero()).unwrap().certified_count().unwrap(), n);
    }
    for s in [c(0.3, 0.2), c(-4.0, 2.0), c(6.0, -6.0)] {
        let g = growth_bound_check(&zeros, s).unwrap();
        assert!(g.holds(), "{s}: {} > {}", g.lhs, g.rhs);
        assert!((g.lhs - f.log_modulus(s).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn annulus_points_avoid_both_covers() {
    for e in catalog().into_iter().filter(|e| e.is_evaluable()) {
        let a = annulus_point_for(e.oracle.as_ref().unwrap(), 32.0).unwrap();
        let m = a.point.norm();
        assert!((2.0..=8.0).contains(&m), "{}: {m}", e.key);
        assert!(!a.zero_cover.contains(a.point) && !a.pole_cover.contains(a.point));
    }
}

#[test]
fn lambda_removes_the_exponential_factor() {
    // e^{2s}(1+2^{-s}) maps to e^{2τ}(1+2^{-s-τ})/(1+2^{-s}).
    let base = MeromorphicOracle::from_sum(&ExponentialSum::dirichlet(&[(0.0, 1.0), (LN_2, 1.0)]).unwrap()).unwrap();
    let f = MeromorphicOracle::scale_by_exponential(&base, 2.0).unwrap();
    let tau = DEFAULT_TAU;
    assert!(tau_admissible(&f, tau, 1).unwrap());
    let l = lambda_apply(&f, tau).unwrap();
    let s = c(0.7, 0.4);
    let p = |s: Complex64| 1.0 + (-s * LN_2).exp();
    let expect = (2.0 * tau).exp() * p(s + tau) / p(s);
    assert!((l.eval(s).unwrap().value - expect).norm() < 1e-12);
}

#[test]
fn translation_numbers_of_a_periodic_sum() {
    // 1 + 2^{-s} has exact period 2π/ln 2.
    let sum = ExponentialSum::dirichlet(&[(0.0, 1.0), (LN_2, 1.0)]).unwrap();
    let period = 2.0 * PI / LN_2;
    assert!(translation_bound(&sum, 0.0, period).unwrap() < 1e-12);
    let scan = TranslationScan {
        sigma0: 0.0,
        start: 0.0,
        end: 100.0,
        window: 12.0,
        step: 1e-3,
    };
    let set = translation_numbers(&sum, 0.01, &scan).unwrap();
    assert!(set.found.iter().any(|w| (w - period).abs() < 0.01));
    assert!(set.max_gap <= period + 0.1);
}
