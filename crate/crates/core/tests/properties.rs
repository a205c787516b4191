use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use valdist_core::quadrature::GaussLegendre;
use valdist_core::symdiff::{symmetric_difference, DEFAULT_MATCH_TOL};
use valdist_core::toolkit::{cartan_cover, growth_bound_check, translation_bound};
use valdist_core::{ExponentialSum, RecordKind, Term, ZeroRecord};

fn record(p: Complex64, m: u32) -> ZeroRecord {
    ZeroRecord {
        position: p,
        multiplicity: m,
        kind: RecordKind::Zero,
        certification_radius: 1e-3,
        residual: 0.0,
        cluster: false,
    }
}

/// Zeros on a coarse lattice so that shared positions coincide exactly.
fn zero_set() -> impl Strategy<Value = Vec<ZeroRecord>> {
    prop::collection::btree_map((-8i32..8, -8i32..8), 1u32..4, 0..12).prop_map(|m| {
        m.into_iter()
            .map(|((x, y), k)| record(Complex64::new(x as f64 + 0.5, y as f64 + 0.25), k))
            .collect()
    })
}

fn polar_points(max: usize, lo: f64, hi: f64) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((lo..hi, 0.0..2.0 * PI), 1..=max)
        .prop_map(|v| v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect())
}

fn count(z: &[ZeroRecord], t: f64) -> i64 {
    z.iter().filter(|r| r.position.norm() <= t).map(|r| r.multiplicity as i64).sum()
}

const GRID: [f64; 4] = [2.0, 4.0, 8.0, 12.0];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_difference_is_a_metric(f in zero_set(), g in zero_set(), h in zero_set()) {
        let d = |a: &[ZeroRecord], b: &[ZeroRecord]| {
            symmetric_difference(a, b, &GRID, DEFAULT_MATCH_TOL).unwrap().d_values
        };
        let (fg, gf, fh, gh) = (d(&f, &g), d(&g, &f), d(&f, &h), d(&g, &h));
        prop_assert_eq!(&fg, &gf);
        prop_assert!(d(&f, &f).iter().all(|v| *v == 0));
        for (i, t) in GRID.iter().enumerate() {
            prop_assert!(fh[i] <= fg[i] + gh[i]);
            prop_assert!(fg[i] as i64 >= (count(&f, *t) - count(&g, *t)).abs());
        }
    }

    #[test]
    fn growth_bound_holds(zeros in polar_points(20, 1.0, 5.0), s in (0.0f64..12.0, 0.0..2.0 * PI)) {
        let s = Complex64::from_polar(s.0, s.1);
        let b = growth_bound_check(&zeros, s).unwrap();
        prop_assert!(b.at_zero || b.holds(), "{} > {}", b.lhs, b.rhs);
    }

    #[test]
    fn cartan_radii_sum_to_twice_h(points in polar_points(25, 0.0, 3.0), h in 0.05f64..4.0) {
        let cover = cartan_cover(&points, h).unwrap();
        prop_assert_eq!(cover.weights.iter().sum::<u32>() as usize, points.len());
        prop_assert!((cover.total_radius() - 2.0 * h).abs() <= 1e-12 * h.max(1.0));
        for (&(_, r), &w) in cover.disks.iter().zip(&cover.weights) {
            prop_assert!((r - 2.0 * w as f64 * h / points.len() as f64).abs() <= 1e-12 * h.max(1.0));
        }
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials(coeffs in prop::collection::vec(-3.0f64..3.0, 1..16), a in -2.0f64..0.0, b in 0.1f64..2.0) {
        let rule = GaussLegendre::new(8);
        let mut f = |x: f64| -> Result<Complex64, ()> {
            Ok(Complex64::new(coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c), 0.0))
        };
        let got = rule.integrate(&mut f, a, b).unwrap().re;
        let exact: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0))
            .sum();
        prop_assert!((got - exact).abs() <= 1e-11 * (1.0 + exact.abs()));
    }

    #[test]
    fn translation_bound_is_even_and_vanishes_at_zero(
        lambdas in prop::collection::btree_set(1u32..50, 1..5),
        omega in -100.0f64..100.0,
        sigma in 0.0f64..3.0,
    ) {
        let mut terms = vec![Term::real(0.0, 1.0)];
        terms.extend(lambdas.iter().map(|l| Term::real(*l as f64 / 10.0, 0.5)));
        let sum = ExponentialSum::new(terms, valdist_core::SignConvention::Dirichlet).unwrap();
        prop_assert_eq!(translation_bound(&sum, sigma, 0.0).unwrap(), 0.0);
        let up = translation_bound(&sum, sigma, omega).unwrap();
        let down = translation_bound(&sum, sigma, -omega).unwrap();
        prop_assert!((up - down).abs() <= 1e-12 * up.max(1.0));
        for s in [Complex64::new(sigma, 0.3), Complex64::new(sigma + 1.0, -7.0)] {
            let shift = Complex64::new(0.0, omega);
            let diff = (sum.evaluate(s + shift, 1e-10).unwrap().value - sum.evaluate(s, 1e-10).unwrap().value).norm();
            prop_assert!(diff <= up + 1e-9);
        }
    }
}
