use valdist_core::verify::*;

#[test]
fn full_suite_passes() {
    let rep = run_suite(None, 8, DEFAULT_THETA);
    for o in &rep.outcomes {
        let d = o.dichotomy.as_ref();
        println!(
            "{:14} {:?} A={:?} branch={:?} {:?}",
            o.key,
            o.role,
            d.map(|d| d.a_lower),
            d.map(|d| d.branch.label()),
            o.failures
        );
    }
    assert!(rep.passed());
    assert_eq!(rep.outcomes.len(), catalog().len() + 1);
}

#[test]
fn slopes_near_lattice_densities() {
    for (key, density) in [
        ("one_plus_2pow", std::f64::consts::LN_2 / std::f64::consts::PI),
        ("one_minus_exp", 1.0 / std::f64::consts::PI),
    ] {
        let e = entry(key).unwrap();
        let d = dichotomy_check(&e, &log_grid(5.0, 50.0, 8), DEFAULT_THETA).unwrap();
        let last = d.table.as_ref().unwrap().rows.last().unwrap().ratio;
        assert!((last - density).abs() < 0.15 * density, "{key}: {last}");
        assert_eq!(d.branch, Branch::LinearLowerBound);
    }
}

#[test]
fn closed_forms_agree_on_every_disk() {
    for e in catalog().iter().filter(|e| e.is_evaluable() && e.closed_zeros.is_some()) {
        let grid = entry_grid(e, None, 8);
        let t = counting_table(e, &grid).unwrap();
        for row in &t.rows {
            assert_eq!(row.n_zero, e.closed_zeros.unwrap().count(row.r), "{} at {}", e.key, row.r);
        }
    }
}

#[test]
fn metadata_entry_is_never_evaluated() {
    let e = entry("exp_exp_neg").unwrap();
    assert!(counting_table(&e, &[5.0]).is_err());
    assert!(!e.flags.finite_order);
}
