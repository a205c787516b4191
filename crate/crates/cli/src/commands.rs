use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{self, FunctionConfig};
use crate::error::{usage, CliError, Result};
use crate::output::{self, complex, Manifest};
use crate::parse;
use crate::{Cli, Command};
use valdist_core::counting::{
    count_in_disk_with, counting_table_for, jensen_residual, locate_values_with, poisson_jensen_residual,
    pole_records, CountOptions,
};
use valdist_core::symdiff::{self, UniquenessOptions, UniquenessVerdict};
use valdist_core::toolkit::{self, DiskCover, TranslationScan};
use valdist_core::verify::{self, CatalogEntry, EntryOutcome, Role};
use valdist_core::{Disk, MeromorphicOracle, Target};

const DEFAULT_RESIDUAL_TOL: f64 = 1e-7;
const DEFAULT_EVAL_TOL: f64 = 1e-12;

fn load(manifest: &mut Manifest, flag: &str, path: &Path) -> Result<FunctionConfig> {
    let f = config::load(path)?;
    manifest.config.insert(flag.into(), f.source.clone());
    Ok(f)
}

fn count_options(cli: &Cli, manifest: &mut Manifest) -> CountOptions {
    let mut opts = CountOptions::default();
    if let Some(t) = cli.global.tol {
        opts.tol = t;
    }
    manifest.tolerance("winding_tol", opts.tol);
    manifest.tolerance("proximity", opts.proximity);
    manifest.tolerance("retry_delta", opts.delta);
    manifest.parameter("max_retries", opts.max_retries);
    manifest.parameter("max_panels", opts.max_panels);
    opts
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {x}")))
    }
}

fn point_list(path: &Path) -> Result<Vec<Complex64>> {
    let file = path.display().to_string();
    let err = |p: String, m: &str| CliError::Config {
        file: file.clone(),
        path: p,
        message: m.into(),
    };
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| err("$".into(), &format!("invalid JSON: {e}")))?;
    let arr = v.as_array().ok_or_else(|| err("$".into(), "expected an array of [re, im]"))?;
    arr.iter()
        .enumerate()
        .map(|(i, p)| match p.as_array().map(|a| a.as_slice()) {
            Some([x, y]) => match (x.as_f64(), y.as_f64()) {
                (Some(x), Some(y)) if x.is_finite() && y.is_finite() => Ok(Complex64::new(x, y)),
                _ => Err(err(format!("$[{i}]"), "expected two finite numbers")),
            },
            _ => Err(err(format!("$[{i}]"), "expected [re, im]")),
        })
        .collect()
}

fn emit_json(cli: &Cli, manifest: &mut Manifest, v: &Value) -> Result<()> {
    if let Some(p) = &cli.global.out {
        manifest.outputs.push(p.clone());
    }
    output::emit(cli.global.out.as_deref(), &output::json_text(v))
}

fn disks_json(cover: &DiskCover) -> Value {
    Value::Array(cover.disks.iter().map(|(c, r)| json!([complex(*c), r])).collect())
}

fn verdict_label(v: UniquenessVerdict) -> &'static str {
    match v {
        UniquenessVerdict::Distinct => "distinct",
        UniquenessVerdict::IdenticalNumerically => "identical-numerically",
        UniquenessVerdict::Inconclusive => "inconclusive",
    }
}

pub fn run(cli: &Cli, manifest: &mut Manifest) -> Result<()> {
    match &cli.command {
        Command::Eval { function, s } => {
            let f = load(manifest, "fn", function)?;
            let s = parse::complex(s)?;
            let tol = cli.global.tol.unwrap_or(DEFAULT_EVAL_TOL);
            manifest.tolerance("eval_tol", tol);
            let (v, d) = match &f.sum {
                Some(sum) => (sum.evaluate(s, tol)?, sum.derivative(s, tol)?),
                None => f.oracle.value_and_derivative(s)?,
            };
            let out = json!({
                "s": complex(s),
                "value": complex(v.value),
                "error": v.error,
                "derivative": complex(d.value),
                "derivative_error": d.error,
            });
            emit_json(cli, manifest, &out)
        }
        Command::Count { function, r, a } => {
            let f = load(manifest, "fn", function)?;
            let r = positive("r", *r)?;
            let target = parse::target(a)?;
            manifest.parameter("r", r);
            manifest.parameter("a", a.as_str());
            let opts = count_options(cli, manifest);
            let n = count_in_disk_with(&f.oracle, r, target, &opts)?.certified_count()?;
            println!("{n}");
            if let Some(p) = &cli.global.out {
                let a = match target {
                    Target::Value(a) => a,
                    Target::Infinity => Complex64::new(0.0, 0.0),
                };
                let table = counting_table_for(&f.oracle, &[r], a)?;
                output::append_csv(p, &table.rows)?;
                manifest.outputs.push(p.clone());
            }
            Ok(())
        }
        Command::Zeros { function, r, a } => {
            let f = load(manifest, "fn", function)?;
            let r = positive("r", *r)?;
            manifest.parameter("r", r);
            manifest.parameter("a", a.as_str());
            let opts = count_options(cli, manifest);
            let recs = match parse::target(a)? {
                Target::Infinity => {
                    let mut p = pole_records(&f.oracle, r)?;
                    p.retain(|z| z.position.norm() <= r);
                    p
                }
                t => locate_values_with(&f.oracle, r, t, &opts)?,
            };
            let count: u64 = recs.iter().map(|z| z.multiplicity as u64).sum();
            emit_json(cli, manifest, &json!({ "r": r, "count": count, "records": output::records(&recs) }))
        }
        Command::Table { function, grid, a } => {
            let f = load(manifest, "fn", function)?;
            let g = parse::grid(grid)?;
            let a = match parse::target(a)? {
                Target::Value(a) => a,
                Target::Infinity => return Err(usage("--a inf: the table already reports poles")),
            };
            manifest.parameter("grid", grid.as_str());
            manifest.parameter("a", json!(complex(a)));
            let table = counting_table_for(&f.oracle, &g, a)?;
            if let Some(p) = &cli.global.out {
                manifest.outputs.push(p.clone());
            }
            output::emit(cli.global.out.as_deref(), &output::csv_table(&table))
        }
        Command::Jensen { function, r, quad_tol } => {
            let f = load(manifest, "fn", function)?;
            let r = positive("r", *r)?;
            let tol = cli.global.tol.unwrap_or(DEFAULT_RESIDUAL_TOL);
            manifest.parameter("r", r);
            manifest.tolerance("quad_tol", *quad_tol);
            manifest.tolerance("residual_tol", tol);
            let j = jensen_residual(&f.oracle, r, positive("quad-tol", *quad_tol)?)?;
            let out = json!({
                "r": r,
                "radius_used": j.radius_used,
                "lhs": j.lhs,
                "rhs": j.rhs,
                "residual": j.residual,
                "quadrature_error": j.quadrature_error,
                "origin_order": j.origin_order,
                "zeros": output::records(&j.zeros),
                "poles": output::records(&j.poles),
            });
            emit_json(cli, manifest, &out)?;
            if j.residual >= tol {
                return Err(CliError::Assertion(format!("Jensen residual {:e} ≥ {tol:e}", j.residual)));
            }
            Ok(())
        }
        Command::Poisson { function, r, s } => {
            let f = load(manifest, "fn", function)?;
            let r = positive("r", *r)?;
            let s = parse::complex(s)?;
            let tol = cli.global.tol.unwrap_or(DEFAULT_RESIDUAL_TOL);
            manifest.parameter("r", r);
            manifest.parameter("s", complex(s));
            manifest.tolerance("residual_tol", tol);
            let p = poisson_jensen_residual(&f.oracle, s, r)?;
            let out = json!({
                "r": r,
                "s": complex(s),
                "radius_used": p.radius_used,
                "log_modulus": p.log_modulus,
                "reconstruction": p.reconstruction,
                "residual": p.residual,
                "quadrature_error": p.quadrature_error,
            });
            emit_json(cli, manifest, &out)?;
            if p.residual >= tol {
                return Err(CliError::Assertion(format!("Poisson–Jensen residual {:e} ≥ {tol:e}", p.residual)));
            }
            Ok(())
        }
        Command::Product { zeros, s, samples } => {
            let zs = point_list(zeros)?;
            manifest.config.insert("zeros".into(), json!(zs.iter().map(|z| complex(*z)).collect::<Vec<_>>()));
            manifest.parameter("samples", *samples);
            let f = toolkit::weierstrass_oracle(&zs)?;
            let mut out = serde_json::Map::new();
            out.insert("zeros".into(), json!(zs.len()));
            if let Some(s) = s {
                let s = parse::complex(s)?;
                let b = toolkit::growth_bound_check(&zs, s)?;
                let v = f.eval(s)?;
                out.insert("s".into(), complex(s));
                out.insert("value".into(), complex(v.value));
                out.insert("log_modulus".into(), json!(b.lhs));
                out.insert("bound".into(), json!(b.rhs));
                out.insert("holds".into(), json!(b.holds()));
            }
            let reach = 2.0 * zs.iter().map(|z| z.norm()).fold(1.0, f64::max);
            let mut rng = ChaCha8Rng::seed_from_u64(cli.global.seed);
            let mut violations = 0usize;
            let mut worst = f64::NEG_INFINITY;
            for _ in 0..*samples {
                let s = Complex64::from_polar(reach * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
                let b = toolkit::growth_bound_check(&zs, s)?;
                if b.at_zero {
                    continue;
                }
                worst = worst.max(b.lhs - b.rhs);
                if !b.holds() {
                    violations += 1;
                }
            }
            if *samples > 0 {
                out.insert("samples".into(), json!(samples));
                out.insert("violations".into(), json!(violations));
                out.insert("max_excess".into(), json!(worst));
            }
            let holds = out.get("holds").and_then(Value::as_bool).unwrap_or(true);
            emit_json(cli, manifest, &Value::Object(out))?;
            if violations > 0 || !holds {
                return Err(CliError::Assertion("growth bound violated".into()));
            }
            Ok(())
        }
        Command::Lambda { function, tau, d, s } => {
            let f = load(manifest, "fn", function)?;
            let s = parse::complex(s)?;
            manifest.parameter("tau", *tau);
            manifest.parameter("d", *d);
            let admissible = toolkit::tau_admissible(&f.oracle, *tau, *d)?;
            let l = toolkit::lambda_iterate(&f.oracle, *tau, *d)?;
            let v = l.eval(s)?;
            let out = json!({
                "tau": tau,
                "d": d,
                "s": complex(s),
                "value": complex(v.value),
                "error": v.error,
                "admissible": admissible,
                "validity_radius": l.validity_radius(),
            });
            emit_json(cli, manifest, &out)
        }
        Command::Cartan {
            points,
            h,
            function,
            r1,
            samples,
        } => match (points, function) {
            (Some(points), None) => {
                let pts = point_list(points)?;
                let h = positive("h", h.ok_or_else(|| usage("--points needs --h"))?)?;
                manifest.config.insert("points".into(), json!(pts.iter().map(|z| complex(*z)).collect::<Vec<_>>()));
                manifest.parameter("h", h);
                manifest.parameter("samples", *samples);
                let cover = toolkit::cartan_cover(&pts, h)?;
                // Samples fill the bounding box of the points grown by 2h.
                let (mut lo, mut hi) = (Complex64::new(f64::MAX, f64::MAX), Complex64::new(f64::MIN, f64::MIN));
                for p in &pts {
                    lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
                    hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
                }
                let pad = Complex64::new(2.0 * h, 2.0 * h);
                let (lo, hi) = (lo - pad, hi + pad);
                let mut rng = ChaCha8Rng::seed_from_u64(cli.global.seed);
                let mut outside = Vec::with_capacity(*samples);
                let mut draws = 0usize;
                while outside.len() < *samples && draws < 1000 * samples.max(&1) {
                    draws += 1;
                    let s = Complex64::new(rng.random_range(lo.re..=hi.re), rng.random_range(lo.im..=hi.im));
                    if !cover.contains(s) {
                        outside.push(s);
                    }
                }
                let check = toolkit::verify_cover(&pts, &cover, &outside);
                let out = json!({
                    "h": h,
                    "n_points": cover.n_points,
                    "disks": disks_json(&cover),
                    "weights": cover.weights,
                    "total_radius": cover.total_radius(),
                    "samples": check.outside,
                    "violations": check.violations,
                    "min_log_margin": check.min_margin,
                });
                emit_json(cli, manifest, &out)?;
                if check.violations > 0 {
                    return Err(CliError::Assertion(format!("{} samples below (h/e)^n", check.violations)));
                }
                Ok(())
            }
            (None, Some(function)) => {
                let f = load(manifest, "fn", function)?;
                let r1 = positive("R1", *r1)?;
                manifest.parameter("R1", r1);
                let a = toolkit::annulus_point_for(&f.oracle, r1)?;
                let v = f.oracle.eval(a.point)?;
                let out = json!({
                    "R1": r1,
                    "point": complex(a.point),
                    "value": complex(v.value),
                    "zero_disks": disks_json(&a.zero_cover),
                    "pole_disks": disks_json(&a.pole_cover),
                    "h": a.zero_cover.h,
                });
                emit_json(cli, manifest, &out)
            }
            _ => Err(usage("cartan needs --points with --h, or --fn")),
        },
        Command::Translation {
            function,
            eps,
            sigma0,
            start,
            end,
            window,
            step,
            center,
            rho,
            radii,
            a,
        } => {
            let f = load(manifest, "fn", function)?;
            let sum = f
                .sum
                .as_ref()
                .ok_or_else(|| usage("translation numbers need an exp_sum config"))?;
            let scan = TranslationScan {
                sigma0: *sigma0,
                start: *start,
                end: *end,
                window: positive("window", *window)?,
                step: positive("step", *step)?,
            };
            manifest.tolerance("epsilon", *eps);
            manifest.parameter("sigma0", *sigma0);
            manifest.parameter("scan", json!([start, end]));
            manifest.parameter("window", *window);
            manifest.parameter("step", *step);
            let set = toolkit::translation_numbers(sum, positive("eps", *eps)?, &scan)?;
            let mut out = json!({
                "epsilon": set.epsilon,
                "sigma0": set.sigma0,
                "window": set.interval_length,
                "max_gap": set.max_gap,
                "count": set.found.len(),
                "omegas": set.found,
            });
            if let Some(center) = center {
                let c = parse::complex(center)?;
                let a = match parse::target(a)? {
                    Target::Value(a) => a,
                    Target::Infinity => return Err(usage("finite sums have no poles")),
                };
                let radii = parse::grid(radii.as_deref().ok_or_else(|| usage("--center needs --radii"))?)?;
                manifest.parameter("center", complex(c));
                manifest.parameter("rho", *rho);
                manifest.parameter("radii", json!(radii));
                let rep = toolkit::rouche_recurrence(sum, a, Disk::new(c, *rho)?, &set, &radii)?;
                let confirmed = toolkit::confirm_by_counting(&f.oracle, a, &rep)?;
                out["recurrence"] = json!({
                    "seed": complex(c),
                    "rho": rho,
                    "seed_count": rep.seed_count,
                    "mu": rep.mu,
                    "sigma_min": rep.sigma_min,
                    "certified_shifts": rep.certified_shifts,
                    "refused": rep.refused,
                    "rows": rep.rows.iter().map(|r| json!({
                        "r": r.r,
                        "certified": r.certified,
                        "N_lower_bound": r.integrated_lower_bound,
                    })).collect::<Vec<_>>(),
                    "slope": rep.slope,
                    "confirmed_by_counting": confirmed,
                });
                if !(rep.slope > 0.0) {
                    emit_json(cli, manifest, &out)?;
                    return Err(CliError::Assertion(format!("lower-bound slope {} is not positive", rep.slope)));
                }
            }
            emit_json(cli, manifest, &out)
        }
        Command::Symdiff { f, g, t, grid } => {
            let fc = load(manifest, "F", f)?;
            let gc = load(manifest, "G", g)?;
            let grid = match (t, grid) {
                (Some(t), None) => vec![positive("T", *t)?],
                (None, Some(g)) => parse::grid(g)?,
                _ => return Err(usage("symdiff needs --T or --grid")),
            };
            let t_max = *grid.last().expect("grids are nonempty");
            let opts = UniquenessOptions {
                match_tol: cli.global.match_tol,
                ..UniquenessOptions::default()
            };
            manifest.tolerance("match_tol", opts.match_tol);
            manifest.tolerance("theta", opts.theta);
            manifest.tolerance("limit_tol", opts.limit_tol);
            manifest.parameter("T", json!(grid));
            let count = count_options(cli, manifest);
            let zf = locate_values_with(&fc.oracle, t_max, Target::zero(), &count)?;
            let zg = locate_values_with(&gc.oracle, t_max, Target::zero(), &count)?;
            let rep = symdiff::symmetric_difference(&zf, &zg, &grid, opts.match_tol)?;
            let u = symdiff::uniqueness_check_with(&fc.oracle, &gc.oracle, t_max, &opts)?;
            // One radius has no slope of its own; the decade grid supplies it.
            let slope = rep.slope().or_else(|| u.symdiff.slope());
            let out = json!({
                "T": grid,
                "D": rep.d_values,
                "slope": slope,
                "verdict": verdict_label(u.verdict),
                "a_estimate": u.symdiff_growth.a_estimate,
                "boundary_deviation": u.boundary_deviation,
            });
            emit_json(cli, manifest, &out)
        }
        Command::Verify { grid, points, theta } => verify_suite(cli, manifest, grid.as_deref(), *points, *theta),
        Command::Catalog => {
            let list: Vec<Value> = verify::catalog().iter().map(entry_json).collect();
            emit_json(cli, manifest, &Value::Array(list))
        }
    }
}

fn role_label(r: Role) -> &'static str {
    match r {
        Role::Positive => "positive",
        Role::NegativeControl => "negative-control",
        Role::PairMember => "pair-member",
        Role::MetadataOnly => "metadata-only",
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "key": e.key,
        "name": e.name,
        "role": role_label(e.role),
        "evaluable": e.is_evaluable(),
        "declared_order": if e.declared_order.is_finite() { json!(e.declared_order) } else { json!("infinite") },
        "nonzero_limit": e.flags.nonzero_limit,
        "finite_order": e.flags.finite_order,
        "nontrivial": e.flags.nontrivial,
        "grid": [e.grid.0, e.grid.1],
        "validity_radius": e.oracle.as_ref().map(MeromorphicOracle::validity_radius),
    })
}

fn outcome_json(o: &EntryOutcome) -> Value {
    let d = o.dichotomy.as_ref();
    json!({
        "key": o.key,
        "name": o.name,
        "role": role_label(o.role),
        "passed": o.passed(),
        "failures": o.failures,
        "grid": o.grid,
        "branch": d.map(|d| d.branch.label()),
        "A_lower": d.map(|d| d.a_lower),
        "growth_exponent": d.map(|d| d.growth_exponent),
        "counts": d.map(|d| d.counts.clone()),
        "tail_integral_partial": d.map(|d| d.tail_integral_partial.clone()),
        "hypothesis_violating": d.map(|d| d.hypothesis_violating),
        "normalization_tables_equal": o.reduction.as_ref().map(|r| r.tables_equal),
    })
}

fn verify_suite(cli: &Cli, manifest: &mut Manifest, grid: Option<&str>, points: usize, theta: f64) -> Result<()> {
    let user_grid = grid.map(parse::grid).transpose()?;
    if points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    manifest.tolerance("theta", theta);
    manifest.tolerance("closed_form_tol", 1e-6);
    manifest.tolerance("winding_tol", CountOptions::default().tol);
    manifest.parameter("grid", grid.map_or(Value::Null, |g| json!(g)));
    manifest.parameter("points", points);
    let entries = verify::catalog();
    let mut outcomes: Vec<EntryOutcome> = entries
        .par_iter()
        .map(|e| verify::check_entry(e, &verify::entry_grid(e, user_grid.as_deref(), points), theta))
        .collect();
    outcomes.push(verify::check_gaussian_lattice());
    let passed = outcomes.iter().all(EntryOutcome::passed);
    let summary = json!({
        "passed": passed,
        "theta": theta,
        "entries": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
    });
    match &cli.global.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.clone(),
                source,
            })?;
            for o in &outcomes {
                if let Some(t) = o.table() {
                    let p = dir.join(format!("{}.csv", o.key));
                    output::write_file(&p, &output::csv_table(t))?;
                    manifest.outputs.push(p);
                }
            }
            let p = dir.join("summary.json");
            output::write_file(&p, &output::json_text(&summary))?;
            manifest.outputs.push(p);
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                println!("{status} {}", o.key);
            }
        }
        None => print!("{}", output::json_text(&summary)),
    }
    if passed {
        Ok(())
    } else {
        let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.key).collect();
        Err(CliError::Assertion(format!("failing entries: {}", failed.join(", "))))
    }
}
