//! Grid, complex-number and point-list syntax shared by the subcommands.

use num_complex::Complex64;

use crate::error::{usage, Result};
use valdist_core::verify::{linear_grid, log_grid};
use valdist_core::Target;

/// `a:b:n` (linear) or `a:b:nlog` (logarithmic) radius grid.
pub fn grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || usage(format!("grid `{spec}`: expected a:b:n or a:b:nlog"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(bad());
    };
    let lo: f64 = a.trim().parse().map_err(|_| bad())?;
    let hi: f64 = b.trim().parse().map_err(|_| bad())?;
    let (n, log) = match n.trim().strip_suffix("log") {
        Some(k) => (k, true),
        None => (n.trim(), false),
    };
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && hi <= lo) {
        return Err(usage(format!("grid `{spec}`: need n ≥ 1 and a < b")));
    }
    if log && lo <= 0.0 {
        return Err(usage(format!("grid `{spec}`: logarithmic grids need a > 0")));
    }
    Ok(if log { log_grid(lo, hi, n) } else { linear_grid(lo, hi, n) })
}

/// `x`, `x,y`, `x+yi`, `x-yi` or `yi`.
pub fn complex(text: &str) -> Result<Complex64> {
    let bad = || usage(format!("`{text}` is not a complex number"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?));
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im))
}

/// A target value, `inf` meaning poles.
pub fn target(text: &str) -> Result<Target> {
    match text.trim() {
        "inf" | "infinity" | "∞" => Ok(Target::Infinity),
        t => Ok(Target::Value(complex(t)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(grid("1:3:3").unwrap(), [1.0, 2.0, 3.0]);
        let g = grid("5:50:8log").unwrap();
        assert_eq!((g.len(), g[0], g[7]), (8, 5.0, 50.0));
        assert!(grid("5:50").is_err());
        assert!(grid("0:5:3log").is_err());
        assert!(grid("5:1:3").is_err());
    }

    #[test]
    fn complex_forms() {
        assert_eq!(complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(complex("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(complex("1-2i").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("1e-3+2e+1i").unwrap(), Complex64::new(1e-3, 20.0));
        assert!(complex("x").is_err());
        assert_eq!(target("inf").unwrap(), Target::Infinity);
    }
}
