//! Function configs, read from JSON by hand so every error names the
//! offending field by its path.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{CliError, Result};
use valdist_core::{ExponentialSum, MeromorphicOracle, SignConvention, Term};

/// A parsed function config: the oracle, plus the finite sum when the config
/// is a bare `exp_sum`.
#[derive(Debug, Clone)]
pub struct FunctionConfig {
    pub oracle: MeromorphicOracle,
    pub sum: Option<ExponentialSum>,
    /// The config as read, echoed into run manifests.
    pub source: Value,
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn err(&self, path: &str, message: impl Into<String>) -> CliError {
        CliError::Config {
            file: self.file.to_string(),
            path: path.to_string(),
            message: message.into(),
        }
    }

    fn field<'v>(&self, v: &'v Value, path: &str, key: &str) -> Result<&'v Value> {
        let obj = v.as_object().ok_or_else(|| self.err(path, "expected an object"))?;
        obj.get(key).ok_or_else(|| self.err(&format!("{path}.{key}"), "missing field"))
    }

    fn number(&self, v: &Value, path: &str) -> Result<f64> {
        v.as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| self.err(path, "expected a finite number"))
    }

    /// `[re, im]` or a bare real number.
    fn complex(&self, v: &Value, path: &str) -> Result<Complex64> {
        if let Some(x) = v.as_f64() {
            return Ok(Complex64::new(x, 0.0));
        }
        match v.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => Ok(Complex64::new(
                self.number(re, &format!("{path}[0]"))?,
                self.number(im, &format!("{path}[1]"))?,
            )),
            _ => Err(self.err(path, "expected [re, im] or a number")),
        }
    }

    fn core(&self, path: &str, e: valdist_core::Error) -> CliError {
        self.err(path, e.to_string())
    }

    fn function(&self, v: &Value, path: &str) -> Result<(MeromorphicOracle, Option<ExponentialSum>)> {
        let tpath = format!("{path}.type");
        let kind = self
            .field(v, path, "type")?
            .as_str()
            .ok_or_else(|| self.err(&tpath, "expected a string"))?;
        match kind {
            "exp_sum" => {
                let sum = self.exp_sum(v, path)?;
                let oracle = MeromorphicOracle::from_sum(&sum).map_err(|e| self.core(path, e))?;
                Ok((oracle, Some(sum)))
            }
            "geometric" => Ok((MeromorphicOracle::geometric(), None)),
            "zeta" => match v.get("radius") {
                None => Ok((MeromorphicOracle::zeta(), None)),
                Some(r) => {
                    let rpath = format!("{path}.radius");
                    let r = self.number(r, &rpath)?;
                    let z = MeromorphicOracle::zeta_with_radius(r).map_err(|e| self.core(&rpath, e))?;
                    Ok((z, None))
                }
            },
            "quotient" => {
                let (n, _) = self.function(self.field(v, path, "numer")?, &format!("{path}.numer"))?;
                let (d, _) = self.function(self.field(v, path, "denom")?, &format!("{path}.denom"))?;
                Ok((MeromorphicOracle::quotient(&n, &d).map_err(|e| self.core(path, e))?, None))
            }
            "shift" => {
                let (base, _) = self.function(self.field(v, path, "base")?, &format!("{path}.base"))?;
                let s0 = self.complex(self.field(v, path, "s0")?, &format!("{path}.s0"))?;
                Ok((MeromorphicOracle::shift(&base, s0).map_err(|e| self.core(path, e))?, None))
            }
            other => Err(self.err(
                &tpath,
                format!("unknown type `{other}` (expected exp_sum, geometric, zeta, quotient or shift)"),
            )),
        }
    }

    fn exp_sum(&self, v: &Value, path: &str) -> Result<ExponentialSum> {
        let convention = match v.get("convention") {
            None => SignConvention::Dirichlet,
            Some(c) => match c.as_str() {
                Some("dirichlet") => SignConvention::Dirichlet,
                Some("exponential") => SignConvention::Exponential,
                _ => {
                    return Err(self.err(
                        &format!("{path}.convention"),
                        "expected \"dirichlet\" or \"exponential\"",
                    ))
                }
            },
        };
        let tpath = format!("{path}.terms");
        let terms = self
            .field(v, path, "terms")?
            .as_array()
            .ok_or_else(|| self.err(&tpath, "expected an array"))?;
        let mut out = Vec::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            let p = format!("{tpath}[{i}]");
            let lambda = self.number(self.field(t, &p, "lambda")?, &format!("{p}.lambda"))?;
            let a = self.complex(self.field(t, &p, "a")?, &format!("{p}.a"))?;
            out.push(Term::new(lambda, a));
        }
        ExponentialSum::new(out, convention).map_err(|e| {
            let at = match e {
                valdist_core::Error::NonIncreasingExponents { index } | valdist_core::Error::NonFiniteTerm { index } => {
                    format!("{tpath}[{index}]")
                }
                _ => tpath.clone(),
            };
            self.core(&at, e)
        })
    }
}

/// Parses a config document; `file` names it in error messages.
pub fn parse(text: &str, file: &str) -> Result<FunctionConfig> {
    let ctx = Ctx { file };
    let source: Value = serde_json::from_str(text).map_err(|e| ctx.err("$", format!("invalid JSON: {e}")))?;
    let (oracle, sum) = ctx.function(&source, "$")?;
    Ok(FunctionConfig { oracle, sum, source })
}

pub fn load(path: &Path) -> Result<FunctionConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message(text: &str) -> String {
        parse(text, "f.json").unwrap_err().to_string()
    }

    #[test]
    fn accepts_every_type() {
        let sum = r#"{"type":"exp_sum","convention":"dirichlet","terms":[{"lambda":0.0,"a":[1.0,0.0]},{"lambda":0.6931471805599453,"a":[1.0,0.0]}]}"#;
        let f = parse(sum, "f").unwrap();
        assert!(f.sum.is_some());
        let v = f.oracle.eval(Complex64::new(0.0, 0.0)).unwrap().value;
        assert!((v.re - 2.0).abs() < 1e-12);
        let q = format!(r#"{{"type":"quotient","numer":{sum},"denom":{{"type":"shift","base":{sum},"s0":[0,1]}}}}"#);
        assert!(parse(&q, "q").unwrap().sum.is_none());
        assert!(parse(r#"{"type":"zeta"}"#, "z").is_ok());
        assert!(parse(r#"{"type":"geometric"}"#, "g").is_ok());
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(message(r#"{"type":"wat"}"#).split(": ").nth(1), Some("$.type"));
        assert!(message(r#"{"type":"exp_sum","terms":[{"lambda":0,"a":1},{"lambda":"x","a":1}]}"#)
            .contains("$.terms[1].lambda"));
        assert!(message(r#"{"type":"exp_sum","terms":[{"lambda":1,"a":1},{"lambda":0,"a":1}]}"#)
            .contains("$.terms[1]"));
        assert!(message(r#"{"type":"shift","base":{"type":"zeta"}}"#).contains("$.s0: missing field"));
        assert!(message(r#"{"type":"quotient","numer":{"type":"zeta"},"denom":{}}"#).contains("$.denom.type"));
        assert!(message("{").contains("invalid JSON"));
    }
}
