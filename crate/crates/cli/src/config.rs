//! Parsing of numeric arguments, table parameters and tolerance overrides.

use hyperbilliards::exact::ring::{parse_rational, to_f64, Rational};
use hyperbilliards::minkowski::{Caustic, ConfocalFamily, TableKind};
use hyperbilliards::Error;
use serde::Serialize;
use std::fmt;

/// Failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError {
            code: 3,
            msg: msg.into(),
        }
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        CliError {
            code: 4,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidFamily(_)
            | Error::Parse(_)
            | Error::InvalidRange(_)
            | Error::NuOutOfRange(_)
            | Error::NuOutOfAllRanges(_)
            | Error::UnsupportedPeriod(_)
            | Error::NotCollared
            | Error::NotBracketed(_)
            | Error::ModulusOutOfRange(_)
            | Error::NomeOutOfRange(_)
            | Error::AlphaOutOfRange(_)
            | Error::ParameterOutOfRange(_)
            | Error::NotTangent(_)
            | Error::NotOnHyperboloid(_)
            | Error::ZeroDirection
            | Error::DegenerateLevel(_) => 2,
            Error::MismatchBeyondScalar(_) | Error::NotPeriodic(_) => 4,
            _ => 3,
        };
        CliError {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(format!("i/o: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A number given on the command line: "p/q" and integers stay exact,
/// decimals are floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Rational),
    Float(f64),
}

impl Num {
    pub fn parse(s: &str) -> CliResult<Num> {
        let t = s.trim();
        let exact_form = t.contains('/') || t.parse::<i64>().is_ok();
        if exact_form {
            return parse_rational(t)
                .map(Num::Exact)
                .ok_or_else(|| CliError::config(format!("cannot parse rational '{s}'")));
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Num::Float(v)),
            _ => Err(CliError::config(format!("cannot parse number '{s}'"))),
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Num::Exact(r) => to_f64(r),
            Num::Float(v) => *v,
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(r) => write!(f, "{r}"),
            Num::Float(v) => write!(f, "{v}"),
        }
    }
}

/// `ν`, which may be the light-like value at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum NuValue {
    Num(Num),
    Infinity,
}

impl NuValue {
    pub fn parse(s: &str) -> CliResult<NuValue> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(NuValue::Infinity),
            _ => Num::parse(s).map(NuValue::Num),
        }
    }

    pub fn caustic(&self) -> Caustic {
        match self {
            NuValue::Num(n) => Caustic::Finite(n.value()),
            NuValue::Infinity => Caustic::Infinity,
        }
    }

    pub fn finite(&self) -> CliResult<&Num> {
        match self {
            NuValue::Num(n) => Ok(n),
            NuValue::Infinity => Err(CliError::config("ν = infinity is not allowed here")),
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Num(n) => n.fmt(f),
            NuValue::Infinity => f.write_str("infinity"),
        }
    }
}

pub fn parse_kind(s: &str) -> CliResult<TableKind> {
    match s {
        "collared" => Ok(TableKind::Collared),
        "transverse" => Ok(TableKind::Transverse),
        _ => Err(CliError::config(format!(
            "unknown table '{s}' (collared|transverse)"
        ))),
    }
}

/// Table parameters, with per-kind defaults when none are given.
pub fn build_family(
    table: Option<&str>,
    a: Option<&str>,
    b: Option<&str>,
    c: Option<&str>,
) -> CliResult<ConfocalFamily> {
    let kind = table.map(parse_kind).transpose()?;
    let (a, b, c) = match (a, b, c, kind) {
        (Some(a), Some(b), Some(c), _) => (a, b, c),
        (None, None, None, Some(TableKind::Collared)) => ("1", "2", "3"),
        (None, None, None, Some(TableKind::Transverse)) => ("1", "-2", "3"),
        _ => {
            return Err(CliError::config(
                "give all of --a, --b, --c, or only --table",
            ))
        }
    };
    let fam = match (Num::parse(a)?, Num::parse(b)?, Num::parse(c)?) {
        (Num::Exact(a), Num::Exact(b), Num::Exact(c)) => ConfocalFamily::from_rationals(a, b, c)?,
        (a, b, c) => ConfocalFamily::new(a.value(), b.value(), c.value())?,
    };
    if let Some(k) = kind {
        if k != fam.kind() {
            return Err(CliError::config(format!(
                "--table {} does not match parameters ({}, {}, {})",
                table.unwrap_or_default(),
                fam.a,
                fam.b,
                fam.c
            )));
        }
    }
    Ok(fam)
}

/// Numerical tolerances, each overridable with `--tolerance key=value`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Cartesian closure gap.
    pub closure: f64,
    /// Jacobi-coordinate closure gap.
    pub jacobi: f64,
    /// `|ρ n − n₁|`.
    pub rho: f64,
    /// Relative Pell residual for floating `ν`.
    pub pell: f64,
    /// `|det|` regarded as zero for floating `ν`.
    pub det: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            closure: 1e-6,
            jacobi: 1e-8,
            rho: 1e-6,
            pell: 1e-8,
            det: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn from_overrides(items: &[String]) -> CliResult<Self> {
        let mut t = Tolerances::default();
        for item in items.iter().flat_map(|s| s.split(',')) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("tolerance '{item}' is not key=value")))?;
            let v: f64 = v
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite() && *v > 0.0)
                .ok_or_else(|| {
                    CliError::config(format!("tolerance '{item}' needs a positive number"))
                })?;
            let slot = match k.trim() {
                "closure" => &mut t.closure,
                "jacobi" => &mut t.jacobi,
                "rho" => &mut t.rho,
                "pell" => &mut t.pell,
                "det" => &mut t.det,
                other => return Err(CliError::config(format!("unknown tolerance '{other}'"))),
            };
            *slot = v;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert!(matches!(Num::parse("6/7").unwrap(), Num::Exact(_)));
        assert!(matches!(Num::parse("-6").unwrap(), Num::Exact(_)));
        assert!(matches!(Num::parse("4.75").unwrap(), Num::Float(_)));
        assert!(Num::parse("x").is_err());
        assert_eq!(NuValue::parse("inf").unwrap(), NuValue::Infinity);
    }

    #[test]
    fn families() {
        let f = build_family(Some("transverse"), None, None, None).unwrap();
        assert_eq!(f.kind(), TableKind::Transverse);
        assert!(f.exact().is_some());
        assert_eq!(
            build_family(Some("collared"), Some("1"), Some("-2"), Some("3"))
                .unwrap_err()
                .code,
            2
        );
    }

    #[test]
    fn tolerance_overrides() {
        let t = Tolerances::from_overrides(&["closure=1e-4,rho=1e-3".into()]).unwrap();
        assert_eq!((t.closure, t.rho, t.jacobi), (1e-4, 1e-3, 1e-8));
        assert_eq!(
            Tolerances::from_overrides(&["foo=1".into()])
                .unwrap_err()
                .code,
            2
        );
    }
}
