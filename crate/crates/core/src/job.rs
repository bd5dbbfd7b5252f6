//! Problem instances for the criterion engine.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use crate::error::{bail, Error, Result};
use crate::exact::{var_list, Enclosure, PointAssignment, VarList, DEFAULT_PRECISION};
use crate::parse::{format_job, parse_expression, Expr};

/// Which shape of equation system a job describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// `f_j(x, y) = 0`, n equations in n + n unknowns.
    Implicit,
    /// `y_j = T_j(x)` with polynomial `T_j`.
    PolynomialMap,
    /// `y_j = R_j(x)` with rational `R_j`.
    RationalMap,
    /// `f_j(x, y) = 0` for `j <= m < n`.
    Partial,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Implicit => "implicit",
            Mode::PolynomialMap => "polynomial_map",
            Mode::RationalMap => "rational_map",
            Mode::Partial => "partial",
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        Ok(match s {
            "implicit" => Mode::Implicit,
            "polynomial_map" => Mode::PolynomialMap,
            "rational_map" => Mode::RationalMap,
            "partial" => Mode::Partial,
            other => bail!(Validation, "field 'mode': unknown mode '{other}'"),
        })
    }

    fn needs_point(self) -> bool {
        matches!(self, Mode::Implicit | Mode::Partial)
    }
}

/// A hypothesis the criterion relies on but never checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssumptionRecord {
    pub text: String,
    pub source: String,
}

impl AssumptionRecord {
    pub fn new(text: impl Into<String>, source: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.trim().is_empty() {
            bail!(Validation, "field 'assumptions': assumption text must be non-empty");
        }
        Ok(AssumptionRecord { text, source: source.into() })
    }
}

/// A validated problem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub mode: Mode,
    pub x_vars: Vec<String>,
    pub y_vars: Vec<String>,
    /// Number of equations in partial mode.
    pub m: Option<usize>,
    pub equations: Vec<Expr>,
    pub point: Option<PointAssignment>,
    pub assumptions: Vec<AssumptionRecord>,
    pub seed: Option<u64>,
    pub precision_bits: u32,
}

/// Unvalidated job contents, with equations still as text.
#[derive(Clone, Debug, Default)]
pub struct JobParts {
    pub mode: Option<Mode>,
    pub x_vars: Vec<String>,
    pub y_vars: Vec<String>,
    pub m: Option<usize>,
    pub equations: Vec<String>,
    pub point: Option<Vec<(String, Enclosure)>>,
    pub assumptions: Vec<AssumptionRecord>,
    pub seed: Option<u64>,
    pub precision_bits: Option<u32>,
}

impl JobSpec {
    pub fn n(&self) -> usize {
        self.x_vars.len()
    }

    /// Variable list the equations are expressed over.
    pub fn equation_vars(&self) -> VarList {
        equation_vars(self.mode, &self.x_vars, &self.y_vars)
    }

    /// Parse the equation texts and enforce every shape invariant.
    pub fn from_parts(parts: JobParts) -> Result<JobSpec> {
        let mode = parts.mode.ok_or_else(|| Error::Validation("field 'mode': missing".into()))?;
        let JobParts { x_vars, y_vars, m, equations, point, assumptions, seed, precision_bits, .. } = parts;
        let n = x_vars.len();
        if n == 0 {
            bail!(Validation, "field 'x_vars': at least one variable required");
        }
        check_names(&x_vars, &y_vars)?;
        let precision_bits = precision_bits.unwrap_or(DEFAULT_PRECISION);
        if precision_bits < 8 {
            bail!(Validation, "field 'precision_bits': must be at least 8");
        }
        match mode {
            Mode::Implicit => {
                if y_vars.len() != n {
                    bail!(Validation, "field 'y_vars': implicit mode needs {n} y variables, got {}", y_vars.len());
                }
                if equations.len() != n {
                    bail!(Validation, "field 'equations': implicit mode needs {n} equations, got {}", equations.len());
                }
                if m.is_some() {
                    bail!(Validation, "field 'm': only allowed in partial mode");
                }
            }
            Mode::Partial => {
                let Some(mv) = m else {
                    bail!(Validation, "field 'm': required in partial mode");
                };
                if mv == 0 || mv >= n {
                    bail!(Validation, "field 'm': need 1 <= m < n, got m = {mv}, n = {n}");
                }
                if y_vars.len() != mv {
                    bail!(Validation, "field 'y_vars': partial mode needs m = {mv} y variables, got {}", y_vars.len());
                }
                if equations.len() != mv {
                    bail!(Validation, "field 'equations': partial mode needs m = {mv} equations, got {}", equations.len());
                }
            }
            Mode::PolynomialMap | Mode::RationalMap => {
                if !y_vars.is_empty() && y_vars.len() != n {
                    bail!(Validation, "field 'y_vars': map mode needs 0 or {n} y variables, got {}", y_vars.len());
                }
                if equations.len() != n {
                    bail!(Validation, "field 'equations': map mode needs {n} right-hand sides, got {}", equations.len());
                }
                if m.is_some() {
                    bail!(Validation, "field 'm': only allowed in partial mode");
                }
            }
        }
        let vars = equation_vars(mode, &x_vars, &y_vars);
        let mut parsed = Vec::with_capacity(equations.len());
        for (j, text) in equations.iter().enumerate() {
            let e = parse_expression(text, &vars).map_err(|e| match e {
                Error::Parse { line, column, token, message } => Error::Parse {
                    line,
                    column,
                    token,
                    message: format!("equations[{j}]: {message}"),
                },
                other => other,
            })?;
            if matches!(e, Expr::Rational(_)) && mode != Mode::RationalMap {
                bail!(
                    Validation,
                    "field 'equations[{j}]': '/' by a non-constant is only allowed in rational_map mode"
                );
            }
            parsed.push(e);
        }
        let point = match point {
            None if mode.needs_point() => bail!(Validation, "point required in {} mode", mode.as_str()),
            None => None,
            Some(bindings) => {
                let mut p = PointAssignment::new();
                for (name, enc) in bindings {
                    if !x_vars.contains(&name) && !y_vars.contains(&name) {
                        bail!(Validation, "field 'point': '{name}' is not a declared variable");
                    }
                    p.bind(name, enc).map_err(|e| Error::Validation(format!("field 'point': {e}")))?;
                }
                if mode.needs_point() {
                    for v in x_vars.iter().chain(&y_vars) {
                        if p.get(v).is_none() {
                            bail!(Validation, "field 'point': variable '{v}' is not bound");
                        }
                    }
                }
                Some(p)
            }
        };
        Ok(JobSpec { mode, x_vars, y_vars, m, equations: parsed, point, assumptions, seed, precision_bits })
    }

    /// Lowercase hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(format_job(self).as_bytes());
        let mut s = String::with_capacity(64);
        for b in hash.iter() {
            use core::fmt::Write;
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

fn equation_vars(mode: Mode, x_vars: &[String], y_vars: &[String]) -> VarList {
    match mode {
        Mode::Implicit | Mode::Partial => {
            let all: Vec<&String> = x_vars.iter().chain(y_vars).collect();
            var_list(&all)
        }
        Mode::PolynomialMap | Mode::RationalMap => var_list(x_vars),
    }
}

fn check_names(x_vars: &[String], y_vars: &[String]) -> Result<()> {
    let mut seen: Vec<&str> = Vec::new();
    for (field, list) in [("x_vars", x_vars), ("y_vars", y_vars)] {
        for v in list {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                bail!(Validation, "field '{field}': '{v}' is not a valid variable name");
            }
            if seen.contains(&v.as_str()) {
                bail!(Validation, "field '{field}': variable '{v}' declared twice");
            }
            seen.push(v);
        }
    }
    Ok(())
}
