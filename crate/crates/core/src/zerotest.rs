//! Deciding whether a symbolic determinant vanishes identically.
//!
//! A nonzero exact evaluation at a rational point proves the determinant is
//! not the zero function. The opposite verdict is only ever reached by full
//! symbolic expansion.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{bail, Result};
use crate::exact::{Polynomial, Rational};
use crate::jacobian::{det_rational, determinant, DetMethod, SymbolicMatrix};

/// Half-width of the integer sample box.
pub const SAMPLE_BOUND: i64 = 1 << 16;

/// Samples drawn when the caller does not choose.
pub const DEFAULT_BUDGET: u32 = 64;

/// Extra draws allowed after the symbolic route shows the determinant is
/// nonzero but sampling has not yet hit a witness.
const WITNESS_SEARCH_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroStatus {
    NonzeroWitness,
    IdenticallyZero,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Effort {
    /// Samples with a nonvanishing denominator that were evaluated.
    pub samples: u64,
    /// Draws discarded because some denominator vanished.
    pub redraws: u64,
    pub symbolic_used: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTestResult {
    pub status: ZeroStatus,
    pub witness: Option<Vec<(String, Rational)>>,
    pub witness_value: Option<Rational>,
    pub effort: Effort,
}

impl ZeroTestResult {
    pub fn is_zero(&self) -> bool {
        self.status == ZeroStatus::IdenticallyZero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroTestConfig {
    pub seed: u64,
    pub budget: u32,
    pub symbolic_fallback: bool,
}

impl Default for ZeroTestConfig {
    fn default() -> Self {
        ZeroTestConfig { seed: 0, budget: DEFAULT_BUDGET, symbolic_fallback: true }
    }
}

/// Integer sample point for draw number `index`. Each draw has its own
/// ChaCha stream, so draws are independent of evaluation order.
pub fn sample_point(seed: u64, index: u64, nvars: usize) -> Vec<Rational> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..nvars)
        .map(|_| Rational::from(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
        .collect()
}

fn try_sample(mat: &SymbolicMatrix, point: &[Rational]) -> Option<Rational> {
    let values = mat.eval_rational(point).ok()?;
    Some(det_rational(values, mat.rows()).expect("square matrix"))
}

pub fn det_zero_status(mat: &SymbolicMatrix, seed: u64, budget: u32) -> Result<ZeroTestResult> {
    det_zero_status_with(mat, ZeroTestConfig { seed, budget, symbolic_fallback: true })
}

pub fn det_zero_status_with(mat: &SymbolicMatrix, cfg: ZeroTestConfig) -> Result<ZeroTestResult> {
    if !mat.is_square() || mat.rows() == 0 {
        bail!(Structural, "zero test needs a non-empty square matrix, got {}x{}", mat.rows(), mat.cols());
    }
    if cfg.budget == 0 && !cfg.symbolic_fallback {
        bail!(Undecided, "sample budget is 0 and symbolic fallback is disabled; raise the budget");
    }
    let vars = mat.vars().expect("non-empty").clone();
    let mut effort = Effort::default();
    let max_redraws = 10 * u64::from(cfg.budget);
    let mut draw = 0u64;

    let witness = |point: Vec<Rational>, value: Rational, effort: Effort| ZeroTestResult {
        status: ZeroStatus::NonzeroWitness,
        witness: Some(vars.iter().cloned().zip(point).collect()),
        witness_value: Some(value),
        effort,
    };

    while effort.samples < u64::from(cfg.budget) && effort.redraws <= max_redraws {
        let point = sample_point(cfg.seed, draw, vars.len());
        draw += 1;
        match try_sample(mat, &point) {
            None => effort.redraws += 1,
            Some(v) => {
                effort.samples += 1;
                if !v.is_zero() {
                    return Ok(witness(point, v, effort));
                }
            }
        }
    }
    if !cfg.symbolic_fallback {
        bail!(
            Undecided,
            "no nonzero sample among {} draws and symbolic fallback is disabled; raise the budget",
            effort.samples
        );
    }
    effort.symbolic_used = true;
    let det = determinant(mat, DetMethod::Auto)?;
    if det.is_zero() {
        return Ok(ZeroTestResult { status: ZeroStatus::IdenticallyZero, witness: None, witness_value: None, effort });
    }
    // The determinant is a nonzero function; keep drawing for a witness.
    for _ in 0..WITNESS_SEARCH_LIMIT {
        let point = sample_point(cfg.seed, draw, vars.len());
        draw += 1;
        match try_sample(mat, &point) {
            None => effort.redraws += 1,
            Some(v) => {
                effort.samples += 1;
                if !v.is_zero() {
                    return Ok(witness(point, v, effort));
                }
            }
        }
    }
    bail!(Internal, "determinant is nonzero but no witness was found in {draw} draws")
}

/// Exact and definitive: the canonical term map is empty.
pub fn poly_is_zero(p: &Polynomial) -> bool {
    p.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact::{var_list, RationalFunction};
    use crate::parse::parse_expression;
    use alloc::vec;

    fn matrix(n: usize, texts: &[&str]) -> SymbolicMatrix {
        let v = var_list(&["X1", "X2"]);
        let e = texts.iter().map(|t| parse_expression(t, &v).unwrap().to_ratfn()).collect();
        SymbolicMatrix::new(n, n, e).unwrap()
    }

    #[test]
    fn symmetric_functions_have_witness() {
        let m = matrix(2, &["1", "1", "X2", "X1"]);
        let r = det_zero_status(&m, 7, 64).unwrap();
        assert_eq!(r.status, ZeroStatus::NonzeroWitness);
        let w = r.witness.unwrap();
        assert_ne!(w[0].1, w[1].1);
        assert_eq!(r.witness_value.unwrap(), &w[0].1 - &w[1].1);
        assert!(!r.effort.symbolic_used);
    }

    #[test]
    fn zero_column_is_identically_zero() {
        let m = matrix(2, &["0", "1", "0", "1+240*X2"]);
        let r = det_zero_status(&m, 0, 8).unwrap();
        assert_eq!(r.status, ZeroStatus::IdenticallyZero);
        assert!(r.witness.is_none() && r.effort.symbolic_used);
        assert_eq!(r.effort.samples, 8);
    }

    #[test]
    fn identity_has_unit_witness() {
        let m = matrix(2, &["1", "0", "0", "1"]);
        let r = det_zero_status(&m, 3, 1).unwrap();
        assert_eq!(r.witness_value.unwrap(), Rational::one());
    }

    #[test]
    fn zero_budget_without_fallback() {
        let m = matrix(1, &["X1"]);
        let cfg = ZeroTestConfig { seed: 0, budget: 0, symbolic_fallback: false };
        assert!(matches!(det_zero_status_with(&m, cfg), Err(Error::Undecided(_))));
        // with fallback the symbolic route still finds a witness
        let r = det_zero_status(&m, 0, 0).unwrap();
        assert_eq!(r.status, ZeroStatus::NonzeroWitness);
        assert!(r.effort.symbolic_used);
    }

    #[test]
    fn deterministic_given_seed() {
        let m = matrix(2, &["X1^2", "X2", "1", "X1*X2"]);
        assert_eq!(det_zero_status(&m, 42, 16).unwrap(), det_zero_status(&m, 42, 16).unwrap());
        assert_ne!(sample_point(1, 0, 2), sample_point(2, 0, 2));
        assert_ne!(sample_point(1, 0, 2), sample_point(1, 1, 2));
        for x in sample_point(9, 5, 50) {
            assert!(x.abs() <= SAMPLE_BOUND);
        }
    }

    #[test]
    fn rational_entries_resample_on_pole() {
        let v = var_list(&["X1"]);
        let e = vec![RationalFunction::new(
            Polynomial::one(v.clone()),
            Polynomial::var_index(v.clone(), 0),
        )
        .unwrap()];
        let m = SymbolicMatrix::new(1, 1, e).unwrap();
        let r = det_zero_status(&m, 0, 4).unwrap();
        assert_eq!(r.status, ZeroStatus::NonzeroWitness);
    }

    #[test]
    fn poly_zero_examples() {
        let v = var_list(&["X1", "X2"]);
        let p = crate::parse::parse_polynomial("(X1+X2)*(X1-X2) - X1^2 + X2^2", &v).unwrap();
        assert!(poly_is_zero(&p));
        assert!(!poly_is_zero(&crate::parse::parse_polynomial("X1 - X2", &v).unwrap()));
    }
}
