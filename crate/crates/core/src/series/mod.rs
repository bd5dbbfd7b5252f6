//! Certified evaluation of the constants and series the criteria are applied
//! to. Every result is an [`Enclosure`] whose radius covers truncation and
//! rounding error.
//!
//! Parameters are rational. Results target a radius of at most
//! `2^-bits * max(1, |mid|)`; working precision is raised automatically
//! when rounding error would exceed that.

mod elementary;
mod elliptic;
mod fib;
mod qseries;

pub use elementary::{elementary, exp, exp_enclosure, exp_residue, ln, ln_enclosure, pi, sqrt, Elementary};
pub use elliptic::{
    agm, elliptic_e, elliptic_k, modulus_constant, modulus_ratio, solve_modulus, two_e_over_pi, two_k_over_pi,
};
pub use fib::{exp_fib_series, fib_lucas, zeta_fib, ExpFibKind, FibCache};
pub use qseries::{bernoulli, q_series, ramanujan, theta, zeta_neg_odd, Family, Ramanujan};

use crate::error::{bail, Error, Result};
use crate::exact::{Enclosure, Rational};

/// Extra working bits on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

/// Working precision is raised at most this many times before giving up.
const MAX_RETRIES: u32 = 5;

/// Target precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 8;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            bail!(Validation, "precision must be at least {} bits, got {bits}", Self::MIN_BITS);
        }
        Ok(Precision { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// `2^-bits * max(1, |x|)`.
    pub fn ulp(self, x: &Rational) -> Rational {
        let scale = x.abs().max(Rational::one());
        scale * Rational::pow2(-(self.bits as i64))
    }

    /// True when the enclosure is as tight as this precision asks for.
    pub fn is_met_by(self, e: &Enclosure) -> bool {
        *e.rad() <= self.ulp(e.mid())
    }

    /// Truncation error allowed for a sum of magnitude about `scale`.
    pub(crate) fn tail_target(self, scale: &Rational) -> Rational {
        let s = scale.abs().max(Rational::one());
        s * Rational::pow2(-(self.bits as i64) - 2)
    }

    pub(crate) fn raised(self, extra: u32) -> Precision {
        Precision { bits: self.bits.saturating_add(extra) }
    }
}

impl TryFrom<u32> for Precision {
    type Error = Error;

    fn try_from(bits: u32) -> Result<Self> {
        Precision::new(bits)
    }
}

/// Run `f` at increasing working precision until the result meets `prec`,
/// then round the midpoint to a compact form.
pub(crate) fn certified<F>(prec: Precision, extra_guard: u32, mut f: F) -> Result<Enclosure>
where
    F: FnMut(u32) -> Result<Enclosure>,
{
    let mut wp = prec.bits + GUARD_BITS + extra_guard;
    for _ in 0..=MAX_RETRIES {
        let e = f(wp)?.round(prec.bits + 16);
        if prec.is_met_by(&e) {
            return Ok(e);
        }
        wp = wp.saturating_mul(2);
    }
    bail!(Precision, "could not reach {} bits within working precision {wp}", prec.bits)
}

/// Apply a monotone function to an interval argument by evaluating it at
/// both endpoints.
pub(crate) fn monotone_lift<F>(x: &Enclosure, increasing: bool, mut f: F) -> Result<Enclosure>
where
    F: FnMut(&Rational) -> Result<Enclosure>,
{
    if x.is_exact() {
        return f(x.mid());
    }
    let a = f(&x.lo())?;
    let b = f(&x.hi())?;
    Ok(if increasing {
        Enclosure::from_endpoints(a.lo(), b.hi())
    } else {
        Enclosure::from_endpoints(b.lo(), a.hi())
    })
}

/// Extra working bits for an exponential-type sum with argument of size
/// `w`: terms reach about `e^w` before decaying.
pub(crate) fn growth_bits(w: &Rational) -> u32 {
    use num_traits::ToPrimitive;
    let est = (w.abs() * crate::exact::rat(3, 2)).ceil();
    est.to_u32().unwrap_or(u32::MAX / 2).saturating_add(8)
}

/// Bound on `sum_{n > N} C * w^n / n!` given the last term
/// `C * w^N / N!`, valid once `N + 2 > w`.
pub(crate) fn exp_tail(last_term: &Rational, w: &Rational, n: u64) -> Option<Rational> {
    let next = Rational::from(n + 1);
    let after = Rational::from(n + 2);
    let q = w / &after;
    if q >= Rational::one() {
        return None;
    }
    let first = last_term * &(w / &next);
    Some(first / (Rational::one() - q))
}
