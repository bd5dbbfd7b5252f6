use crate::error::{bail, Result};
use crate::exact::{rat, Enclosure, Rational};

use super::elementary::{ln_wp, pi_wp};
use super::{certified, monotone_lift, Precision};

/// Working precision ceiling for the modulus solver, as a multiple of the
/// requested precision.
const SOLVER_PREC_FACTOR: u32 = 16;

fn check_agm_args(a: &Enclosure, b: &Enclosure) -> Result<()> {
    if !b.lo().is_positive() || !a.lo().is_positive() {
        bail!(Domain, "AGM needs positive arguments");
    }
    Ok(())
}

/// Runs the AGM iteration from `(a, b)` and returns the bracket
/// `[b_n, a_n]` together with `sum_{n >= 0} 2^(n-1) c_n^2` when `c0` is given.
fn agm_run(a: Enclosure, b: Enclosure, c0: Option<&Rational>, wp: u32) -> Result<(Enclosure, Enclosure)> {
    check_agm_args(&a, &b)?;
    // rounding keeps the radii near 2^-wp, so stop a few bits above that
    let eps = Rational::pow2(-(wp as i64) + 8);
    let floor = b.lo().min(a.lo());
    let (mut a, mut b) = (a, b);
    let mut c = c0.map(|c| Enclosure::exact(c.clone()));
    let mut sum = match &c {
        Some(c) => c.square().scale(&rat(1, 2)),
        None => Enclosure::zero(),
    };
    let mut weight = Rational::one();
    loop {
        let a1 = (&a + &b).scale(&rat(1, 2)).round(wp);
        let b1 = (&a * &b).round(wp).sqrt(wp)?;
        if let Some(cn) = &c {
            // c_(n+1) = c_n^2 / (4 a_(n+1))
            let next = cn.square().div(&a1.scale(&Rational::from(4)))?.round(wp);
            sum = (&sum + &next.square().scale(&weight)).round(wp);
            weight = weight * Rational::from(2);
            c = Some(next);
        }
        a = a1;
        b = b1;
        let bracket = a.hi() - b.lo();
        if bracket > eps {
            continue;
        }
        let Some(cn) = &c else {
            return Ok((Enclosure::from_endpoints(b.lo(), a.hi()), sum));
        };
        // later terms shrink by at most rho = 2 (c_n / (4 k'))^2 each
        let ratio = cn.mag() / (&floor * &Rational::from(4));
        let rho = (&ratio * &ratio * Rational::from(2)).round_up_dyadic(64);
        if rho <= rat(1, 2) {
            let last = cn.mag() * cn.mag() * &weight / Rational::from(2);
            let tail = &last * &rho / (Rational::one() - &rho);
            if tail <= eps {
                return Ok((Enclosure::from_endpoints(b.lo(), a.hi()), sum.widen(&tail)));
            }
        }
    }
}

/// Arithmetic-geometric mean of two positive rationals.
pub fn agm(a: &Rational, b: &Rational, prec: Precision) -> Result<Enclosure> {
    if !a.is_positive() || !b.is_positive() {
        bail!(Domain, "AGM needs positive arguments, got ({a}, {b})");
    }
    certified(prec, 0, |wp| Ok(agm_run(Enclosure::exact(a.clone()), Enclosure::exact(b.clone()), None, wp)?.0))
}

fn complement(k: &Rational, wp: u32) -> Result<Enclosure> {
    Enclosure::exact(Rational::one() - k * k).sqrt(wp)
}

fn check_modulus(k: &Rational, allow_one: bool) -> Result<()> {
    if k.is_negative() || *k > Rational::one() || (!allow_one && k.is_one()) {
        if k.is_one() {
            bail!(Domain, "K(k) diverges at k = 1");
        }
        bail!(Domain, "modulus must lie in [0, 1), got k = {k}");
    }
    Ok(())
}

/// `2 K(k) / pi = 1 / AGM(1, k')`.
fn k_over_pi_wp(k: &Rational, wp: u32) -> Result<Enclosure> {
    let kp = complement(k, wp)?;
    let m = agm_run(Enclosure::one(), kp, None, wp)?.0;
    Ok(m.recip()?.round(wp))
}

/// `E(k) / K(k)`.
fn e_over_k_wp(k: &Rational, wp: u32) -> Result<Enclosure> {
    let kp = complement(k, wp)?;
    let (_, s) = agm_run(Enclosure::one(), kp, Some(k), wp)?;
    Ok((Enclosure::one() - s).round(wp))
}

/// Complete elliptic integral of the first kind, `pi / (2 AGM(1, sqrt(1 - k^2)))`.
pub fn elliptic_k(k: &Rational, prec: Precision) -> Result<Enclosure> {
    check_modulus(k, false)?;
    certified(prec, 8, |wp| Ok((&k_over_pi_wp(k, wp)? * &pi_wp(wp)).scale(&rat(1, 2)).round(wp)))
}

/// Complete elliptic integral of the second kind, `K(k) (1 - sum 2^(n-1) c_n^2)`.
pub fn elliptic_e(k: &Rational, prec: Precision) -> Result<Enclosure> {
    check_modulus(k, true)?;
    if k.is_one() {
        return Ok(Enclosure::one());
    }
    certified(prec, 8, |wp| {
        let kk = (&k_over_pi_wp(k, wp)? * &pi_wp(wp)).scale(&rat(1, 2));
        Ok((&kk * &e_over_k_wp(k, wp)?).round(wp))
    })
}

/// `2 K(k) / pi` over an interval of moduli (increasing in `k`).
pub fn two_k_over_pi(k: &Enclosure, prec: Precision) -> Result<Enclosure> {
    monotone_lift(k, true, |v| {
        check_modulus(v, false)?;
        certified(prec, 8, |wp| k_over_pi_wp(v, wp))
    })
}

/// `2 E(k) / pi` over an interval of moduli (decreasing in `k`).
pub fn two_e_over_pi(k: &Enclosure, prec: Precision) -> Result<Enclosure> {
    monotone_lift(k, false, |v| {
        check_modulus(v, true)?;
        if v.is_one() {
            return Ok(pi_wp(prec.bits() + 32).recip()?.scale(&Rational::from(2)).round(prec.bits() + 16));
        }
        certified(prec, 8, |wp| Ok((&k_over_pi_wp(v, wp)? * &e_over_k_wp(v, wp)?).round(wp)))
    })
}

/// `-(2/pi) ln((sqrt 5 - 1)/2)`, that is `(2/pi) ln(phi)`.
fn modulus_constant_wp(wp: u32) -> Result<Enclosure> {
    let s5 = Enclosure::exact(Rational::from(5)).sqrt(wp + 8)?;
    let phi = s5.add_rational(&Rational::one()).scale(&rat(1, 2));
    let ln_phi = monotone_lift(&phi, true, |v| ln_wp(v, wp + 8))?;
    Ok(ln_phi.scale(&Rational::from(2)).div(&pi_wp(wp + 8))?.round(wp))
}

pub fn modulus_constant(prec: Precision) -> Result<Enclosure> {
    certified(prec, 0, modulus_constant_wp)
}

/// `K(k') / K(k) = AGM(1, k') / AGM(1, k)` for `0 < k < 1`; strictly
/// decreasing in `k`.
fn ratio_wp(k: &Rational, wp: u32) -> Result<Enclosure> {
    let kp = complement(k, wp)?;
    let top = agm_run(Enclosure::one(), kp, None, wp)?.0;
    let bottom = agm_run(Enclosure::one(), Enclosure::exact(k.clone()), None, wp)?.0;
    Ok(top.div(&bottom)?.round(wp))
}

pub fn modulus_ratio(k: &Rational, prec: Precision) -> Result<Enclosure> {
    if !k.is_positive() || *k >= Rational::one() {
        bail!(Domain, "modulus ratio needs 0 < k < 1, got k = {k}");
    }
    certified(prec, 8, |wp| ratio_wp(k, wp))
}

/// Enclosure of the modulus `k` in `(0, 1)` with `K(k')/K(k)` equal to
/// `(2/pi) ln(phi)`, found by certified bisection.
pub fn solve_modulus(prec: Precision) -> Result<Enclosure> {
    let ceiling = prec.bits().saturating_mul(SOLVER_PREC_FACTOR).max(1024);
    let mut wp = prec.bits() + 48;
    let mut c = modulus_constant_wp(wp)?;
    // +1: k lies above; -1: below
    let side = |k: &Rational, wp: &mut u32, c: &mut Enclosure| -> Result<i32> {
        loop {
            let r = ratio_wp(k, *wp)?;
            if r.certainly_gt(c) {
                return Ok(1);
            }
            if r.certainly_lt(c) {
                return Ok(-1);
            }
            *wp = wp.saturating_mul(2);
            if *wp > ceiling {
                bail!(Precision, "modulus comparison at k = {k} still ambiguous at {ceiling} bits");
            }
            *c = modulus_constant_wp(*wp)?;
        }
    };
    let mut lo = rat(1, 2);
    let mut hi = Rational::one() - Rational::pow2(-40);
    if side(&lo, &mut wp, &mut c)? != 1 || side(&hi, &mut wp, &mut c)? != -1 {
        bail!(Precision, "could not bracket the modulus in [{lo}, {hi}]");
    }
    let target = Rational::pow2(-(prec.bits() as i64) - 4);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / Rational::from(2);
        if side(&mid, &mut wp, &mut c)? == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Enclosure::from_endpoints(lo, hi))
}
