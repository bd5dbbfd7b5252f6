use crate::error::{bail, Error, Result};
use crate::exact::{Enclosure, Rational};

use super::{certified, exp_tail, growth_bits, monotone_lift, Precision};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    Pi,
    Ln,
    Sqrt,
    Exp,
}

impl Elementary {
    pub fn parse(s: &str) -> Result<Elementary> {
        Ok(match s {
            "pi" => Elementary::Pi,
            "ln" | "log" => Elementary::Ln,
            "sqrt" => Elementary::Sqrt,
            "exp" => Elementary::Exp,
            other => bail!(Validation, "unknown elementary function '{other}'"),
        })
    }
}

pub fn elementary(kind: Elementary, arg: Option<&Rational>, prec: Precision) -> Result<Enclosure> {
    let need = || arg.ok_or_else(|| Error::Validation("argument required".into()));
    match kind {
        Elementary::Pi => {
            if arg.is_some() {
                bail!(Validation, "pi takes no argument");
            }
            pi(prec)
        }
        Elementary::Ln => ln(need()?, prec),
        Elementary::Sqrt => sqrt(need()?, prec),
        Elementary::Exp => exp(need()?, prec),
    }
}

/// `sum (-1)^i / ((2i+1) k^(2i+1))`; the alternating tail is bounded by the
/// first omitted term.
fn atan_inv(k: u32, wp: u32) -> Enclosure {
    let k2 = Rational::from(k * k);
    let mut pow = Rational::from(k).recip().expect("k > 0");
    let eps = Rational::pow2(-(wp as i64) - 4);
    let mut acc = Enclosure::zero();
    let mut i = 0u64;
    loop {
        let term = &pow / &Rational::from(2 * i + 1);
        if term <= eps {
            return acc.widen(&term);
        }
        acc = if i.is_multiple_of(2) { acc.add_rational(&term) } else { acc.add_rational(&-term) }.round(wp);
        pow = &pow / &k2;
        i += 1;
    }
}

pub(crate) fn pi_wp(wp: u32) -> Enclosure {
    let a = atan_inv(5, wp + 8).scale(&Rational::from(16));
    let b = atan_inv(239, wp + 8).scale(&Rational::from(4));
    (a - b).round(wp)
}

pub fn pi(prec: Precision) -> Result<Enclosure> {
    certified(prec, 0, |wp| Ok(pi_wp(wp)))
}

/// `2 atanh(u) = ln((1+u)/(1-u))` for `0 <= u <= 1/3`.
fn two_atanh(u: &Rational, wp: u32) -> Enclosure {
    if u.is_zero() {
        return Enclosure::zero();
    }
    let u2 = Enclosure::exact(u * u).round(wp);
    let damp = Rational::one() - u2.hi();
    let eps = Rational::pow2(-(wp as i64) - 4);
    let mut pow = Enclosure::exact(u.clone()).round(wp);
    let mut acc = Enclosure::zero();
    let mut i = 0u64;
    loop {
        let term = pow.scale(&Rational::from(2 * i + 1).recip().expect("odd"));
        acc = (&acc + &term).round(wp);
        pow = (&pow * &u2).round(wp);
        let tail = pow.mag() / &damp;
        if tail <= eps {
            return acc.widen(&tail).scale(&Rational::from(2));
        }
        i += 1;
    }
}

pub(crate) fn ln2_wp(wp: u32) -> Enclosure {
    two_atanh(&crate::exact::rat(1, 3), wp)
}

pub(crate) fn ln_wp(x: &Rational, wp: u32) -> Result<Enclosure> {
    if !x.is_positive() {
        bail!(Domain, "ln of a non-positive number {x}");
    }
    if x.is_one() {
        return Ok(Enclosure::zero());
    }
    let e = x.floor_log2();
    let m = x * &Rational::pow2(-e);
    let u = (&m - &Rational::one()) / (&m + &Rational::one());
    let mut r = two_atanh(&u, wp);
    if e != 0 {
        let extra = 64 - (e.unsigned_abs()).leading_zeros();
        r = (&r + &ln2_wp(wp + extra).scale(&Rational::from(e))).round(wp);
    }
    Ok(r)
}

pub fn ln(x: &Rational, prec: Precision) -> Result<Enclosure> {
    if x.is_one() {
        return Ok(Enclosure::zero());
    }
    certified(prec, 0, |wp| ln_wp(x, wp))
}

pub fn ln_enclosure(x: &Enclosure, prec: Precision) -> Result<Enclosure> {
    if !x.lo().is_positive() {
        bail!(Domain, "ln of an enclosure reaching down to {}", x.lo());
    }
    monotone_lift(x, true, |v| ln(v, prec))
}

pub(crate) fn exp_wp(x: &Rational, wp: u32) -> Result<Enclosure> {
    if x.is_zero() {
        return Ok(Enclosure::one());
    }
    if x.is_negative() {
        return exp_wp(&-x.clone(), wp + 4)?.recip().map(|e| e.round(wp));
    }
    // halve until y <= 1/2, then square back up
    let k = (x.floor_log2() + 2).max(0) as u32;
    let y = x * &Rational::pow2(-(k as i64));
    let wp2 = wp + k + 8;
    let eps = Rational::pow2(-(wp2 as i64) - 4);
    let mut term = Enclosure::one();
    let mut acc = Enclosure::one();
    let mut n = 0u64;
    loop {
        n += 1;
        term = term.scale(&(&y / &Rational::from(n))).round(wp2);
        acc = (&acc + &term).round(wp2);
        if let Some(t) = exp_tail(&term.mag(), &y, n) {
            if t <= eps {
                acc = acc.widen(&t);
                break;
            }
        }
    }
    for _ in 0..k {
        acc = acc.square().round(wp2);
    }
    Ok(acc.round(wp))
}

pub fn exp(x: &Rational, prec: Precision) -> Result<Enclosure> {
    certified(prec, 0, |wp| exp_wp(x, wp))
}

pub fn exp_enclosure(x: &Enclosure, prec: Precision) -> Result<Enclosure> {
    monotone_lift(x, true, |v| exp(v, prec))
}

pub fn sqrt(x: &Rational, prec: Precision) -> Result<Enclosure> {
    if x.is_negative() {
        bail!(Domain, "square root of a negative number {x}");
    }
    certified(prec, 0, |wp| Enclosure::exact(x.clone()).sqrt(wp))
}

/// `sum_{n = r mod q_mod} z^n / n!`.
pub fn exp_residue(q_mod: u32, r: u32, z: &Rational, prec: Precision) -> Result<Enclosure> {
    if q_mod == 0 {
        bail!(Validation, "modulus must be at least 1");
    }
    if r >= q_mod {
        bail!(Validation, "residue {r} is not in 0..{q_mod}");
    }
    if z.is_zero() {
        return Ok(if r == 0 { Enclosure::one() } else { Enclosure::zero() });
    }
    let za = z.abs();
    // terms grow to about e^|z| before decaying
    let growth = growth_bits(&za);
    certified(prec, growth, |wp| {
        let mut term = Enclosure::one();
        let mut acc = if r == 0 { Enclosure::one() } else { Enclosure::zero() };
        let mut n = 0u64;
        loop {
            n += 1;
            term = term.scale(&(z / &Rational::from(n))).round(wp);
            if n % u64::from(q_mod) == u64::from(r) {
                acc = (&acc + &term).round(wp);
            }
            if Rational::from(n + 2) > &za * &Rational::from(2) {
                if let Some(t) = exp_tail(&term.mag(), &za, n) {
                    if t <= prec.raised(4).tail_target(acc.mid()) {
                        return Ok(acc.widen(&t));
                    }
                }
            }
        }
    })
}
