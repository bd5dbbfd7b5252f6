use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{bail, Result};
use crate::exact::{rat, Enclosure, Rational};

use super::{certified, Precision};

/// The three Lambert-type families built from the Fourier expansions of the
/// Jacobian elliptic functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `sum n^k q^(2n) / (1 - q^(2n))`
    A,
    /// `sum (-1)^(n+1) n^k q^(2n) / (1 - q^(2n))`
    B,
    /// `sum n^k q^n / (1 - q^(2n))`
    C,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s {
            "A" | "a" => Family::A,
            "B" | "b" => Family::B,
            "C" | "c" => Family::C,
            other => bail!(Validation, "unknown q-series family '{other}'"),
        })
    }
}

/// `sum_{n >= 1} s_n n^k u^n / (1 - v^n)` with `s_n = (-1)^(n+1)` when
/// `alternating`.
///
/// With `rho_n = ((n+1)/n)^k |u| (1 + |v|^n) / (1 - |v|^(n+1))` bounding
/// every later term ratio, the tail after term `N` is at most
/// `|t_N| rho_N / (1 - rho_N)`.
fn lambert(k: u32, u: &Rational, v: &Rational, alternating: bool, prec: Precision) -> Result<Enclosure> {
    if u.is_zero() {
        return Ok(Enclosure::zero());
    }
    let ua = u.abs();
    let va = v.abs();
    let settle = (Rational::one() + &ua) / Rational::from(2);
    certified(prec, 0, |wp| {
        let ue = Enclosure::exact(u.clone());
        let ve = Enclosure::exact(v.clone());
        let mut upow = Enclosure::one();
        let mut vpow = Enclosure::one();
        // upper bound on |v|^n
        let mut va_pow = Rational::one();
        let mut acc = Enclosure::zero();
        let mut n = 0u64;
        loop {
            n += 1;
            upow = (&upow * &ue).round(wp);
            vpow = (&vpow * &ve).round(wp);
            va_pow = (&va_pow * &va).round_up_dyadic(64);
            let nk = Rational::from(n).pow(k);
            let den = Enclosure::one() - vpow.clone();
            let mut term = upow.scale(&nk).div(&den)?.round(wp);
            if alternating && n.is_multiple_of(2) {
                term = -term;
            }
            acc = (&acc + &term).round(wp);
            let next_va = (&va_pow * &va).round_up_dyadic(64);
            let ratio = (Rational::from(n + 1) / Rational::from(n)).pow(k) * &ua * (Rational::one() + &va_pow)
                / (Rational::one() - next_va);
            let rho = ratio.round_up_dyadic(64);
            if rho <= settle {
                let tail = term.mag() * &rho / (Rational::one() - &rho);
                if tail <= prec.raised(4).tail_target(acc.mid()) {
                    return Ok(acc.widen(&tail));
                }
            }
        }
    })
}

fn check_q(q: &Rational) -> Result<()> {
    if q.abs() >= Rational::one() {
        bail!(Domain, "|q| must be below 1, got q = {q}");
    }
    Ok(())
}

/// `A_order(q)`, `B_order(q)` or `C_order(q)` for odd `order`.
pub fn q_series(family: Family, order: u32, q: &Rational, prec: Precision) -> Result<Enclosure> {
    if order.is_multiple_of(2) {
        bail!(Validation, "order must be an odd positive integer, got {order}");
    }
    check_q(q)?;
    let q2 = q * q;
    match family {
        Family::A => lambert(order, &q2, &q2, false, prec),
        Family::B => lambert(order, &q2, &q2, true, prec),
        Family::C => lambert(order, q, &q2, false, prec),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ramanujan {
    P,
    Q,
    R,
}

impl Ramanujan {
    pub fn parse(s: &str) -> Result<Ramanujan> {
        Ok(match s {
            "P" => Ramanujan::P,
            "Q" => Ramanujan::Q,
            "R" => Ramanujan::R,
            other => bail!(Validation, "unknown Ramanujan function '{other}'"),
        })
    }

    /// `(c, k)` such that the function is `c (zeta(-k)/2 + sum n^k q^n/(1-q^n))`.
    fn shape(self) -> (i64, u32) {
        match self {
            Ramanujan::P => (-24, 1),
            Ramanujan::Q => (240, 3),
            Ramanujan::R => (-504, 5),
        }
    }
}

/// `zeta(-k)` for odd `k >= 1`: the values for 1, 3, 5 are fixed, the rest
/// come from Bernoulli numbers.
pub fn zeta_neg_odd(k: u32) -> Rational {
    match k {
        1 => rat(-1, 12),
        3 => rat(1, 120),
        5 => rat(-1, 252),
        _ => -bernoulli(k as usize + 1) / Rational::from(k + 1),
    }
}

/// Bernoulli number `B_n` from `sum_{j<=m} C(m+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // binomial(m+1, j) built up along j
        let mut binom = BigInt::from(1);
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += &(bj * &Rational::from_integer(binom.clone()));
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / Rational::from(m + 1));
    }
    b.pop().expect("n + 1 entries")
}

/// Ramanujan's `P`, `Q`, `R` for `|q| < 1`; all equal 1 at `q = 0`.
pub fn ramanujan(which: Ramanujan, q: &Rational, prec: Precision) -> Result<Enclosure> {
    check_q(q)?;
    let (c, k) = which.shape();
    let c = Rational::from(c);
    let constant = &c * &zeta_neg_odd(k) / Rational::from(2);
    if q.is_zero() {
        return Ok(Enclosure::exact(constant));
    }
    let s = lambert(k, q, q, false, prec.raised(12))?;
    Ok(s.scale(&c).add_rational(&constant).round(prec.bits() + 16))
}

/// `1 + 2 sum_{v >= 1} q^(v^2)` for `0 <= q < 1`, with tail after `N` at
/// most `2 q^((N+1)^2) / (1 - q)`.
pub fn theta(q: &Rational, prec: Precision) -> Result<Enclosure> {
    if q.is_negative() || *q >= Rational::one() {
        bail!(Domain, "theta needs 0 <= q < 1, got q = {q}");
    }
    if q.is_zero() {
        return Ok(Enclosure::one());
    }
    let damp = Rational::one() - q;
    certified(prec, 0, |wp| {
        let qe = Enclosure::exact(q.clone());
        let q2 = qe.square().round(wp);
        // q^(v^2) and q^(2v+1)
        let mut sq = Enclosure::one();
        let mut step = qe.clone();
        let mut acc = Enclosure::one();
        loop {
            sq = (&sq * &step).round(wp);
            step = (&step * &q2).round(wp);
            acc = (&acc + &sq.scale(&Rational::from(2))).round(wp);
            let next = (&sq * &step).round(wp);
            let tail = next.mag() * Rational::from(2) / &damp;
            if tail <= prec.raised(2).tail_target(acc.mid()) {
                return Ok(acc.widen(&tail));
            }
        }
    })
}
