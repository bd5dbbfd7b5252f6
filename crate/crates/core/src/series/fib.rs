use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{bail, Result};
use crate::exact::{rat, Enclosure, Rational};

use super::{certified, exp_tail, growth_bits, Precision};

/// Memoized Fibonacci and Lucas numbers.
#[derive(Clone, Debug)]
pub struct FibCache {
    f: Vec<BigInt>,
    l: Vec<BigInt>,
}

impl Default for FibCache {
    fn default() -> Self {
        FibCache::new()
    }
}

impl FibCache {
    pub fn new() -> Self {
        FibCache { f: vec![BigInt::from(0), BigInt::from(1)], l: vec![BigInt::from(2), BigInt::from(1)] }
    }

    fn extend_to(&mut self, n: usize) {
        while self.f.len() <= n {
            let k = self.f.len();
            let f = &self.f[k - 1] + &self.f[k - 2];
            let l = &self.l[k - 1] + &self.l[k - 2];
            self.f.push(f);
            self.l.push(l);
        }
    }

    pub fn fib(&mut self, n: usize) -> &BigInt {
        self.extend_to(n);
        &self.f[n]
    }

    pub fn lucas(&mut self, n: usize) -> &BigInt {
        self.extend_to(n);
        &self.l[n]
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `(F_n, L_n)`.
pub fn fib_lucas(n: usize) -> (BigInt, BigInt) {
    let mut c = FibCache::new();
    let f = c.fib(n).clone();
    (f, c.lucas(n).clone())
}

/// `sum_{n >= 1} F_n^(-two_s)`.
///
/// Uses `F_n >= (8/5)^(n-2)`, so the tail after `N` terms is at most
/// `r^(N-1) / (1 - r)` with `r = (5/8)^two_s`.
pub fn zeta_fib(two_s: u32, prec: Precision) -> Result<Enclosure> {
    if two_s == 0 || !two_s.is_multiple_of(2) {
        bail!(Validation, "exponent must be a positive even integer, got {two_s}");
    }
    let r = rat(5, 8).pow(two_s);
    let damp = Rational::one() - &r;
    certified(prec, 0, |wp| {
        let mut cache = FibCache::new();
        let mut acc = Enclosure::zero();
        let mut n = 1usize;
        loop {
            let f = Rational::from_integer(cache.fib(n).clone());
            let term = Enclosure::exact(f.pow(two_s).recip()?).round(wp);
            acc = (&acc + &term).round(wp);
            let tail = &r.pow(n as u32 - 1) / &damp;
            if tail <= prec.raised(2).tail_target(&Rational::one()) {
                return Ok(acc.widen(&tail));
            }
            n += 1;
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpFibKind {
    /// `sum F_n^s z^n / n!`
    F { s: u32 },
    /// `sum L_n^s z^n / n!`
    G { s: u32 },
    /// `sum F_(an+b) z^n / n!`
    Fab { a: u32, b: u32 },
    /// `sum L_(an+b) z^n / n!`
    Gab { a: u32, b: u32 },
}

impl ExpFibKind {
    /// Integer coefficient of `z^n / n!`.
    fn coefficient(self, cache: &mut FibCache, n: usize) -> BigInt {
        match self {
            ExpFibKind::F { s } => num_traits::pow(cache.fib(n).clone(), s as usize),
            ExpFibKind::G { s } => num_traits::pow(cache.lucas(n).clone(), s as usize),
            ExpFibKind::Fab { a, b } => cache.fib(a as usize * n + b as usize).clone(),
            ExpFibKind::Gab { a, b } => cache.lucas(a as usize * n + b as usize).clone(),
        }
    }

    /// `(C, e)` with `|coefficient(n)| <= C * 2^(e n)`, from `F_n <= 2^n`
    /// and `L_n <= 2^(n+1)`.
    fn growth(self) -> (Rational, u32) {
        match self {
            ExpFibKind::F { s } => (Rational::one(), s),
            ExpFibKind::G { s } => (Rational::pow2(s as i64), s),
            ExpFibKind::Fab { a, b } => (Rational::pow2(b as i64), a),
            ExpFibKind::Gab { a, b } => (Rational::pow2(b as i64 + 1), a),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            ExpFibKind::F { s } | ExpFibKind::G { s } if s == 0 => bail!(Validation, "s must be at least 1"),
            ExpFibKind::Fab { a, .. } | ExpFibKind::Gab { a, .. } if a == 0 => {
                bail!(Validation, "a must be at least 1")
            }
            _ => Ok(()),
        }
    }
}

pub fn exp_fib_series(kind: ExpFibKind, z: &Rational, prec: Precision) -> Result<Enclosure> {
    kind.validate()?;
    let mut cache = FibCache::new();
    if z.is_zero() {
        return Ok(Enclosure::exact(Rational::from_integer(kind.coefficient(&mut cache, 0))));
    }
    let (c, e) = kind.growth();
    let w = z.abs() * Rational::pow2(e as i64);
    let growth = growth_bits(&w);
    certified(prec, growth, |wp| {
        // z^n / n!
        let mut power = Enclosure::one();
        let mut bound = c.clone();
        let mut acc = Enclosure::exact(Rational::from_integer(kind.coefficient(&mut cache, 0)));
        let mut n = 0u64;
        loop {
            n += 1;
            let step = z / &Rational::from(n);
            power = power.scale(&step).round(wp);
            let coef = Rational::from_integer(kind.coefficient(&mut cache, n as usize));
            acc = (&acc + &power.scale(&coef)).round(wp);
            // bound = C w^n / n!, rounded up to keep it small
            bound = (&bound * &(&w / &Rational::from(n))).round_up_dyadic(64);
            if Rational::from(n + 2) > &w * &Rational::from(2) {
                if let Some(t) = exp_tail(&bound, &w, n) {
                    if t <= prec.raised(4).tail_target(acc.mid()) {
                        return Ok(acc.widen(&t));
                    }
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn dec(s: &str) -> Rational {
        Rational::parse_decimal(s).unwrap().0
    }

    #[test]
    fn small_indices() {
        assert_eq!(fib_lucas(0), (BigInt::from(0), BigInt::from(2)));
        assert_eq!(fib_lucas(1), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(fib_lucas(10), (BigInt::from(55), BigInt::from(123)));
        let mut c = FibCache::new();
        for n in 2..60 {
            let (f, l) = (c.fib(n).clone(), c.lucas(n).clone());
            let (a, b) = (c.fib(n - 1).clone(), c.fib(n + 1).clone());
            assert_eq!(l, a + b);
            assert!(f >= BigInt::from(0));
        }
    }

    #[test]
    fn zeta_values() {
        let z4 = zeta_fib(4, p(64)).unwrap();
        assert!(z4.lo() >= dec("2.076730850") && z4.hi() <= dec("2.076730851"));
        let z8 = zeta_fib(8, p(64)).unwrap();
        assert!(z8.lo() >= dec("2.004061286") && z8.hi() <= dec("2.004061287"));
        assert!(zeta_fib(3, p(64)).is_err());
        assert!(zeta_fib(0, p(64)).is_err());
    }

    #[test]
    fn exp_fib_at_zero() {
        let z = Rational::zero();
        assert!(exp_fib_series(ExpFibKind::F { s: 3 }, &z, p(64)).unwrap().mid().is_zero());
        assert_eq!(exp_fib_series(ExpFibKind::G { s: 3 }, &z, p(64)).unwrap(), Enclosure::exact(Rational::from(8)));
        assert_eq!(exp_fib_series(ExpFibKind::Fab { a: 2, b: 3 }, &z, p(64)).unwrap(), Enclosure::exact(Rational::from(2)));
        assert!(exp_fib_series(ExpFibKind::F { s: 0 }, &Rational::one(), p(64)).is_err());
    }
}
