use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i64) -> Self {
        let p = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            Rational::from_integer(p)
        } else {
            Rational(BigRational::new_raw(BigInt::one(), p))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Bit size of numerator plus denominator; a rough measure of cost.
    pub fn size_bits(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }

    /// `floor(log2 |self|)`. Zero maps to `i64::MIN`.
    pub fn floor_log2(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        let n = self.0.numer().magnitude();
        let d = self.0.denom().magnitude();
        let mut e = n.bits() as i64 - d.bits() as i64;
        // 2^e <= |x| < 2^(e+1) after at most one correction
        let (lhs, rhs) = shift_pair(n, d, e);
        if lhs < rhs {
            e -= 1;
        }
        e
    }

    /// True when the value is a dyadic rational `m / 2^k`.
    pub fn is_dyadic(&self) -> bool {
        let d = self.0.denom().magnitude();
        d.trailing_zeros().is_none_or(|tz| d.bits() == tz + 1)
    }

    /// Nearest dyadic rational with `bits` significant bits, together with an
    /// upper bound for the rounding error (half an ulp, zero when exact).
    pub fn round_dyadic(&self, bits: u32) -> (Rational, Rational) {
        if self.is_zero() {
            return (Rational::zero(), Rational::zero());
        }
        let shift = bits as i64 - 1 - self.floor_log2();
        let scaled = self * &Rational::pow2(shift);
        if scaled.is_integer() {
            return (self.clone(), Rational::zero());
        }
        let twice = &scaled.0 * BigRational::from_integer(BigInt::from(2));
        let m = (twice.floor().to_integer() + BigInt::one()).div_floor(&BigInt::from(2));
        let rounded = Rational::from_integer(m) * Rational::pow2(-shift);
        (rounded, Rational::pow2(-shift - 1))
    }

    /// Smallest dyadic with `bits` significant bits that is `>= self`.
    pub fn round_up_dyadic(&self, bits: u32) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let shift = bits as i64 - 1 - self.floor_log2();
        let scaled = self * &Rational::pow2(shift);
        Rational::from_integer(scaled.ceil()) * Rational::pow2(-shift)
    }

    /// Largest dyadic with `bits` significant bits that is `<= self`.
    pub fn round_down_dyadic(&self, bits: u32) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let shift = bits as i64 - 1 - self.floor_log2();
        let scaled = self * &Rational::pow2(shift);
        Rational::from_integer(scaled.floor()) * Rational::pow2(-shift)
    }

    /// Parse a plain decimal literal such as `-2.0767`. Returns the value and
    /// one unit in its last printed place.
    pub fn parse_decimal(text: &str) -> Result<(Rational, Rational)> {
        let t = text.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty()) || !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(Error::Validation(alloc::format!("malformed decimal '{text}'")));
        }
        let mut all = String::with_capacity(int_part.len() + frac_part.len());
        all.push_str(int_part);
        all.push_str(frac_part);
        let n = BigInt::from_str(&all).map_err(|_| Error::Validation(alloc::format!("malformed decimal '{text}'")))?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mut value = Rational(BigRational::new(n, scale.clone()));
        if neg {
            value = -value;
        }
        Ok((value, Rational(BigRational::new(BigInt::one(), scale))))
    }

    /// Decimal expansion truncated toward negative infinity with `digits`
    /// fractional digits.
    pub fn to_decimal_floor(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (&self.0 * BigRational::from_integer(scale)).floor().to_integer();
        format_scaled(&scaled, digits)
    }

    /// Decimal expansion rounded toward positive infinity.
    pub fn to_decimal_ceil(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (&self.0 * BigRational::from_integer(scale)).ceil().to_integer();
        format_scaled(&scaled, digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn shift_pair(n: &BigUint, d: &BigUint, e: i64) -> (BigUint, BigUint) {
    if e >= 0 {
        (n.clone(), d << (e as u64))
    } else {
        (n << ((-e) as u64), d.clone())
    }
}

fn format_scaled(scaled: &BigInt, digits: usize) -> String {
    let neg = scaled.is_negative();
    let mut s = scaled.magnitude().to_string();
    if digits > 0 {
        while s.len() <= digits {
            s.insert(0, '0');
        }
        s.insert(s.len() - digits, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` or a plain decimal.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let bad = || Error::Validation(alloc::format!("malformed rational '{s}'"));
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            return Rational::new(p, q);
        }
        Rational::parse_decimal(t).map(|(v, _)| v)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::from_integer(BigInt::from(v))
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

// Division panics on a zero divisor; use `Rational::checked_div` to avoid that.
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

/// Convenience constructor for literals in tests and tables: `rat(3, 4)`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}
