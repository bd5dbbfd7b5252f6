use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{bail, Error, Result};
use crate::exact::Rational;

/// Default working precision, in bits, for rounding enclosure midpoints.
pub const DEFAULT_PRECISION: u32 = 128;

/// Radii larger than this many bits (numerator plus denominator) are
/// rounded up to a short dyadic.
const RADIUS_SIZE_LIMIT: u64 = 192;
const RADIUS_BITS: u32 = 64;

/// Closed interval `[mid - rad, mid + rad]` with exact rational endpoints.
///
/// All arithmetic is outward-conservative. The operator impls are exact;
/// call [`Enclosure::round`] to compress the midpoint to a dyadic rational
/// once its representation gets large.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Enclosure {
    mid: Rational,
    rad: Rational,
}

impl Enclosure {
    pub fn new(mid: Rational, rad: Rational) -> Result<Self> {
        if rad.is_negative() {
            bail!(Validation, "negative radius {rad}");
        }
        Ok(Enclosure { mid, rad })
    }

    pub fn exact(value: Rational) -> Self {
        Enclosure { mid: value, rad: Rational::zero() }
    }

    pub fn zero() -> Self {
        Enclosure::exact(Rational::zero())
    }

    pub fn one() -> Self {
        Enclosure::exact(Rational::one())
    }

    /// Interval `[lo, hi]`; the endpoints may be given in either order.
    pub fn from_endpoints(lo: Rational, hi: Rational) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let two = Rational::from(2);
        Enclosure { mid: (&lo + &hi) / two.clone(), rad: (hi - lo) / two }
    }

    /// `"2.0767"` becomes `2.0767 ± 0.0001`.
    pub fn from_decimal(text: &str) -> Result<Self> {
        let (mid, ulp) = Rational::parse_decimal(text)?;
        Ok(Enclosure { mid, rad: ulp })
    }

    pub fn mid(&self) -> &Rational {
        &self.mid
    }

    pub fn rad(&self) -> &Rational {
        &self.rad
    }

    pub fn lo(&self) -> Rational {
        &self.mid - &self.rad
    }

    pub fn hi(&self) -> Rational {
        &self.mid + &self.rad
    }

    pub fn width(&self) -> Rational {
        &self.rad + &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Rational {
        self.mid.abs() + &self.rad
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> Rational {
        let m = self.mid.abs() - &self.rad;
        if m.is_negative() {
            Rational::zero()
        } else {
            m
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (x - &self.mid).abs() <= self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    /// Sign of every point in the interval, if it is the same for all of them.
    pub fn sign(&self) -> Option<i32> {
        if self.mid > self.rad {
            Some(1)
        } else if -&self.mid > self.rad {
            Some(-1)
        } else if self.is_exact() && self.mid.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn is_subset_of(&self, other: &Enclosure) -> bool {
        self.lo() >= other.lo() && self.hi() <= other.hi()
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    /// Certainly greater than `other` at every pair of points.
    pub fn certainly_gt(&self, other: &Enclosure) -> bool {
        self.lo() > other.hi()
    }

    pub fn certainly_lt(&self, other: &Enclosure) -> bool {
        self.hi() < other.lo()
    }

    pub fn widen(&self, extra: &Rational) -> Enclosure {
        Enclosure { mid: self.mid.clone(), rad: &self.rad + &extra.abs() }
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        Enclosure::from_endpoints(lo, hi)
    }

    /// Round the midpoint to `prec` significant bits when its representation
    /// has grown past the working precision, folding the error into the radius.
    pub fn round(self, prec: u32) -> Enclosure {
        let Enclosure { mut mid, mut rad } = self;
        if mid.size_bits() > prec as u64 + 32 {
            let (m, err) = mid.round_dyadic(prec);
            mid = m;
            rad += &err;
        }
        if rad.size_bits() > RADIUS_SIZE_LIMIT {
            rad = rad.round_up_dyadic(RADIUS_BITS);
        }
        Enclosure { mid, rad }
    }

    pub fn scale(&self, c: &Rational) -> Enclosure {
        Enclosure { mid: &self.mid * c, rad: &self.rad * &c.abs() }
    }

    pub fn add_rational(&self, c: &Rational) -> Enclosure {
        Enclosure { mid: &self.mid + c, rad: self.rad.clone() }
    }

    pub fn square(&self) -> Enclosure {
        // |x^2 - m^2| = |x - m| |x + m| <= r (2|m| + r)
        let two_m = self.mid.abs() * Rational::from(2);
        Enclosure { mid: &self.mid * &self.mid, rad: &self.rad * &(two_m + &self.rad) }
    }

    pub fn pow(&self, exp: u32) -> Enclosure {
        if exp == 0 {
            return Enclosure::one();
        }
        if self.is_exact() {
            return Enclosure::exact(self.mid.pow(exp));
        }
        let mut base = self.clone();
        let mut acc: Option<Enclosure> = None;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc.unwrap_or_else(Enclosure::one)
    }

    pub fn recip(&self) -> Result<Enclosure> {
        Enclosure::one().div(self)
    }

    /// Ball quotient; fails when the divisor interval contains zero.
    pub fn div(&self, other: &Enclosure) -> Result<Enclosure> {
        if other.contains_zero() {
            return Err(Error::Arithmetic("division by an enclosure containing zero".into()));
        }
        let m2 = other.mid.abs();
        let mid = self.mid.checked_div(&other.mid)?;
        if self.is_exact() && other.is_exact() {
            return Ok(Enclosure::exact(mid));
        }
        let num = &m2 * &self.rad + self.mid.abs() * &other.rad;
        let den = &m2 * &(&m2 - &other.rad);
        Ok(Enclosure { mid, rad: num.checked_div(&den)? })
    }

    /// Square root, with endpoints rounded outward to `prec` significant bits.
    /// A lower endpoint below zero is clamped to zero.
    pub fn sqrt(&self, prec: u32) -> Result<Enclosure> {
        let hi = self.hi();
        if hi.is_negative() {
            bail!(Domain, "square root of a negative enclosure");
        }
        let lo = self.lo().max(Rational::zero());
        if self.is_exact() {
            let (down, up) = sqrt_bounds(&lo, prec);
            if down == up {
                return Ok(Enclosure::exact(down));
            }
            return Ok(Enclosure::from_endpoints(down, up));
        }
        let (down, _) = sqrt_bounds(&lo, prec);
        let (_, up) = sqrt_bounds(&hi, prec);
        Ok(Enclosure::from_endpoints(down, up))
    }

    /// Lower and upper decimal bounds with `digits` fractional digits.
    pub fn to_decimal_bounds(&self, digits: usize) -> (String, String) {
        (self.lo().to_decimal_floor(digits), self.hi().to_decimal_ceil(digits))
    }
}

/// Dyadic bounds `down <= sqrt(x) <= up` with about `prec` significant bits;
/// `down == up` exactly when the root was found exactly.
pub(crate) fn sqrt_bounds(x: &Rational, prec: u32) -> (Rational, Rational) {
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    // scale so that x * 4^s has about 2 * prec bits before the point
    let s = prec as i64 + 2 - x.floor_log2().div_euclid(2);
    let scaled = x * &Rational::pow2(2 * s);
    let n: BigInt = scaled.floor();
    let r = n.sqrt();
    let inv = Rational::pow2(-s);
    let down = Rational::from_integer(r.clone()) * &inv;
    if scaled.is_integer() && &r * &r == n {
        return (down.clone(), down);
    }
    let up = Rational::from_integer(r + BigInt::one()) * &inv;
    (down, up)
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid, self.rad)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_bounds(12);
        write!(f, "[{lo}, {hi}]")
    }
}

impl From<Rational> for Enclosure {
    fn from(v: Rational) -> Self {
        Enclosure::exact(v)
    }
}

impl Add<&Enclosure> for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure { mid: &self.mid + &rhs.mid, rad: &self.rad + &rhs.rad }
    }
}

impl Sub<&Enclosure> for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure { mid: &self.mid - &rhs.mid, rad: &self.rad + &rhs.rad }
    }
}

impl Mul<&Enclosure> for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        let mid = &self.mid * &rhs.mid;
        if self.rad.is_zero() && rhs.rad.is_zero() {
            return Enclosure::exact(mid);
        }
        let rad = self.mid.abs() * &rhs.rad + rhs.mid.abs() * &self.rad + &self.rad * &rhs.rad;
        Enclosure { mid, rad }
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure { mid: -&self.mid, rad: self.rad.clone() }
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        &self + &rhs
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: Enclosure) -> Enclosure {
        &self - &rhs
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: Enclosure) -> Enclosure {
        &self * &rhs
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        -&self
    }
}

/// Binding of variable names to enclosures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointAssignment {
    bindings: BTreeMap<String, Enclosure>,
}

impl PointAssignment {
    pub fn new() -> Self {
        PointAssignment::default()
    }

    /// Bind `name`; binding the same variable twice is an error.
    pub fn bind(&mut self, name: impl Into<String>, value: Enclosure) -> Result<()> {
        let name = name.into();
        if self.bindings.contains_key(&name) {
            bail!(Validation, "variable '{name}' bound twice");
        }
        self.bindings.insert(name, value);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, value: Enclosure) -> Result<Self> {
        self.bind(name, value)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Enclosure> {
        self.bindings.get(name)
    }

    pub fn require(&self, name: &str) -> Result<&Enclosure> {
        self.bindings
            .get(name)
            .ok_or_else(|| Error::Structural(alloc::format!("variable '{name}' is not bound")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Enclosure)> {
        self.bindings.iter()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl FromIterator<(String, Enclosure)> for PointAssignment {
    /// Later duplicates overwrite earlier ones; use [`PointAssignment::bind`] to reject them.
    fn from_iter<I: IntoIterator<Item = (String, Enclosure)>>(iter: I) -> Self {
        PointAssignment { bindings: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ball(m: (i64, i64), r: (i64, i64)) -> Enclosure {
        Enclosure::new(rat(m.0, m.1), rat(r.0, r.1)).unwrap()
    }

    #[test]
    fn product_bound_covers_corners() {
        let x = ball((1, 1), (1, 10));
        let p = &x * &x;
        assert!(p.contains(&rat(81, 100)));
        assert!(p.contains(&rat(121, 100)));
    }

    #[test]
    fn negative_radius_rejected() {
        assert!(Enclosure::new(rat(1, 1), rat(-1, 2)).is_err());
    }

    #[test]
    fn division_contains_quotients() {
        let a = ball((3, 1), (1, 10));
        let b = ball((2, 1), (1, 5));
        let q = a.div(&b).unwrap();
        for (x, y) in [(rat(29, 10), rat(9, 5)), (rat(31, 10), rat(11, 5)), (rat(29, 10), rat(11, 5)), (rat(31, 10), rat(9, 5))] {
            assert!(q.contains(&(&x / &y)));
        }
        assert!(a.div(&ball((0, 1), (1, 10))).is_err());
    }

    #[test]
    fn sqrt_exact_and_bounded() {
        let s = Enclosure::exact(rat(4, 1)).sqrt(64).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.mid(), &rat(2, 1));
        let s = Enclosure::exact(rat(9, 4)).sqrt(64).unwrap();
        assert_eq!(s.mid(), &rat(3, 2));
        let two = Enclosure::exact(rat(2, 1)).sqrt(64).unwrap();
        assert!(!two.is_exact());
        assert!(two.lo().pow(2) <= rat(2, 1) && two.hi().pow(2) >= rat(2, 1));
        assert!(two.rad() < &Rational::pow2(-60));
        assert!(Enclosure::exact(rat(-1, 1)).sqrt(64).is_err());
    }

    #[test]
    fn rounding_keeps_the_value_inside() {
        let x = Enclosure::exact(rat(1, 3).pow(80));
        let r = x.clone().round(64);
        assert!(r.contains(x.mid()));
        assert!(r.mid().is_dyadic());
        let small = Enclosure::exact(rat(1, 10)).round(64);
        assert!(small.is_exact());
    }

    #[test]
    fn duplicate_binding_rejected() {
        let mut p = PointAssignment::new();
        p.bind("X1", Enclosure::one()).unwrap();
        assert!(p.bind("X1", Enclosure::zero()).is_err());
        assert!(p.require("X2").is_err());
    }
}
