use core::fmt;

use crate::error::{bail, Error, Result};
use crate::exact::{Enclosure, PointAssignment, Polynomial, Rational, VarList};

/// Quotient of two polynomials, kept unreduced.
///
/// The denominator is scaled to coprime integer coefficients with a
/// positive leading coefficient; no polynomial gcd is ever taken.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfn_arithmetic(a: &RationalFunction, b: &RationalFunction, op: RatOp) -> Result<RationalFunction> {
    match op {
        RatOp::Add => a.checked_add(b),
        RatOp::Sub => a.checked_sub(b),
        RatOp::Mul => a.checked_mul(b),
        RatOp::Div => a.checked_div(b),
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.vars() != den.vars() {
            bail!(Structural, "numerator and denominator use different variable lists");
        }
        if den.is_zero() {
            return Err(Error::Arithmetic("rational function with zero denominator".into()));
        }
        Ok(RationalFunction { num, den }.normalized())
    }

    pub fn zero(vars: VarList) -> Self {
        RationalFunction { num: Polynomial::zero(vars.clone()), den: Polynomial::one(vars) }
    }

    pub fn one(vars: VarList) -> Self {
        RationalFunction { num: Polynomial::one(vars.clone()), den: Polynomial::one(vars) }
    }

    fn normalized(self) -> Self {
        let c = self.den.content();
        if c.is_one() {
            return self;
        }
        let inv = c.recip().expect("denominator is nonzero");
        RationalFunction { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &VarList {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant one.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Mathematical equality by cross-multiplication.
    pub fn equiv(&self, other: &RationalFunction) -> Result<bool> {
        let lhs = self.num.checked_mul(&other.den)?;
        let rhs = other.num.checked_mul(&self.den)?;
        Ok(lhs == rhs)
    }

    pub fn checked_add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if self.den == other.den {
            return RationalFunction::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        RationalFunction::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::Arithmetic("division by the zero rational function".into()));
        }
        RationalFunction::new(self.num.checked_mul(&other.den)?, self.den.checked_mul(&other.num)?)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, exp: u32) -> RationalFunction {
        RationalFunction { num: self.num.pow(exp), den: self.den.pow(exp) }.normalized()
    }

    /// Quotient rule: `(num' den - num den') / den^2`.
    pub fn partial(&self, var: &str) -> Result<RationalFunction> {
        let i = crate::exact::polynomial::index_of(self.vars(), var)?;
        Ok(self.partial_index(i))
    }

    pub(crate) fn partial_index(&self, i: usize) -> RationalFunction {
        let dn = self.num.partial_index(i);
        if self.den.is_constant() {
            return RationalFunction { num: dn, den: self.den.clone() };
        }
        let dd = self.den.partial_index(i);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RationalFunction { num, den: &self.den * &self.den }.normalized()
    }

    /// Exact value; fails when the denominator vanishes at the point.
    pub fn eval_rational(&self, values: &[Rational]) -> Result<Rational> {
        let d = self.den.eval_rational(values)?;
        if d.is_zero() {
            return Err(Error::Arithmetic("denominator vanishes at the evaluation point".into()));
        }
        Ok(self.num.eval_rational(values)? / d)
    }

    pub fn eval(&self, point: &PointAssignment) -> Result<Enclosure> {
        let n = self.num.eval(point)?;
        if self.den.is_constant() {
            let d = self.den.constant_value().expect("constant denominator");
            return Ok(n.scale(&d.recip()?));
        }
        n.div(&self.den.eval(point)?)
    }

    pub fn eval_prec(&self, point: &PointAssignment, prec: u32) -> Result<Enclosure> {
        let n = self.num.eval_prec(point, prec)?;
        if self.den.is_constant() {
            let d = self.den.constant_value().expect("constant denominator");
            return Ok(n.scale(&d.recip()?).round(prec));
        }
        Ok(n.div(&self.den.eval_prec(point, prec)?)?.round(prec))
    }

    pub fn with_vars(&self, vars: &VarList) -> Result<RationalFunction> {
        Ok(RationalFunction { num: self.num.with_vars(vars)?, den: self.den.with_vars(vars)? })
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars().clone());
        RationalFunction { num: p, den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_ratfn(self))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
