use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{bail, Error, Result};
use crate::exact::{Enclosure, PointAssignment, Rational, RationalFunction};

/// Ordered list of variable names shared by polynomials that can be combined.
pub type VarList = Arc<[String]>;

pub fn var_list<S: AsRef<str>>(names: &[S]) -> VarList {
    names.iter().map(|s| String::from(s.as_ref())).collect::<Vec<_>>().into()
}

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then the exponent of the earliest variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { degree: exps.iter().sum(), exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// No stored coefficient is zero, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: VarList,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `a op b` for polynomials over the same variable list.
pub fn poly_arithmetic(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl Polynomial {
    pub fn zero(vars: VarList) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarList, c: Rational) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(vars: VarList) -> Self {
        Polynomial::constant(vars, Rational::one())
    }

    pub fn var(vars: VarList, name: &str) -> Result<Self> {
        let i = index_of(&vars, name)?;
        Ok(Polynomial::var_index(vars, i))
    }

    pub(crate) fn var_index(vars: VarList, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut p = Polynomial::zero(vars);
        p.terms.insert(Monomial::new(exps), Rational::one());
        p
    }

    /// Build from `(exponents, coefficient)` pairs, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(vars: VarList, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (exps, c) in terms {
            if exps.len() != p.vars.len() {
                bail!(
                    Structural,
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    p.vars.len()
                );
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading_term().map_or(0, |(m, _)| m.degree)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree() == 0
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.is_constant() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.terms.keys().any(|m| m.exps[i] > 0)).collect()
    }

    fn check_same_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            bail!(Structural, "mismatched variable lists {:?} and {:?}", self.vars, other.vars);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(other)?;
        let mut out = Polynomial::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial(&self, var: &str) -> Result<Polynomial> {
        let i = index_of(&self.vars, var)?;
        Ok(self.partial_index(i))
    }

    pub(crate) fn partial_index(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] = e - 1;
            out.add_term(Monomial::new(exps), c * &Rational::from(e));
        }
        out
    }

    /// Exact value at a rational point given in variable order.
    pub fn eval_rational(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.nvars() {
            bail!(Structural, "{} values for {} variables", values.len(), self.nvars());
        }
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let maxe = self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0);
            let mut row = Vec::with_capacity(maxe as usize + 1);
            row.push(Rational::one());
            for k in 1..=maxe as usize {
                let next = &row[k - 1] * v;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Interval evaluation; exact when every bound variable is exact.
    pub fn eval(&self, point: &PointAssignment) -> Result<Enclosure> {
        self.eval_with(point, None)
    }

    /// Interval evaluation with midpoint rounding at `prec` bits.
    pub fn eval_prec(&self, point: &PointAssignment, prec: u32) -> Result<Enclosure> {
        self.eval_with(point, Some(prec))
    }

    fn eval_with(&self, point: &PointAssignment, prec: Option<u32>) -> Result<Enclosure> {
        let round = |e: Enclosure| match prec {
            Some(p) => e.round(p),
            None => e,
        };
        let support = self.support();
        let mut powers: Vec<Vec<Enclosure>> = vec![Vec::new(); self.nvars()];
        for &i in &support {
            let v = point.require(&self.vars[i])?;
            let maxe = self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0);
            let row = &mut powers[i];
            row.push(Enclosure::one());
            for k in 1..=maxe as usize {
                let next = round(&row[k - 1] * v);
                row.push(next);
            }
        }
        let mut acc = Enclosure::zero();
        for (m, c) in &self.terms {
            let mut t = Enclosure::exact(c.clone());
            for &i in &support {
                let e = m.exps[i] as usize;
                if e > 0 {
                    t = round(&t * &powers[i][e]);
                }
            }
            acc = round(&acc + &t);
        }
        Ok(acc)
    }

    /// Re-express over a larger variable list that contains every variable
    /// this polynomial actually uses.
    pub fn with_vars(&self, vars: &VarList) -> Result<Polynomial> {
        if &self.vars == vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for name in self.vars.iter() {
            map.push(vars.iter().position(|v| v == name));
        }
        let mut out = Polynomial::zero(vars.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => bail!(Structural, "variable '{}' missing from target list", self.vars[i]),
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::Arithmetic("polynomial division by zero".into())),
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(&lm) else {
                bail!(Arithmetic, "polynomial division is not exact");
            };
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients, signed so that the leading coefficient of `self / c`
    /// is positive. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Zero};
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::zero();
        }
        let c = Rational::new(g, l).expect("lcm is nonzero");
        match self.leading_term() {
            Some((_, lc)) if lc.is_negative() => -c,
            _ => c,
        }
    }

    /// Substitute a rational function for variable `var`.
    pub fn substitute(&self, var: &str, value: &RationalFunction) -> Result<RationalFunction> {
        let i = index_of(&self.vars, var)?;
        if value.vars() != &self.vars {
            bail!(Structural, "substituted value uses a different variable list");
        }
        // group by the exponent of var: self = sum_k c_k * var^k
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            let k = exps[i];
            exps[i] = 0;
            by_power
                .entry(k)
                .or_insert_with(|| Polynomial::zero(self.vars.clone()))
                .add_term(Monomial::new(exps), c.clone());
        }
        let mut acc = RationalFunction::zero(self.vars.clone());
        for (k, coeff) in by_power {
            let term = RationalFunction::from(coeff).checked_mul(&value.pow(k))?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }
}

pub(crate) fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::Structural(alloc::format!("unknown variable '{name}'")))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Operators panic on mismatched variable lists; use the `checked_*`
/// methods when the lists are not known to agree.
impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial variable lists must match")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial variable lists must match")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial variable lists must match")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn vars2() -> VarList {
        var_list(&["X1", "X2"])
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::var_index(vars2(), i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let want = Polynomial::from_terms(vars2(), [(vec![2, 0], rat(1, 1)), (vec![0, 2], rat(-1, 1))]).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn additive_identity() {
        let p = &x(0) * &x(1);
        assert_eq!(poly_arithmetic(&p, &Polynomial::zero(vars2()), ArithOp::Add).unwrap(), p);
    }

    #[test]
    fn mismatched_vars_is_structural() {
        let other = Polynomial::var(var_list(&["X1"]), "X1").unwrap();
        assert!(matches!(poly_arithmetic(&x(0), &other, ArithOp::Mul), Err(Error::Structural(_))));
    }

    #[test]
    fn power_rule() {
        let vars = var_list(&["X1", "Y1"]);
        let p = Polynomial::from_terms(vars.clone(), [(vec![2, 1], rat(1, 1)), (vec![0, 1], rat(3, 1))]).unwrap();
        let d = p.partial("X1").unwrap();
        assert_eq!(d, Polynomial::from_terms(vars, [(vec![1, 1], rat(2, 1))]).unwrap());
        assert!(x(0).pow(3).partial("X2").unwrap().is_zero());
        assert!(x(0).partial("Z").is_err());
    }

    #[test]
    fn exact_and_interval_evaluation() {
        let p = &x(0) + &x(1).pow(2);
        let pt = PointAssignment::new()
            .with("X1", Enclosure::exact(rat(2, 1)))
            .unwrap()
            .with("X2", Enclosure::exact(rat(3, 1)))
            .unwrap();
        let v = p.eval(&pt).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.mid(), &rat(11, 1));
        let missing = PointAssignment::new().with("X1", Enclosure::one()).unwrap();
        assert!(matches!(p.eval(&missing), Err(Error::Structural(_))));
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1).scale(&rat(2, 1));
        let prod = &(&a * &b) * &a;
        assert_eq!(prod.div_exact(&b).unwrap(), &a * &a);
        assert!(x(0).div_exact(&x(1)).is_err());
    }

    #[test]
    fn content_normalizes() {
        let p = Polynomial::from_terms(vars2(), [(vec![1, 0], rat(-2, 3)), (vec![0, 0], rat(4, 9))]).unwrap();
        let c = p.content();
        assert_eq!(c, rat(-2, 9));
        let q = p.scale(&c.recip().unwrap());
        assert_eq!(q.leading_term().unwrap().1, &rat(3, 1));
    }

    #[test]
    fn with_vars_reembeds() {
        let big = var_list(&["Y1", "X2", "X1"]);
        let p = (&x(0) * &x(1).pow(2)).with_vars(&big).unwrap();
        assert_eq!(p.coefficient(&[0, 2, 1]), rat(1, 1));
        let small = var_list(&["X1"]);
        assert!(x(1).with_vars(&small).is_err());
    }
}
