//! Jacobian matrices and exact symbolic determinants.
//!
//! Entry `(j, i)` is the derivative of equation `j` with respect to variable
//! `i`: rows are equations, columns are variables.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Error, Result};
use crate::exact::polynomial::index_of;
use crate::exact::{Polynomial, Rational, RationalFunction, VarList};

/// Dense row-major matrix of rational functions over one variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DetMethod {
    Cofactor,
    Bareiss,
    /// Cofactor up to 3x3, Bareiss above.
    #[default]
    Auto,
}

/// Threshold for [`DetMethod::Auto`].
pub const COFACTOR_MAX: usize = 3;

impl SymbolicMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFunction>) -> Result<Self> {
        if entries.len() != rows * cols {
            bail!(Structural, "{} entries for a {rows}x{cols} matrix", entries.len());
        }
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| e.vars() != first.vars()) {
                bail!(Structural, "matrix entries use different variable lists");
            }
        }
        Ok(SymbolicMatrix { rows, cols, entries })
    }

    pub fn from_polynomials(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        SymbolicMatrix::new(rows, cols, entries.into_iter().map(RationalFunction::from).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &RationalFunction {
        &self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn vars(&self) -> Option<&VarList> {
        self.entries.first().map(|e| e.vars())
    }

    pub fn row(&self, r: usize) -> &[RationalFunction] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// True when every entry has a constant denominator.
    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(|e| e.is_polynomial())
    }

    /// Swap two columns.
    pub fn swap_cols(&self, a: usize, b: usize) -> SymbolicMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            out.entries.swap(r * self.cols + a, r * self.cols + b);
        }
        out
    }

    /// Evaluate every entry exactly at a rational point (values in variable order).
    pub fn eval_rational(&self, values: &[Rational]) -> Result<Vec<Rational>> {
        self.entries.iter().map(|e| e.eval_rational(values)).collect()
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn column_indices(vars: &VarList, x_vars: &[String]) -> Result<Vec<usize>> {
    x_vars.iter().map(|x| index_of(vars, x)).collect()
}

/// Jacobian of the map `X -> (R_1(X), ..., R_n(X))`.
pub fn jacobian_of_map(rhs: &[RationalFunction], x_vars: &[String]) -> Result<SymbolicMatrix> {
    if rhs.len() != x_vars.len() {
        bail!(Structural, "{} right-hand sides for {} variables", rhs.len(), x_vars.len());
    }
    let Some(first) = rhs.first() else {
        bail!(Structural, "empty map");
    };
    let vars = first.vars().clone();
    let cols = column_indices(&vars, x_vars)?;
    for r in rhs {
        if r.vars() != &vars {
            bail!(Structural, "right-hand sides use different variable lists");
        }
        for v in r.num().support().into_iter().chain(r.den().support()) {
            if !cols.contains(&v) {
                bail!(Structural, "right-hand side uses '{}', which is not an x variable", vars[v]);
            }
        }
    }
    let mut entries = Vec::with_capacity(rhs.len() * cols.len());
    for r in rhs {
        for &i in &cols {
            entries.push(r.partial_index(i));
        }
    }
    SymbolicMatrix::new(rhs.len(), cols.len(), entries)
}

/// Jacobian of `f_1, ..., f_k` with respect to `x_vars` only; the entries
/// still involve every variable of the equations.
pub fn jacobian_implicit(eqs: &[Polynomial], x_vars: &[String]) -> Result<SymbolicMatrix> {
    if eqs.len() != x_vars.len() {
        bail!(Structural, "{} equations for {} differentiation variables", eqs.len(), x_vars.len());
    }
    let Some(first) = eqs.first() else {
        bail!(Structural, "empty system");
    };
    let vars = first.vars().clone();
    if eqs.iter().any(|e| e.vars() != &vars) {
        bail!(Structural, "equations use different variable lists");
    }
    let cols = column_indices(&vars, x_vars)?;
    let mut entries = Vec::with_capacity(eqs.len() * cols.len());
    for f in eqs {
        for &i in &cols {
            entries.push(RationalFunction::from(f.partial_index(i)));
        }
    }
    SymbolicMatrix::new(eqs.len(), cols.len(), entries)
}

pub fn determinant(mat: &SymbolicMatrix, method: DetMethod) -> Result<RationalFunction> {
    if !mat.is_square() {
        bail!(Structural, "determinant of a non-square {}x{} matrix", mat.rows, mat.cols);
    }
    let Some(vars) = mat.vars().cloned() else {
        bail!(Structural, "determinant of an empty matrix");
    };
    let method = match method {
        DetMethod::Auto if mat.rows <= COFACTOR_MAX => DetMethod::Cofactor,
        DetMethod::Auto => DetMethod::Bareiss,
        m => m,
    };
    match method {
        DetMethod::Cofactor => {
            let idx: Vec<usize> = (0..mat.cols).collect();
            cofactor(mat, 0, &idx, &vars)
        }
        _ => bareiss_ratfn(mat),
    }
}

/// Laplace expansion along row `row` over the remaining columns `cols`.
fn cofactor(mat: &SymbolicMatrix, row: usize, cols: &[usize], vars: &VarList) -> Result<RationalFunction> {
    if cols.len() == 1 {
        return Ok(mat.get(row, cols[0]).clone());
    }
    let mut acc = RationalFunction::zero(vars.clone());
    for (k, &c) in cols.iter().enumerate() {
        let entry = mat.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(mat, row + 1, &rest, vars)?;
        let term = entry.checked_mul(&minor)?;
        acc = if k % 2 == 0 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
    }
    Ok(acc)
}

/// Clear each row by the product of its distinct denominators, run
/// fraction-free elimination, and divide back.
fn bareiss_ratfn(mat: &SymbolicMatrix) -> Result<RationalFunction> {
    let n = mat.rows;
    let vars = mat.vars().expect("non-empty").clone();
    let mut cleared = Vec::with_capacity(n * n);
    let mut row_dens = Polynomial::one(vars.clone());
    for r in 0..n {
        let row = mat.row(r);
        let mut distinct: Vec<&Polynomial> = Vec::new();
        for e in row {
            if !e.den().is_constant() && !distinct.contains(&e.den()) {
                distinct.push(e.den());
            }
        }
        for e in row {
            let mut p = e.num().clone();
            if e.den().is_constant() {
                // normalized constant denominators are exactly one
                for d in &distinct {
                    p = &p * d;
                }
            } else {
                for d in distinct.iter().filter(|d| **d != e.den()) {
                    p = &p * d;
                }
            }
            cleared.push(p);
        }
        for d in distinct {
            row_dens = &row_dens * d;
        }
    }
    let det = det_poly_bareiss(cleared, n)?;
    RationalFunction::new(det, row_dens)
}

/// Fraction-free Bareiss elimination on an `n x n` polynomial matrix.
///
/// Pivots are the first nonzero entry in the column; an all-zero pivot
/// column ends the computation with determinant zero.
pub fn det_poly_bareiss(mut m: Vec<Polynomial>, n: usize) -> Result<Polynomial> {
    if m.len() != n * n || n == 0 {
        bail!(Structural, "{} entries for a {n}x{n} matrix", m.len());
    }
    let vars = m[0].vars().clone();
    let mut negate = false;
    let mut prev = Polynomial::one(vars.clone());
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
            return Ok(Polynomial::zero(vars));
        };
        if p != k {
            for c in 0..n {
                m.swap(p * n + c, k * n + c);
            }
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i * n + j].checked_mul(&m[k * n + k])?;
                let b = m[i * n + k].checked_mul(&m[k * n + j])?;
                m[i * n + j] = a.checked_sub(&b)?.div_exact(&prev)?;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Laplace expansion on an `n x n` polynomial matrix.
pub fn det_poly_cofactor(m: &[Polynomial], n: usize) -> Result<Polynomial> {
    if m.len() != n * n || n == 0 {
        bail!(Structural, "{} entries for a {n}x{n} matrix", m.len());
    }
    fn go(m: &[Polynomial], n: usize, row: usize, cols: &[usize]) -> Polynomial {
        if cols.len() == 1 {
            return m[row * n + cols[0]].clone();
        }
        let mut acc = Polynomial::zero(m[0].vars().clone());
        for (k, &c) in cols.iter().enumerate() {
            let e = &m[row * n + c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = e * &go(m, n, row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(go(m, n, 0, &cols))
}

/// Exact determinant of a rational matrix by Gaussian elimination.
pub fn det_rational(mut m: Vec<Rational>, n: usize) -> Result<Rational> {
    if m.len() != n * n {
        bail!(Structural, "{} entries for a {n}x{n} matrix", m.len());
    }
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            for c in 0..n {
                m.swap(p * n + c, k * n + c);
            }
            det = -det;
        }
        let pivot = m[k * n + k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i * n + k].is_zero() {
                continue;
            }
            let f = &m[i * n + k] / &pivot;
            for j in k..n {
                let t = &f * &m[k * n + j];
                m[i * n + j] -= &t;
            }
        }
    }
    Ok(det)
}

/// Exact determinant of a rational matrix by Laplace expansion.
pub fn det_rational_cofactor(m: &[Rational], n: usize) -> Result<Rational> {
    if m.len() != n * n || n == 0 {
        bail!(Structural, "{} entries for a {n}x{n} matrix", m.len());
    }
    fn go(m: &[Rational], n: usize, row: usize, cols: &[usize]) -> Rational {
        if cols.len() == 1 {
            return m[row * n + cols[0]].clone();
        }
        let mut acc = Rational::zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = &m[row * n + c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = e * &go(m, n, row + 1, &rest);
            acc = if k % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(go(m, n, 0, &cols))
}

/// Quotient-rule numerators `N[j][i] = T_j' U_j - T_j U_j'` together with
/// the denominators `U_j`, so that `det(J) * prod(U_j^2) = det(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearedJacobian {
    n: usize,
    numerators: Vec<Polynomial>,
    denominators: Vec<Polynomial>,
}

impl ClearedJacobian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn numerator(&self, row: usize, col: usize) -> &Polynomial {
        &self.numerators[row * self.n + col]
    }

    pub fn denominators(&self) -> &[Polynomial] {
        &self.denominators
    }

    pub fn matrix(&self) -> SymbolicMatrix {
        SymbolicMatrix::from_polynomials(self.n, self.n, self.numerators.clone()).expect("square")
    }

    pub fn det_numerators(&self) -> Result<Polynomial> {
        det_poly_bareiss(self.numerators.clone(), self.n)
    }

    /// `prod_j U_j^2`.
    pub fn denominator_square_product(&self) -> Polynomial {
        let vars = self.numerators[0].vars().clone();
        self.denominators.iter().fold(Polynomial::one(vars), |acc, u| &(&acc * u) * u)
    }
}

pub fn cleared_jacobian(rhs: &[RationalFunction], x_vars: &[String]) -> Result<ClearedJacobian> {
    // validates arity and variable usage
    jacobian_of_map(rhs, x_vars)?;
    let vars = rhs[0].vars().clone();
    let cols = column_indices(&vars, x_vars)?;
    let n = rhs.len();
    let mut numerators = Vec::with_capacity(n * n);
    let mut denominators = Vec::with_capacity(n);
    for r in rhs {
        let (t, u) = (r.num(), r.den());
        if u.is_zero() {
            return Err(Error::Validation("identically zero denominator".into()));
        }
        for &i in &cols {
            let entry = &(&t.partial_index(i) * u) - &(t * &u.partial_index(i));
            numerators.push(entry);
        }
        denominators.push(u.clone());
    }
    Ok(ClearedJacobian { n, numerators, denominators })
}
