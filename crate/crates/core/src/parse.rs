//! Expression language and canonical text forms.
//!
//! Grammar (whitespace is insignificant, multiplication must be explicit):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := signed (('*' | '/') signed)*
//! signed := '-'? factor
//! factor := base ('^' nat)?
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! A rational literal such as `3/2` is the quotient of two integers, so the
//! grammar above covers it. `^` binds tighter than unary minus: `-X1^2` is
//! `-(X1^2)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalFunction, VarList};
use crate::job::JobSpec;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;
/// Largest total degree of any intermediate result.
pub const MAX_DEGREE: u32 = 256;
/// Largest number of terms any intermediate result may reach.
pub const MAX_TERMS: usize = 20_000;
const MAX_DEPTH: usize = 128;

/// A parsed expression: a polynomial unless a non-constant divisor occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Poly(Polynomial),
    Rational(RationalFunction),
}

impl Expr {
    pub fn to_ratfn(&self) -> RationalFunction {
        match self {
            Expr::Poly(p) => RationalFunction::from(p.clone()),
            Expr::Rational(r) => r.clone(),
        }
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            Expr::Poly(p) => Some(p),
            Expr::Rational(_) => None,
        }
    }

    pub fn vars(&self) -> &VarList {
        match self {
            Expr::Poly(p) => p.vars(),
            Expr::Rational(r) => r.vars(),
        }
    }
}

impl core::fmt::Display for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&format_expr(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        let (tl, tc) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            out.push(Token { tok, text: c.to_string(), line: tl, column: tc });
            continue;
        }
        let mut end = start;
        if c.is_ascii_digit() {
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
                column += 1;
            }
            let s = &text[start..end];
            let n = BigInt::from_str(s).expect("ascii digits");
            out.push(Token { tok: Tok::Int(n), text: s.to_string(), line: tl, column: tc });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
                column += 1;
            }
            let s = &text[start..end];
            out.push(Token { tok: Tok::Ident(s.to_string()), text: s.to_string(), line: tl, column: tc });
            continue;
        }
        return Err(Error::Parse {
            line: tl,
            column: tc,
            token: c.to_string(),
            message: "unexpected character".into(),
        });
    }
    out.push(Token { tok: Tok::Eof, text: "<end of input>".into(), line, column });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a VarList,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, tok: &Token, message: impl Into<String>) -> Error {
        Error::Parse { line: tok.line, column: tok.column, token: tok.text.clone(), message: message.into() }
    }

    fn check_size(&self, at: &Token, r: &RationalFunction) -> Result<()> {
        let deg = r.num().total_degree().max(r.den().total_degree());
        if deg > MAX_DEGREE {
            return Err(self.error_at(at, format!("degree exceeds the limit of {MAX_DEGREE}")));
        }
        if r.num().len() > MAX_TERMS || r.den().len() > MAX_TERMS {
            return Err(self.error_at(at, format!("more than {MAX_TERMS} terms")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek().clone();
            return Err(self.error_at(&t, "expression nested too deeply"));
        }
        let mut acc = self.term()?;
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.checked_add(&rhs)?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.checked_sub(&rhs)?;
                }
                _ => break,
            }
            self.check_size(&op, &acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.signed()?;
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.signed()?;
                    if acc.num().len().saturating_mul(rhs.num().len()) > MAX_TERMS * 50 {
                        return Err(self.error_at(&op, "product too large"));
                    }
                    acc = acc.checked_mul(&rhs)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.signed()?;
                    if rhs.is_zero() {
                        return Err(self.error_at(&op, "division by zero"));
                    }
                    acc = acc.checked_div(&rhs)?;
                }
                _ => break,
            }
            self.check_size(&op, &acc)?;
        }
        Ok(acc)
    }

    fn signed(&mut self) -> Result<RationalFunction> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let t = self.bump();
        let exp = match &t.tok {
            Tok::Int(n) => match u32::try_from(n) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return Err(self.error_at(&t, format!("exponent exceeds the limit of {MAX_EXPONENT}"))),
            },
            _ => return Err(self.error_at(&t, "expected a non-negative integer exponent")),
        };
        let deg = base.num().total_degree().max(base.den().total_degree());
        if (deg as u64) * (exp as u64) > MAX_DEGREE as u64 {
            return Err(self.error_at(&caret, format!("degree exceeds the limit of {MAX_DEGREE}")));
        }
        if exp > 1 && estimated_power_terms(base.num().len().max(base.den().len()), exp) > MAX_TERMS {
            return Err(self.error_at(&caret, format!("more than {MAX_TERMS} terms")));
        }
        let r = base.pow(exp);
        self.check_size(&caret, &r)?;
        Ok(r)
    }

    fn base(&mut self) -> Result<RationalFunction> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok(RationalFunction::from(Polynomial::constant(
                self.vars.clone(),
                Rational::from_integer(n.clone()),
            ))),
            Tok::Ident(name) => match self.vars.iter().position(|v| v == name) {
                Some(i) => Ok(RationalFunction::from(Polynomial::var_index(self.vars.clone(), i))),
                None => Err(self.error_at(&t, format!("undeclared variable '{name}'"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error_at(&close, "expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error_at(&t, "expected a number, variable or '('")),
        }
    }
}

/// Upper bound on the number of terms of `p^e` for `p` with `t` terms.
fn estimated_power_terms(t: usize, e: u32) -> usize {
    // C(t - 1 + e, e), saturating
    if t <= 1 {
        return 1;
    }
    let mut acc: u128 = 1;
    for i in 1..=e as u128 {
        acc = acc * (t as u128 - 1 + i) / i;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Parse `text` over the declared variable list.
pub fn parse_expression(text: &str, vars: &VarList) -> Result<Expr> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, vars, depth: 0 };
    let value = p.expr()?;
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        return Err(p.error_at(&end, "unexpected token"));
    }
    if value.is_polynomial() {
        let c = value.den().constant_value().expect("constant denominator");
        Ok(Expr::Poly(value.num().scale(&c.recip()?)))
    } else {
        Ok(Expr::Rational(value))
    }
}

/// Parse and insist on a polynomial result.
pub fn parse_polynomial(text: &str, vars: &VarList) -> Result<Polynomial> {
    match parse_expression(text, vars)? {
        Expr::Poly(p) => Ok(p),
        Expr::Rational(_) => Err(Error::Validation(format!("'{text}' is not a polynomial"))),
    }
}

fn format_monomial(out: &mut String, vars: &[String], exps: &[u32]) {
    let mut first = true;
    for (name, &e) in vars.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Canonical text: descending graded-lex order, explicit `*` and `^`.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if m.degree() == 0 {
            let _ = write!(out, "{a}");
            continue;
        }
        if !a.is_one() {
            let _ = write!(out, "{a}*");
        }
        format_monomial(&mut out, p.vars(), m.exps());
    }
    out
}

pub fn format_ratfn(r: &RationalFunction) -> String {
    if r.is_polynomial() {
        let c = r.den().constant_value().expect("constant denominator");
        return format_polynomial(&r.num().scale(&c.recip().expect("nonzero")));
    }
    format!("({})/({})", format_polynomial(r.num()), format_polynomial(r.den()))
}

pub fn format_expr(e: &Expr) -> String {
    match e {
        Expr::Poly(p) => format_polynomial(p),
        Expr::Rational(r) => format_ratfn(r),
    }
}

/// Shorten long printed expressions for certificates.
pub fn truncate_print(s: &str, max_chars: usize) -> String {
    if s.chars().count() <= max_chars {
        return s.into();
    }
    let mut t: String = s.chars().take(max_chars).collect();
    let _ = write!(t, " ... ({} chars)", s.chars().count());
    t
}

pub(crate) fn json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn json_string_array(out: &mut String, items: &[String]) {
    out.push('[');
    for (i, s) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        json_string(out, s);
    }
    out.push(']');
}

/// Canonical JSON for a job: fixed key order, canonical expressions and
/// exact `mid`/`rad` enclosures. The content digest is taken over this text.
pub fn format_job(job: &JobSpec) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"mode\": \"{}\",", job.mode.as_str());
    out.push_str("  \"x_vars\": ");
    json_string_array(&mut out, &job.x_vars);
    out.push_str(",\n  \"y_vars\": ");
    json_string_array(&mut out, &job.y_vars);
    out.push_str(",\n");
    if let Some(m) = job.m {
        let _ = writeln!(out, "  \"m\": {m},");
    }
    out.push_str("  \"equations\": [");
    for (i, e) in job.equations.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        json_string(&mut out, &format_expr(e));
    }
    out.push_str(if job.equations.is_empty() { "]" } else { "\n  ]" });
    if let Some(point) = &job.point {
        out.push_str(",\n  \"point\": {");
        for (i, (name, enc)) in point.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            json_string(&mut out, name);
            out.push_str(": {\"mid\": ");
            json_string(&mut out, &enc.mid().to_string());
            out.push_str(", \"rad\": ");
            json_string(&mut out, &enc.rad().to_string());
            out.push('}');
        }
        out.push_str(if point.is_empty() { "}" } else { "\n  }" });
    }
    out.push_str(",\n  \"assumptions\": [");
    for (i, a) in job.assumptions.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str("{\"text\": ");
        json_string(&mut out, &a.text);
        out.push_str(", \"source\": ");
        json_string(&mut out, &a.source);
        out.push('}');
    }
    out.push_str(if job.assumptions.is_empty() { "]" } else { "\n  ]" });
    if let Some(seed) = job.seed {
        let _ = write!(out, ",\n  \"seed\": {seed}");
    }
    let _ = write!(out, ",\n  \"precision_bits\": {}\n}}\n", job.precision_bits);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, var_list};

    fn vars() -> VarList {
        var_list(&["X1", "X2", "Y1"])
    }

    #[test]
    fn reads_terms_directly() {
        let p = parse_polynomial("X1^2*Y1 - 3/2*X2", &vars()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&[2, 0, 1]), rat(1, 1));
        assert_eq!(p.coefficient(&[0, 1, 0]), rat(-3, 2));
    }

    #[test]
    fn positioned_errors() {
        match parse_expression("X1 + * X2", &vars()) {
            Err(Error::Parse { line, column, token, .. }) => {
                assert_eq!((line, column), (1, 6));
                assert_eq!(token, "*");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_expression("X1 +\n  Z9", &vars()) {
            Err(Error::Parse { line, column, message, .. }) => {
                assert_eq!((line, column), (2, 3));
                assert!(message.contains("Z9"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_expression("X1 X2", &vars()).is_err());
        assert!(parse_expression("X1/(X2-X2)", &vars()).is_err());
        assert!(parse_expression("(X1+1", &vars()).is_err());
        assert!(parse_expression("X1^999", &vars()).is_err());
        assert!(parse_expression("", &vars()).is_err());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let p = parse_polynomial("-X1^2", &vars()).unwrap();
        assert_eq!(p.coefficient(&[2, 0, 0]), rat(-1, 1));
        let q = parse_polynomial("2*-X1 - -X2", &vars()).unwrap();
        assert_eq!(format_polynomial(&q), "-2*X1 + X2");
    }

    #[test]
    fn division_by_variable_gives_rational_function() {
        match parse_expression("X1/X2", &vars()).unwrap() {
            Expr::Rational(r) => assert_eq!(format_ratfn(&r), "(X1)/(X2)"),
            Expr::Poly(_) => panic!("expected a rational function"),
        }
        assert!(matches!(parse_expression("X1/4", &vars()).unwrap(), Expr::Poly(_)));
    }

    #[test]
    fn formatting_order() {
        let v = var_list(&["X1", "X2"]);
        let p = Polynomial::from_terms(v.clone(), [(alloc::vec![1, 1], rat(1, 1)), (alloc::vec![2, 0], rat(1, 1))]).unwrap();
        assert_eq!(format_polynomial(&p), "X1^2 + X1*X2");
        assert_eq!(format_polynomial(&Polynomial::zero(v.clone())), "0");
        let q = parse_polynomial("-1/3 + X2 - 5*X1^3", &v).unwrap();
        assert_eq!(format_polynomial(&q), "-5*X1^3 + X2 - 1/3");
    }
}
