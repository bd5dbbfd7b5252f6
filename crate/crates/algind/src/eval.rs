//! Named series and constants for the `eval` subcommand.

use std::str::FromStr;

use algind_core::series::{
    agm, elliptic_e, elliptic_k, exp_fib_series, exp_residue, modulus_constant, modulus_ratio, q_series, ramanujan,
    solve_modulus, theta, two_e_over_pi, two_k_over_pi, zeta_fib, Elementary, ExpFibKind, Family, Precision,
    Ramanujan,
};
use algind_core::{Enclosure, Error, Rational, Result};

/// `(name, parameters)` for every series `eval` understands.
pub const SERIES: &[(&str, &str)] = &[
    ("pi", ""),
    ("ln", "x"),
    ("sqrt", "x"),
    ("exp", "x"),
    ("exp-residue", "q_mod r z"),
    ("zeta-fib", "2s"),
    ("exp-fib", "F|G s z, or Fab|Gab a b z"),
    ("q-series", "A|B|C order q"),
    ("ramanujan", "P|Q|R q"),
    ("theta", "q"),
    ("agm", "a b"),
    ("elliptic-k", "k"),
    ("elliptic-e", "k"),
    ("two-k-over-pi", "k"),
    ("two-e-over-pi", "k"),
    ("modulus-ratio", "k"),
    ("modulus-constant", ""),
    ("modulus", ""),
];

fn rational(s: &str) -> Result<Rational> {
    Rational::from_str(s)
}

fn integer(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Validation(format!("expected a non-negative integer, got '{s}'")))
}

fn arity(series: &str, params: &[String], n: usize) -> Result<()> {
    if params.len() != n {
        let usage = SERIES.iter().find(|(s, _)| *s == series).map_or("", |(_, u)| u);
        return Err(Error::Validation(format!(
            "'{series}' takes {n} parameter(s) ({usage}), got {}",
            params.len()
        )));
    }
    Ok(())
}

pub fn eval_series(series: &str, params: &[String], prec: Precision) -> Result<Enclosure> {
    let p = params;
    match series {
        "pi" | "ln" | "sqrt" | "exp" => {
            let kind = Elementary::parse(series)?;
            arity(series, p, usize::from(kind != Elementary::Pi))?;
            let arg = p.first().map(|s| rational(s)).transpose()?;
            algind_core::series::elementary(kind, arg.as_ref(), prec)
        }
        "exp-residue" => {
            arity(series, p, 3)?;
            exp_residue(integer(&p[0])?, integer(&p[1])?, &rational(&p[2])?, prec)
        }
        "zeta-fib" => {
            arity(series, p, 1)?;
            zeta_fib(integer(&p[0])?, prec)
        }
        "exp-fib" => {
            let kind = match p.first().map(String::as_str) {
                Some("F") | Some("G") => {
                    arity(series, p, 3)?;
                    let s = integer(&p[1])?;
                    if p[0] == "F" { ExpFibKind::F { s } } else { ExpFibKind::G { s } }
                }
                Some("Fab") | Some("Gab") => {
                    arity(series, p, 4)?;
                    let (a, b) = (integer(&p[1])?, integer(&p[2])?);
                    if p[0] == "Fab" { ExpFibKind::Fab { a, b } } else { ExpFibKind::Gab { a, b } }
                }
                _ => return Err(Error::Validation("exp-fib needs a kind: F, G, Fab or Gab".into())),
            };
            exp_fib_series(kind, &rational(p.last().expect("arity checked"))?, prec)
        }
        "q-series" => {
            arity(series, p, 3)?;
            q_series(Family::parse(&p[0])?, integer(&p[1])?, &rational(&p[2])?, prec)
        }
        "ramanujan" => {
            arity(series, p, 2)?;
            ramanujan(Ramanujan::parse(&p[0])?, &rational(&p[1])?, prec)
        }
        "theta" => {
            arity(series, p, 1)?;
            theta(&rational(&p[0])?, prec)
        }
        "agm" => {
            arity(series, p, 2)?;
            agm(&rational(&p[0])?, &rational(&p[1])?, prec)
        }
        "elliptic-k" | "elliptic-e" | "two-k-over-pi" | "two-e-over-pi" | "modulus-ratio" => {
            arity(series, p, 1)?;
            let k = rational(&p[0])?;
            match series {
                "elliptic-k" => elliptic_k(&k, prec),
                "elliptic-e" => elliptic_e(&k, prec),
                "two-k-over-pi" => two_k_over_pi(&Enclosure::exact(k), prec),
                "two-e-over-pi" => two_e_over_pi(&Enclosure::exact(k), prec),
                _ => modulus_ratio(&k, prec),
            }
        }
        "modulus-constant" => {
            arity(series, p, 0)?;
            modulus_constant(prec)
        }
        "modulus" => {
            arity(series, p, 0)?;
            solve_modulus(prec)
        }
        other => Err(Error::Validation(format!("unknown series '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn dispatches() {
        let prec = Precision::new(64).unwrap();
        let e = eval_series("sqrt", &args(&["9/4"]), prec).unwrap();
        assert_eq!(e, Enclosure::exact(Rational::from_str("3/2").unwrap()));
        let pi = eval_series("pi", &args(&[]), prec).unwrap();
        assert!(pi.intersects(&Enclosure::from_decimal("3.14159265358979323846").unwrap()));
        assert!(eval_series("zeta-fib", &args(&["4"]), prec).is_ok());
        assert!(eval_series("exp-fib", &args(&["Fab", "2", "1", "1/2"]), prec).is_ok());
        assert!(eval_series("q-series", &args(&["A", "3", "1/3"]), prec).is_ok());
        assert!(eval_series("ramanujan", &args(&["Q", "0.1"]), prec).is_ok());
    }

    #[test]
    fn rejects_bad_calls() {
        let prec = Precision::new(64).unwrap();
        assert!(matches!(eval_series("nope", &[], prec), Err(Error::Validation(_))));
        assert!(matches!(eval_series("ln", &[], prec), Err(Error::Validation(_))));
        assert!(matches!(eval_series("ln", &args(&["-1"]), prec), Err(Error::Domain(_))));
        assert!(matches!(eval_series("exp-fib", &args(&["H", "1"]), prec), Err(Error::Validation(_))));
        assert!(matches!(eval_series("theta", &args(&["x"]), prec), Err(Error::Validation(_))));
    }
}
