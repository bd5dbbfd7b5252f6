#![allow(dead_code)]

use algind_core::exact::{rat, var_list, VarList};
use algind_core::{Polynomial, Rational};
use proptest::prelude::*;

pub fn names(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn vars(n: usize) -> VarList {
    var_list(&names(n, "X"))
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

/// Polynomials over `vars` with up to `max_terms` terms of total degree at
/// most `max_deg`.
pub fn arb_poly(vars: VarList, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    let term = (proptest::collection::vec(0..=max_deg, n), arb_rational()).prop_map(move |(mut e, c)| {
        // clamp the total degree
        while e.iter().sum::<u32>() > max_deg {
            let i = e.iter().position(|&d| d > 0).expect("positive degree");
            e[i] -= 1;
        }
        (e, c)
    });
    proptest::collection::vec(term, 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(vars.clone(), terms).expect("matching arity"))
}

pub fn arb_nonzero_poly(vars: VarList, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    arb_poly(vars, max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// `n x n` matrices of polynomials.
pub fn arb_poly_matrix(n: usize, nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    proptest::collection::vec(arb_poly(vars(nvars), max_deg, max_terms), n * n)
}
