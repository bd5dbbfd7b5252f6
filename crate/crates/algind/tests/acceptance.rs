//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use algind::algind_core as core;
use core::casebook::golden_matches;
use core::criterion::{augment_partial, check, job_jacobian, CheckOptions, Conclusion};
use core::exact::{rat, var_list, Enclosure, Rational, RationalFunction, VarList};
use core::jacobian::{
    cleared_jacobian, det_poly_bareiss, det_poly_cofactor, det_rational, determinant, jacobian_of_map, DetMethod,
    SymbolicMatrix,
};
use core::job::JobParts;
use core::parse::{format_polynomial, parse_expression, parse_polynomial};
use core::series::*;
use core::zerotest::{det_zero_status, ZeroStatus};
use core::{Error, JobSpec, Mode, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREC_BITS: u32 = 96;
const MAX_RADIUS: &str = "0.000000001";
const RESIDUAL_RADIUS_LOG2: i64 = -60;
const ZETA_TIME: Duration = Duration::from_secs(1);
const PIPELINE_TIME: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prec() -> Precision {
    Precision::new(PREC_BITS).unwrap()
}

fn max_radius() -> Rational {
    Rational::parse_decimal(MAX_RADIUS).unwrap().0
}

fn golden(name: &str, e: &Enclosure, digits: &str) -> Result<(), String> {
    ensure(golden_matches(e, digits).unwrap(), || format!("{name} = {e} does not start {digits}"))?;
    ensure(*e.rad() <= max_radius(), || format!("{name} radius {} above {MAX_RADIUS}", e.rad().to_f64()))
}

fn names(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn rand_poly(rng: &mut ChaCha8Rng, vars: &VarList, max_deg: u32, max_terms: usize) -> Polynomial {
    let terms = (0..rng.gen_range(0..=max_terms)).map(|_| {
        let mut left = max_deg;
        let exps = vars
            .iter()
            .map(|_| {
                let d = rng.gen_range(0..=left);
                left -= d;
                d
            })
            .collect();
        (exps, rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
    });
    Polynomial::from_terms(vars.clone(), terms.collect::<Vec<_>>()).unwrap()
}

fn rand_nonzero(rng: &mut ChaCha8Rng, vars: &VarList, max_deg: u32, max_terms: usize) -> Polynomial {
    loop {
        let p = rand_poly(rng, vars, max_deg, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn zeta_fib_4() -> Outcome {
    let t = Instant::now();
    let e = zeta_fib(4, prec()).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    golden("zeta_Fib(4)", &e, "2.076730850")?;
    ensure(dt < ZETA_TIME, || format!("took {dt:?}"))?;
    Ok(format!("{e} in {dt:?}"))
}

fn zeta_fib_8() -> Outcome {
    let e = zeta_fib(8, prec()).map_err(|e| e.to_string())?;
    golden("zeta_Fib(8)", &e, "2.004061286")?;
    Ok(format!("{e}"))
}

fn modulus_pipeline() -> Outcome {
    let t = Instant::now();
    let k = solve_modulus(Precision::new(PREC_BITS + 16).unwrap()).map_err(|e| e.to_string())?;
    let x1 = two_k_over_pi(&k, prec()).map_err(|e| e.to_string())?;
    let x2 = two_e_over_pi(&k, prec()).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    golden("k", &k, "0.999718575")?;
    golden("2K/pi", &x1, "3.264710703")?;
    golden("2E/pi", &x2, "0.637448893")?;
    ensure(dt < PIPELINE_TIME, || format!("took {dt:?}"))?;
    Ok(format!("k in {k}, 2K/pi in {x1}, 2E/pi in {x2}, {dt:?}"))
}

fn relation_residuals() -> Outcome {
    let p = prec();
    let cap = Rational::pow2(RESIDUAL_RADIUS_LOG2);
    let mut residuals = Vec::new();
    for q in [rat(1, 3), rat(1, 2)] {
        let a3 = q_series(Family::A, 3, &q, p).map_err(|e| e.to_string())?;
        let a7 = q_series(Family::A, 7, &q, p).map_err(|e| e.to_string())?;
        residuals.push((format!("A7 relation at q = {q}"), &(&a7 - &a3) - &a3.square().scale(&rat(120, 1))));
    }
    let q = rat(1, 2);
    let pq = ramanujan(Ramanujan::P, &(&q * &q), p).map_err(|e| e.to_string())?;
    let a1 = q_series(Family::A, 1, &q, p).map_err(|e| e.to_string())?;
    residuals.push(("P(q^2) identity".into(), (&pq + &a1.scale(&rat(24, 1))).add_rational(&rat(-1, 1))));
    let z = Rational::one();
    let mut total = Enclosure::zero();
    for r in 0..3 {
        total = &total + &exp_residue(3, r, &z, p).map_err(|e| e.to_string())?;
    }
    residuals.push(("residue partition of exp(1)".into(), &total - &exp(&z, p).map_err(|e| e.to_string())?));
    for (name, r) in &residuals {
        ensure(r.contains_zero(), || format!("{name} excludes 0: {r:?}"))?;
        ensure(*r.rad() <= cap, || format!("{name} radius {} above 2^-60", r.rad().to_f64()))?;
    }
    Ok(format!("{} residuals enclose 0 with radius <= 2^-60", residuals.len()))
}

fn clearing_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let vars = var_list(&names(n, "X"));
        let map: Vec<RationalFunction> = (0..n)
            .map(|_| {
                let t = rand_poly(&mut rng, &vars, 3, 3);
                let u = rand_nonzero(&mut rng, &vars, 3, 2);
                RationalFunction::new(t, u).unwrap()
            })
            .collect();
        let xs = names(n, "X");
        let det_j = determinant(&jacobian_of_map(&map, &xs).unwrap(), DetMethod::Auto).unwrap();
        let c = cleared_jacobian(&map, &xs).unwrap();
        let lhs = det_j.checked_mul(&RationalFunction::from(c.denominator_square_product())).unwrap();
        let rhs = c.det_numerators().unwrap();
        // cross-multiplied: lhs.num = rhs * lhs.den
        ensure(*lhs.num() == &rhs * lhs.den(), || format!("case {case}: identity fails for {map:?}"))?;
    }
    Ok("100 random rational maps".into())
}

fn block_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..50 {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(1..n);
        let (xs, ys) = (names(n, "X"), names(m, "Y"));
        let all = var_list(&xs.iter().chain(&ys).collect::<Vec<_>>());
        let eqs: Vec<String> = (0..m).map(|_| format_polynomial(&rand_nonzero(&mut rng, &all, 2, 4))).collect();
        let point = xs.iter().chain(&ys).map(|v| (v.clone(), Enclosure::exact(Rational::one()))).collect();
        let job = JobSpec::from_parts(JobParts {
            mode: Some(Mode::Partial),
            x_vars: xs,
            y_vars: ys,
            m: Some(m),
            equations: eqs,
            point: Some(point),
            ..Default::default()
        })
        .map_err(|e| e.to_string())?;
        let aug = augment_partial(&job).unwrap();
        let (big_mat, big) = job_jacobian(&aug).unwrap();
        let (_, minor) = job_jacobian(&job).unwrap();
        ensure(big_mat.rows() == n, || "augmented matrix has the wrong size".into())?;
        let minor = minor.with_vars(big.vars()).unwrap();
        ensure(big.equiv(&minor).unwrap(), || format!("case {case}: {big} != {minor}"))?;
    }
    Ok("50 random augmented systems".into())
}

fn verdict_suite() -> Outcome {
    use Conclusion::*;
    let cases: [(Mode, [&str; 2], Conclusion); 5] = [
        (Mode::PolynomialMap, ["X1", "X2"], Independent),
        (Mode::PolynomialMap, ["X1 + X2", "X1*X2"], Independent),
        (Mode::PolynomialMap, ["X1 + X2", "(X1 + X2)^2"], Dependent),
        (Mode::PolynomialMap, ["X2", "X2 + 120*X2^2"], Dependent),
        (Mode::RationalMap, ["X1/X2", "X2/X1"], Inconclusive),
    ];
    let opts = CheckOptions { seed: Some(2024), ..Default::default() };
    for (mode, eqs, want) in cases {
        let job = JobSpec::from_parts(JobParts {
            mode: Some(mode),
            x_vars: names(2, "X"),
            equations: eqs.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        })
        .unwrap();
        let a = check(&job, &opts).map_err(|e| e.to_string())?;
        let b = check(&job, &opts).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{eqs:?}: two runs differ"))?;
        ensure(a.verdict.conclusion == want, || format!("{eqs:?}: got {:?}, want {want:?}", a.verdict.conclusion))?;
    }
    Ok("5 verdicts, deterministic".into())
}

fn det_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let vars = var_list(&names(3, "X"));
        let m: Vec<Polynomial> = (0..n * n).map(|_| rand_poly(&mut rng, &vars, 2, 3)).collect();
        let a = det_poly_cofactor(&m, n).unwrap();
        let b = det_poly_bareiss(m, n).unwrap();
        ensure(a == b, || format!("case {case}: cofactor {a} != Bareiss {b}"))?;
    }
    Ok("100 random matrices up to 4x4".into())
}

fn zero_test_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let vars = var_list(&names(3, "X"));
    let (mut witnesses, mut zeros) = (0, 0);
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let mut m: Vec<Polynomial> = (0..n * n).map(|_| rand_poly(&mut rng, &vars, 2, 3)).collect();
        if case % 3 == 0 && n > 1 {
            // make the last row a multiple of the first
            let c = rand_poly(&mut rng, &vars, 1, 2);
            for j in 0..n {
                m[(n - 1) * n + j] = &m[j] * &c;
            }
        }
        let mat = SymbolicMatrix::from_polynomials(n, n, m.clone()).unwrap();
        let seed = rng.gen();
        let r = det_zero_status(&mat, seed, 32).map_err(|e| e.to_string())?;
        ensure(r == det_zero_status(&mat, seed, 32).unwrap(), || format!("case {case}: not deterministic"))?;
        match r.status {
            ZeroStatus::NonzeroWitness => {
                witnesses += 1;
                let values: Vec<Rational> = r.witness.as_ref().unwrap().iter().map(|(_, v)| v.clone()).collect();
                let stored = r.witness_value.clone().unwrap();
                let det = det_rational(mat.eval_rational(&values).unwrap(), n).unwrap();
                ensure(!stored.is_zero() && det == stored, || format!("case {case}: witness re-evaluates to {det}"))?;
            }
            ZeroStatus::IdenticallyZero => {
                zeros += 1;
                let expanded = det_poly_bareiss(m, n).unwrap();
                ensure(expanded.is_empty(), || format!("case {case}: expansion {expanded} has terms"))?;
            }
        }
    }
    Ok(format!("{witnesses} witnesses, {zeros} identically zero"))
}

fn refinement() -> Outcome {
    let lo = Precision::new(64).unwrap();
    let hi = Precision::new(128).unwrap();
    let mut count = 0;
    let mut nests = |label: &str, f: &dyn Fn(Precision) -> core::Result<Enclosure>| -> Result<(), String> {
        let a = f(lo).map_err(|e| format!("{label}: {e}"))?;
        let b = f(hi).map_err(|e| format!("{label}: {e}"))?;
        let outer = a.widen(&lo.ulp(a.mid()));
        let inner = b.widen(&hi.ulp(b.mid()));
        count += 1;
        ensure(inner.is_subset_of(&outer), || format!("{label}: 128-bit result escapes the 64-bit one"))
    };
    let args = [rat(1, 3), rat(1, 2), rat(2, 5), rat(1, 10), rat(7, 10)];
    for x in &args {
        let big = x * &rat(9, 1);
        nests("ln", &|p| ln(&big, p))?;
        nests("exp", &|p| exp(&big, p))?;
        nests("sqrt", &|p| sqrt(&big, p))?;
        nests("exp residue", &|p| exp_residue(3, 2, &big, p))?;
        nests("exp fib", &|p| exp_fib_series(ExpFibKind::Fab { a: 2, b: 1 }, x, p))?;
        nests("lucas exp", &|p| exp_fib_series(ExpFibKind::G { s: 2 }, x, p))?;
        nests("A", &|p| q_series(Family::A, 5, x, p))?;
        nests("B", &|p| q_series(Family::B, 3, x, p))?;
        nests("C", &|p| q_series(Family::C, 1, x, p))?;
        nests("Ramanujan", &|p| ramanujan(Ramanujan::Q, x, p))?;
        nests("theta", &|p| theta(x, p))?;
        nests("K", &|p| elliptic_k(x, p))?;
        nests("E", &|p| elliptic_e(x, p))?;
        nests("AGM", &|p| agm(&Rational::one(), x, p))?;
    }
    for s in [2, 4, 6, 8, 12] {
        nests("zeta_Fib", &|p| zeta_fib(s, p))?;
    }
    nests("pi", &pi)?;
    Ok(format!("{count} nested pairs"))
}

fn parser() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let vars = var_list(&names(3, "X"));
    for case in 0..300 {
        let p = rand_poly(&mut rng, &vars, 5, 8);
        let text = format_polynomial(&p);
        let back = parse_polynomial(&text, &vars).map_err(|e| format!("case {case}: {text}: {e}"))?;
        ensure(back == p, || format!("case {case}: {text} reparsed differently"))?;
    }
    let alphabet = b"X123 +-*/^()0123456789\n";
    for i in 0..100_000u32 {
        let len = rng.gen_range(0..40);
        let bytes: Vec<u8> = if i % 2 == 0 {
            (0..len).map(|_| rng.gen()).collect()
        } else {
            (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
        };
        let text = String::from_utf8_lossy(&bytes);
        let outcome = catch_unwind(|| parse_expression(&text, &vars));
        match outcome {
            Err(_) => return Err(format!("panic on {text:?}")),
            Ok(Err(Error::Parse { line, column, .. })) if line >= 1 && column >= 1 => {}
            Ok(Err(Error::Arithmetic(_))) | Ok(Ok(_)) => {}
            Ok(Err(e)) => return Err(format!("unpositioned error on {text:?}: {e}")),
        }
    }
    Ok("300 round trips, 100000 fuzz inputs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("zeta_Fib(4) digits, radius and time", zeta_fib_4),
        ("zeta_Fib(8) digits and radius", zeta_fib_8),
        ("modulus pipeline digits, radii and time", modulus_pipeline),
        ("relation residuals", relation_residuals),
        ("cleared Jacobian identity", clearing_identity),
        ("partial block reduction", block_reduction),
        ("verdict suite", verdict_suite),
        ("cofactor and Bareiss agree", det_equivalence),
        ("zero test soundness", zero_test_soundness),
        ("enclosure refinement", refinement),
        ("parser round trip and fuzz", parser),
    ];
    let quiet = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    std::panic::set_hook(quiet);
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
