//! Decision procedures turning a job into a verdict certificate.
//!
//! Map modes decide whether the Jacobian determinant vanishes as a function.
//! Implicit and partial modes evaluate the determinant with interval
//! arithmetic at the supplied point. Independence of the base numbers
//! `x_1, ..., x_n` is never checked; it is recorded as an assumption.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Error, Result};
use crate::exact::{Enclosure, PointAssignment, Polynomial, Rational, RationalFunction};
use crate::jacobian::{
    cleared_jacobian, det_poly_bareiss, det_poly_cofactor, det_rational_cofactor, determinant,
    jacobian_implicit, jacobian_of_map, DetMethod, SymbolicMatrix,
};
use crate::job::{AssumptionRecord, JobSpec, Mode};
use crate::parse::{format_polynomial, parse_polynomial, truncate_print, Expr};
use crate::zerotest::{det_zero_status, Effort, ZeroStatus, DEFAULT_BUDGET};

/// Longest determinant print stored in a certificate.
pub const DET_PRINT_LIMIT: usize = 400;

/// An enclosure that contains zero but is narrower than this triggers one
/// retry at doubled precision.
pub fn retry_width() -> Rational {
    Rational::pow2(-16)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conclusion {
    Independent,
    Dependent,
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::Independent => "Independent",
            Conclusion::Dependent => "Dependent",
            Conclusion::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the four criteria produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Implicit polynomial system, point evaluation.
    T1,
    /// Polynomial map, determinant as a function (necessary and sufficient).
    T2,
    /// Rational map, cleared determinant as a function.
    T3,
    /// Partial system, independence over an extension field.
    T4,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T4 => "T4",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub over_field: String,
    pub theorem_used: Theorem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Exact nonzero value of the determinant at a rational point.
    Witness {
        determinant: String,
        point: Vec<(String, Rational)>,
        value: Rational,
        effort: Effort,
    },
    /// Interval value of the determinant at the job's point. `widths` lists
    /// the width reached at each precision tried.
    Interval {
        determinant: String,
        enclosure: Enclosure,
        precision_bits: u32,
        widths: Vec<(u32, Rational)>,
    },
    /// Full symbolic expansion gave the zero polynomial.
    ZeroExpansion { effort: Effort },
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Witness { .. } => "witness",
            Evidence::Interval { .. } => "interval",
            Evidence::ZeroExpansion { .. } => "zero_expansion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub assumptions: Vec<AssumptionRecord>,
    pub inputs_digest: String,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Overrides the job's own seed.
    pub seed: Option<u64>,
    pub budget: u32,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { seed: None, budget: DEFAULT_BUDGET }
    }
}

impl CheckOptions {
    fn seed_for(&self, job: &JobSpec) -> u64 {
        self.seed.or(job.seed).unwrap_or(0)
    }
}

/// The standing hypothesis every verdict is conditional on.
pub fn base_assumption(job: &JobSpec) -> AssumptionRecord {
    AssumptionRecord {
        text: format!("{} algebraically independent over Q", job.x_vars.join(", ")),
        source: "hypothesis of the criterion".into(),
    }
}

fn assumptions_for(job: &JobSpec) -> Vec<AssumptionRecord> {
    let base = base_assumption(job);
    let mut out = Vec::with_capacity(job.assumptions.len() + 1);
    out.push(base.clone());
    out.extend(job.assumptions.iter().filter(|a| **a != base).cloned());
    out
}

fn expect_mode(job: &JobSpec, mode: Mode) -> Result<()> {
    if job.mode != mode {
        bail!(Validation, "job has mode '{}', expected '{}'", job.mode.as_str(), mode.as_str());
    }
    Ok(())
}

fn polynomials(job: &JobSpec) -> Result<Vec<Polynomial>> {
    job.equations
        .iter()
        .enumerate()
        .map(|(j, e)| {
            e.as_poly()
                .cloned()
                .ok_or_else(|| Error::Validation(format!("field 'equations[{j}]': expected a polynomial")))
        })
        .collect()
}

pub fn check(job: &JobSpec, opts: &CheckOptions) -> Result<Certificate> {
    match job.mode {
        Mode::PolynomialMap => check_polynomial_map(job, opts),
        Mode::RationalMap => check_rational_map(job, opts),
        Mode::Implicit => check_implicit(job),
        Mode::Partial => check_partial(job),
    }
}

fn map_certificate(
    job: &JobSpec,
    opts: &CheckOptions,
    mat: &SymbolicMatrix,
    theorem: Theorem,
    on_zero: Conclusion,
) -> Result<Certificate> {
    let seed = opts.seed_for(job);
    let z = det_zero_status(mat, seed, opts.budget)?;
    let (conclusion, evidence) = match z.status {
        ZeroStatus::NonzeroWitness => {
            let det = determinant(mat, DetMethod::Auto)?;
            (
                Conclusion::Independent,
                Evidence::Witness {
                    determinant: truncate_print(&det.to_string(), DET_PRINT_LIMIT),
                    point: z.witness.expect("witness present"),
                    value: z.witness_value.expect("witness value present"),
                    effort: z.effort,
                },
            )
        }
        ZeroStatus::IdenticallyZero => (on_zero, Evidence::ZeroExpansion { effort: z.effort }),
    };
    Ok(Certificate {
        verdict: Verdict { conclusion, over_field: "Q".into(), theorem_used: theorem },
        evidence,
        assumptions: assumptions_for(job),
        inputs_digest: job.digest(),
        seed,
    })
}

/// Polynomial map: nonzero determinant gives independence, an identically
/// zero one gives dependence.
pub fn check_polynomial_map(job: &JobSpec, opts: &CheckOptions) -> Result<Certificate> {
    expect_mode(job, Mode::PolynomialMap)?;
    let rhs: Vec<RationalFunction> = polynomials(job)?.into_iter().map(RationalFunction::from).collect();
    let mat = jacobian_of_map(&rhs, &job.x_vars)?;
    map_certificate(job, opts, &mat, Theorem::T2, Conclusion::Dependent)
}

/// Rational map: tests the cleared numerator matrix. Maps whose entries are
/// all polynomials are handled exactly as polynomial maps.
pub fn check_rational_map(job: &JobSpec, opts: &CheckOptions) -> Result<Certificate> {
    expect_mode(job, Mode::RationalMap)?;
    let rhs: Vec<RationalFunction> = job.equations.iter().map(Expr::to_ratfn).collect();
    if rhs.iter().all(RationalFunction::is_polynomial) {
        let mat = jacobian_of_map(&rhs, &job.x_vars)?;
        return map_certificate(job, opts, &mat, Theorem::T2, Conclusion::Dependent);
    }
    let cleared = cleared_jacobian(&rhs, &job.x_vars)?;
    map_certificate(job, opts, &cleared.matrix(), Theorem::T3, Conclusion::Inconclusive)
}

fn point_of(job: &JobSpec) -> Result<&PointAssignment> {
    job.point
        .as_ref()
        .ok_or_else(|| Error::Validation(format!("point required in {} mode", job.mode.as_str())))
}

fn check_residuals(eqs: &[Polynomial], point: &PointAssignment, prec: u32) -> Result<()> {
    for (j, f) in eqs.iter().enumerate() {
        let r = f.eval_prec(point, prec)?;
        if r.excludes_zero() {
            bail!(
                Validation,
                "equations not satisfied at point: equation {j} evaluates to {r}, which excludes 0"
            );
        }
    }
    Ok(())
}

/// Symbolic determinant of the equations' Jacobian in `diff_vars`.
fn implicit_determinant(eqs: &[Polynomial], diff_vars: &[String], method: DetMethod) -> Result<Polynomial> {
    let det = determinant(&jacobian_implicit(eqs, diff_vars)?, method)?;
    Ok(det.as_polynomial().expect("polynomial entries give a polynomial determinant").clone())
}

fn interval_certificate(
    job: &JobSpec,
    eqs: &[Polynomial],
    diff_vars: &[String],
    theorem: Theorem,
    over_field: String,
) -> Result<Certificate> {
    let point = point_of(job)?;
    check_residuals(eqs, point, job.precision_bits)?;
    let det = implicit_determinant(eqs, diff_vars, DetMethod::Auto)?;
    let mut prec = job.precision_bits;
    let mut enc = det.eval_prec(point, prec)?;
    let mut widths = alloc::vec![(prec, enc.width())];
    if enc.contains_zero() && enc.width() < retry_width() {
        prec = prec.saturating_mul(2);
        enc = det.eval_prec(point, prec)?;
        widths.push((prec, enc.width()));
    }
    let conclusion = if enc.excludes_zero() { Conclusion::Independent } else { Conclusion::Inconclusive };
    Ok(Certificate {
        verdict: Verdict { conclusion, over_field, theorem_used: theorem },
        evidence: Evidence::Interval {
            determinant: truncate_print(&format_polynomial(&det), DET_PRINT_LIMIT),
            enclosure: enc,
            precision_bits: prec,
            widths,
        },
        assumptions: assumptions_for(job),
        inputs_digest: job.digest(),
        seed: job.seed.unwrap_or(0),
    })
}

/// Implicit system evaluated at a point.
pub fn check_implicit(job: &JobSpec) -> Result<Certificate> {
    expect_mode(job, Mode::Implicit)?;
    let eqs = polynomials(job)?;
    interval_certificate(job, &eqs, &job.x_vars, Theorem::T1, "Q".into())
}

/// Field description for independence over the remaining base numbers.
pub fn extension_field(rest: &[String]) -> String {
    format!("Q({})", rest.join(", "))
}

/// Partial system: the leading `m x m` minor evaluated at the point.
pub fn check_partial(job: &JobSpec) -> Result<Certificate> {
    expect_mode(job, Mode::Partial)?;
    let m = job.m.ok_or_else(|| Error::Validation("field 'm': required in partial mode".into()))?;
    if m == 0 || m >= job.n() {
        bail!(Validation, "field 'm': need 1 <= m < n, got m = {m}, n = {}", job.n());
    }
    let eqs = polynomials(job)?;
    interval_certificate(job, &eqs, &job.x_vars[..m], Theorem::T4, extension_field(&job.x_vars[m..]))
}

/// Turn a partial job into an implicit one by adding `X_j - Y_j = 0` for
/// each `j > m`, binding the new `Y_j` to the value of `X_j`.
pub fn augment_partial(job: &JobSpec) -> Result<JobSpec> {
    expect_mode(job, Mode::Partial)?;
    let m = job.m.expect("validated partial job");
    let point = point_of(job)?;
    let mut y_vars = job.y_vars.clone();
    let mut extra = Vec::new();
    for x in &job.x_vars[m..] {
        let mut name = format!("{x}_y");
        while job.x_vars.contains(&name) || y_vars.contains(&name) {
            name.push('_');
        }
        y_vars.push(name.clone());
        extra.push((x.clone(), name));
    }
    let mut aug = JobSpec {
        mode: Mode::Implicit,
        x_vars: job.x_vars.clone(),
        y_vars,
        m: None,
        equations: Vec::new(),
        point: None,
        assumptions: job.assumptions.clone(),
        seed: job.seed,
        precision_bits: job.precision_bits,
    };
    let vars = aug.equation_vars();
    for e in &job.equations {
        let p = e.as_poly().ok_or_else(|| Error::Validation("expected polynomial equations".into()))?;
        aug.equations.push(Expr::Poly(p.with_vars(&vars)?));
    }
    let mut p = point.clone();
    for (x, y) in &extra {
        aug.equations.push(Expr::Poly(parse_polynomial(&format!("{x} - {y}"), &vars)?));
        p.bind(y.clone(), point.require(x)?.clone())?;
    }
    aug.point = Some(p);
    Ok(aug)
}

/// Re-check a certificate against its job along a different computation
/// route: cofactor determinants instead of elimination.
pub fn verify_certificate(job: &JobSpec, cert: &Certificate) -> Result<bool> {
    if cert.inputs_digest != job.digest() {
        return Ok(false);
    }
    match (&cert.evidence, cert.verdict.conclusion) {
        (Evidence::Witness { point, value, .. }, Conclusion::Independent) => {
            if value.is_zero() {
                return Ok(false);
            }
            let mat = verification_matrix(job)?;
            let vars = mat.vars().expect("non-empty");
            let mut values = Vec::with_capacity(vars.len());
            for v in vars.iter() {
                match point.iter().find(|(name, _)| name == v) {
                    Some((_, x)) => values.push(x.clone()),
                    None => return Ok(false),
                }
            }
            let entries = mat.eval_rational(&values)?;
            Ok(det_rational_cofactor(&entries, mat.rows())? == *value)
        }
        (Evidence::ZeroExpansion { .. }, Conclusion::Dependent | Conclusion::Inconclusive) => {
            let mat = verification_matrix(job)?;
            let n = mat.rows();
            let polys: Vec<Polynomial> = mat
                .entries()
                .iter()
                .map(|e| e.as_polynomial().cloned().ok_or_else(|| Error::Internal("non-polynomial entry".into())))
                .collect::<Result<_>>()?;
            // elimination here, since the zero test used cofactor expansion for small n
            let det = if n <= crate::jacobian::COFACTOR_MAX {
                det_poly_bareiss(polys, n)?
            } else {
                det_poly_cofactor(&polys, n)?
            };
            Ok(det.is_zero())
        }
        (Evidence::Interval { enclosure, precision_bits, .. }, c) => {
            let point = point_of(job)?;
            let eqs = polynomials(job)?;
            let diff: &[String] = match job.mode {
                Mode::Partial => &job.x_vars[..job.m.expect("partial job")],
                _ => &job.x_vars,
            };
            let det = implicit_determinant(&eqs, diff, DetMethod::Bareiss)?;
            let again = det.eval_prec(point, *precision_bits)?;
            let excludes = again.excludes_zero() && again == *enclosure;
            Ok(match c {
                Conclusion::Independent => excludes,
                Conclusion::Inconclusive => again.contains_zero(),
                Conclusion::Dependent => false,
            })
        }
        _ => Ok(false),
    }
}

/// The matrix whose determinant a map-mode certificate speaks about.
fn verification_matrix(job: &JobSpec) -> Result<SymbolicMatrix> {
    let rhs: Vec<RationalFunction> = job.equations.iter().map(Expr::to_ratfn).collect();
    match job.mode {
        Mode::PolynomialMap => jacobian_of_map(&rhs, &job.x_vars),
        Mode::RationalMap if rhs.iter().all(RationalFunction::is_polynomial) => jacobian_of_map(&rhs, &job.x_vars),
        Mode::RationalMap => Ok(cleared_jacobian(&rhs, &job.x_vars)?.matrix()),
        _ => bail!(Validation, "witness evidence only applies to map modes"),
    }
}

/// Jacobian matrix and determinant the given job is decided on.
pub fn job_jacobian(job: &JobSpec) -> Result<(SymbolicMatrix, RationalFunction)> {
    let mat = match job.mode {
        Mode::PolynomialMap | Mode::RationalMap => {
            let rhs: Vec<RationalFunction> = job.equations.iter().map(Expr::to_ratfn).collect();
            jacobian_of_map(&rhs, &job.x_vars)?
        }
        Mode::Implicit => jacobian_implicit(&polynomials(job)?, &job.x_vars)?,
        Mode::Partial => {
            let m = job.m.expect("partial job");
            jacobian_implicit(&polynomials(job)?, &job.x_vars[..m])?
        }
    };
    let det = determinant(&mat, DetMethod::Auto)?;
    Ok((mat, det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::job::JobParts;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn map_job(mode: Mode, xs: &[&str], eqs: &[&str]) -> JobSpec {
        JobSpec::from_parts(JobParts { mode: Some(mode), x_vars: s(xs), equations: s(eqs), ..Default::default() })
            .unwrap()
    }

    fn enc(mid: &str, rad: &str) -> Enclosure {
        Enclosure::new(mid.parse().unwrap(), rad.parse().unwrap()).unwrap()
    }

    fn implicit_job(xs: &[&str], ys: &[&str], eqs: &[&str], point: &[(&str, Enclosure)]) -> JobSpec {
        JobSpec::from_parts(JobParts {
            mode: Some(Mode::Implicit),
            x_vars: s(xs),
            y_vars: s(ys),
            equations: s(eqs),
            point: Some(point.iter().map(|(n, e)| (n.to_string(), e.clone())).collect()),
            ..Default::default()
        })
        .unwrap()
    }

    fn verdict(c: &Certificate) -> (Conclusion, Theorem) {
        (c.verdict.conclusion, c.verdict.theorem_used)
    }

    #[test]
    fn polynomial_map_examples() {
        let o = CheckOptions::default();
        let cases = [
            (&["X1", "X2"][..], &["X1", "X2"][..], Conclusion::Independent),
            (&["X1", "X2"], &["X1+X2", "X1*X2"], Conclusion::Independent),
            (&["X1", "X2"], &["X1+X2", "(X1+X2)^2"], Conclusion::Dependent),
            (&["X1", "X2"], &["X2", "X2+120*X2^2"], Conclusion::Dependent),
        ];
        for (xs, eqs, want) in cases {
            let job = map_job(Mode::PolynomialMap, xs, eqs);
            let c = check(&job, &o).unwrap();
            assert_eq!(verdict(&c), (want, Theorem::T2), "{eqs:?}");
            assert!(verify_certificate(&job, &c).unwrap());
        }
    }

    #[test]
    fn rational_map_examples() {
        let o = CheckOptions::default();
        let job = map_job(Mode::RationalMap, &["X1"], &["1/X1"]);
        let c = check(&job, &o).unwrap();
        assert_eq!(verdict(&c), (Conclusion::Independent, Theorem::T3));
        assert!(verify_certificate(&job, &c).unwrap());
        let job = map_job(Mode::RationalMap, &["X1", "X2"], &["X1/X2", "X2/X1"]);
        let c = check(&job, &o).unwrap();
        assert_eq!(verdict(&c), (Conclusion::Inconclusive, Theorem::T3));
        assert!(verify_certificate(&job, &c).unwrap());
        let job = map_job(Mode::RationalMap, &["X1", "X2"], &["X1+X2", "(X1+X2)^2"]);
        assert_eq!(verdict(&check(&job, &o).unwrap()), (Conclusion::Dependent, Theorem::T2));
    }

    #[test]
    fn implicit_examples() {
        let job = implicit_job(&["X1"], &["Y1"], &["Y1 - X1"], &[("X1", enc("2", "0")), ("Y1", enc("2", "0"))]);
        let c = check_implicit(&job).unwrap();
        assert_eq!(verdict(&c), (Conclusion::Independent, Theorem::T1));
        let Evidence::Interval { enclosure, .. } = &c.evidence else { panic!() };
        assert_eq!(enclosure, &Enclosure::exact(rat(-1, 1)));
        assert!(verify_certificate(&job, &c).unwrap());

        let eqs = ["Y1 - X1 - X2", "Y2 - X1*X2"];
        let job = implicit_job(
            &["X1", "X2"],
            &["Y1", "Y2"],
            &eqs,
            &[("X1", enc("3", "0.1")), ("X2", enc("1", "0.1")), ("Y1", enc("4", "0.2")), ("Y2", enc("3", "0.4"))],
        );
        let c = check_implicit(&job).unwrap();
        assert_eq!(c.verdict.conclusion, Conclusion::Independent);
        let Evidence::Interval { enclosure, .. } = &c.evidence else { panic!() };
        assert!(enclosure.is_subset_of(&Enclosure::from_endpoints(rat(18, 10), rat(22, 10))));

        let job = implicit_job(
            &["X1", "X2"],
            &["Y1", "Y2"],
            &eqs,
            &[("X1", enc("2", "0.5")), ("X2", enc("2", "0.5")), ("Y1", enc("4", "1")), ("Y2", enc("4", "2"))],
        );
        let c = check_implicit(&job).unwrap();
        assert_eq!(c.verdict.conclusion, Conclusion::Inconclusive);
        assert!(verify_certificate(&job, &c).unwrap());
    }

    #[test]
    fn residual_violation() {
        let job = implicit_job(&["X1"], &["Y1"], &["Y1 - X1"], &[("X1", enc("2", "0")), ("Y1", enc("3", "0"))]);
        let err = check_implicit(&job).unwrap_err();
        assert!(err.to_string().contains("equations not satisfied at point"));
    }

    #[test]
    fn exact_zero_retries_once() {
        let job = implicit_job(&["X1"], &["Y1"], &["Y1 - X1^2"], &[("X1", enc("0", "0")), ("Y1", enc("0", "0"))]);
        let c = check_implicit(&job).unwrap();
        assert_eq!(c.verdict.conclusion, Conclusion::Inconclusive);
        let Evidence::Interval { widths, .. } = &c.evidence else { panic!() };
        assert_eq!(widths.len(), 2);
        assert_eq!(widths[1].0, 256);
    }

    fn partial_job(xs: &[&str], ys: &[&str], eqs: &[&str], point: &[(&str, Enclosure)]) -> JobSpec {
        JobSpec::from_parts(JobParts {
            mode: Some(Mode::Partial),
            x_vars: s(xs),
            y_vars: s(ys),
            m: Some(ys.len()),
            equations: s(eqs),
            point: Some(point.iter().map(|(n, e)| (n.to_string(), e.clone())).collect()),
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn partial_examples() {
        let pt = [("X1", enc("3", "0")), ("X2", enc("5", "0")), ("Y1", enc("15", "0"))];
        let job = partial_job(&["X1", "X2"], &["Y1"], &["Y1 - X1*X2"], &pt);
        let c = check(&job, &CheckOptions::default()).unwrap();
        assert_eq!(verdict(&c), (Conclusion::Independent, Theorem::T4));
        assert_eq!(c.verdict.over_field, "Q(X2)");
        assert!(verify_certificate(&job, &c).unwrap());

        let pt = [("X1", enc("3", "0")), ("X2", enc("5", "0")), ("Y1", enc("5", "0"))];
        let job = partial_job(&["X1", "X2"], &["Y1"], &["Y1 - X2"], &pt);
        assert_eq!(check(&job, &CheckOptions::default()).unwrap().verdict.conclusion, Conclusion::Inconclusive);
    }

    #[test]
    fn block_reduction_matches() {
        let pt = [("X1", enc("3", "1/8")), ("X2", enc("5", "1/16")), ("Y1", enc("15", "2"))];
        let job = partial_job(&["X1", "X2"], &["Y1"], &["Y1 - X1*X2 - X1^2"], &[pt[0].clone(), pt[1].clone(), ("Y1", enc("24", "4"))]);
        let aug = augment_partial(&job).unwrap();
        let a = check_partial(&job).unwrap();
        let b = check_implicit(&aug).unwrap();
        let (Evidence::Interval { enclosure: ea, .. }, Evidence::Interval { enclosure: eb, .. }) = (&a.evidence, &b.evidence)
        else {
            panic!()
        };
        assert_eq!(ea, eb);
    }

    #[test]
    fn mode_mismatch_and_tampering() {
        let job = map_job(Mode::PolynomialMap, &["X1", "X2"], &["X1+X2", "X1*X2"]);
        assert!(check_implicit(&job).is_err());
        let mut c = check(&job, &CheckOptions::default()).unwrap();
        if let Evidence::Witness { value, .. } = &mut c.evidence {
            *value = &*value + &Rational::one();
        }
        assert!(!verify_certificate(&job, &c).unwrap());
    }

    #[test]
    fn seed_override_and_assumptions() {
        let mut job = map_job(Mode::PolynomialMap, &["X1", "X2"], &["X1+X2", "X1*X2"]);
        job.seed = Some(5);
        let c = check(&job, &CheckOptions::default()).unwrap();
        assert_eq!(c.seed, 5);
        let c = check(&job, &CheckOptions { seed: Some(9), budget: 4 }).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.assumptions[0].text, "X1, X2 algebraically independent over Q");
    }
}
