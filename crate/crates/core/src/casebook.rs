//! Built-in worked examples: numeric values, identity residuals and
//! criterion runs, each checked against known digits or verdicts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::criterion::{check, check_partial, CheckOptions, Certificate, Conclusion};
use crate::error::{bail, Result};
use crate::exact::{rat, Enclosure, Rational};
use crate::job::{JobParts, JobSpec, Mode};
use crate::series::{
    exp, exp_residue, q_series, ramanujan, solve_modulus, two_e_over_pi, two_k_over_pi, zeta_fib, Family,
    Precision, Ramanujan,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RequiredInputs {
    None,
    /// Polynomials `f_1, f_2` may be supplied to run the criterion step.
    OptionalPolynomials(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseDescriptor {
    pub id: &'static str,
    pub title: &'static str,
    pub summary: &'static str,
    pub required_inputs: RequiredInputs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseStatus {
    Pass,
    Fail,
    NeedsInput,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::NeedsInput => "needs-input",
        }
    }
}

/// Known leading digits of a value. The digits are truncated, so the value
/// must lie in `[d, d + ulp]` for positive `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCheck {
    pub name: String,
    pub digits: String,
    pub ok: bool,
}

/// Interval `[d, d + ulp]` of values whose decimal expansion starts with
/// `digits` (mirrored for negative numbers).
pub fn golden_interval(digits: &str) -> Result<Enclosure> {
    let (d, ulp) = Rational::parse_decimal(digits)?;
    Ok(if digits.trim_start().starts_with('-') {
        Enclosure::from_endpoints(&d - &ulp, d)
    } else {
        Enclosure::from_endpoints(d.clone(), &d + &ulp)
    })
}

pub fn golden_matches(value: &Enclosure, digits: &str) -> Result<bool> {
    Ok(value.is_subset_of(&golden_interval(digits)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictCheck {
    pub name: String,
    pub certificate: Certificate,
    pub expected: Option<Conclusion>,
}

impl VerdictCheck {
    pub fn ok(&self) -> bool {
        self.expected.is_none_or(|c| c == self.certificate.verdict.conclusion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub id: String,
    pub precision_bits: u32,
    pub computed: Vec<(String, Enclosure)>,
    pub residuals: Vec<(String, Enclosure)>,
    pub goldens: Vec<GoldenCheck>,
    pub verdicts: Vec<VerdictCheck>,
    pub status: CaseStatus,
    pub notes: Vec<String>,
}

impl CaseReport {
    fn new(id: &str, prec: Precision) -> Self {
        CaseReport {
            id: id.into(),
            precision_bits: prec.bits(),
            computed: Vec::new(),
            residuals: Vec::new(),
            goldens: Vec::new(),
            verdicts: Vec::new(),
            status: CaseStatus::Pass,
            notes: Vec::new(),
        }
    }

    fn value(&mut self, name: &str, e: Enclosure) {
        self.computed.push((name.into(), e));
    }

    fn golden(&mut self, name: &str, digits: &str) -> Result<()> {
        let value = self
            .computed
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e.clone())
            .expect("golden refers to a computed value");
        let ok = golden_matches(&value, digits)?;
        self.goldens.push(GoldenCheck { name: name.into(), digits: digits.into(), ok });
        Ok(())
    }

    fn residual(&mut self, name: &str, e: Enclosure) {
        self.residuals.push((name.into(), e));
    }

    /// Every residual encloses zero, every golden matches, every verdict
    /// is as expected.
    pub fn checks_pass(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.contains_zero())
            && self.goldens.iter().all(|g| g.ok)
            && self.verdicts.iter().all(VerdictCheck::ok)
    }

    fn finish(mut self, needs_input: bool) -> Self {
        self.status = if !self.checks_pass() {
            CaseStatus::Fail
        } else if needs_input {
            CaseStatus::NeedsInput
        } else {
            CaseStatus::Pass
        };
        self
    }
}

/// Optional inputs for [`run_case`].
#[derive(Clone, Debug, Default)]
pub struct CaseInputs {
    /// Polynomial texts over `X1, X2, X3, Y1, Y2`.
    pub polynomials: Vec<String>,
    pub options: CheckOptions,
}

const CASES: &[CaseDescriptor] = &[
    CaseDescriptor {
        id: "fib-zeta-elliptic",
        title: "Fibonacci zeta values and complete elliptic integrals",
        summary: "zeta_Fib(4), zeta_Fib(8), the modulus k with K(k')/K(k) = (2/pi) ln(phi), 2K/pi and 2E/pi at k; \
                  with f1, f2 supplied, the partial criterion with n = 3, m = 2 over Q(X3)",
        required_inputs: RequiredInputs::OptionalPolynomials(2),
    },
    CaseDescriptor {
        id: "ramanujan-P-identity",
        title: "Ramanujan P at q^2 against A_1",
        summary: "residual P(q^2) - 1 + 24 A_1(q) at q = 1/2",
        required_inputs: RequiredInputs::None,
    },
    CaseDescriptor {
        id: "a7-a3-relation",
        title: "Algebraic relation A_7 = A_3 + 120 A_3^2",
        summary: "numeric residual at q = 1/3 and the polynomial-map criterion on (X2, X2 + 120 X2^2)",
        required_inputs: RequiredInputs::None,
    },
    CaseDescriptor {
        id: "theta-partition",
        title: "Residue-class exponential series",
        summary: "e_0(1) + e_1(1) + e_2(1) - exp(1) for residues modulo 3",
        required_inputs: RequiredInputs::None,
    },
    CaseDescriptor {
        id: "elementary-symmetric",
        title: "Elementary symmetric functions",
        summary: "polynomial-map criterion on (X1 + X2, X1 X2)",
        required_inputs: RequiredInputs::None,
    },
];

pub fn list_cases() -> &'static [CaseDescriptor] {
    CASES
}

pub fn find_case(id: &str) -> Result<&'static CaseDescriptor> {
    match CASES.iter().find(|c| c.id == id) {
        Some(c) => Ok(c),
        None => bail!(Validation, "unknown case '{id}'"),
    }
}

pub fn run_case(id: &str, prec: Precision, inputs: &CaseInputs) -> Result<CaseReport> {
    let case = find_case(id)?;
    if !inputs.polynomials.is_empty() && case.required_inputs == RequiredInputs::None {
        bail!(Validation, "case '{id}' takes no polynomial inputs");
    }
    match case.id {
        "fib-zeta-elliptic" => fib_zeta_elliptic(prec, inputs),
        "ramanujan-P-identity" => ramanujan_identity(prec),
        "a7-a3-relation" => a7_a3(prec, inputs),
        "theta-partition" => theta_partition(prec),
        "elementary-symmetric" => elementary_symmetric(prec, inputs),
        _ => unreachable!("catalog and dispatch agree"),
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn fib_zeta_elliptic(prec: Precision, inputs: &CaseInputs) -> Result<CaseReport> {
    let mut r = CaseReport::new("fib-zeta-elliptic", prec);
    r.value("Y1 = zeta_Fib(4)", zeta_fib(4, prec)?);
    r.value("Y2 = zeta_Fib(8)", zeta_fib(8, prec)?);
    // the derivatives of K and E near k = 1 are large, so solve more tightly
    let k = solve_modulus(Precision::new(prec.bits() + 16)?)?;
    r.value("X1 = 2K(k)/pi", two_k_over_pi(&k, prec)?);
    r.value("X2 = 2E(k)/pi", two_e_over_pi(&k, prec)?);
    r.value("X3 = k", k);
    for (name, digits) in [
        ("Y1 = zeta_Fib(4)", "2.076730850"),
        ("Y2 = zeta_Fib(8)", "2.004061286"),
        ("X1 = 2K(k)/pi", "3.264710703"),
        ("X2 = 2E(k)/pi", "0.637448893"),
        ("X3 = k", "0.999718575"),
    ] {
        r.golden(name, digits)?;
    }
    match inputs.polynomials.len() {
        0 => {
            r.notes.push(
                "criterion step needs input: supply f1 and f2 over X1, X2, X3, Y1, Y2 to run the partial criterion"
                    .into(),
            );
            Ok(r.finish(true))
        }
        2 => {
            let point = ["X1", "X2", "X3", "Y1", "Y2"]
                .iter()
                .zip([2, 3, 4, 0, 1])
                .map(|(n, i)| (n.to_string(), r.computed[i].1.clone()))
                .collect();
            let job = JobSpec::from_parts(JobParts {
                mode: Some(Mode::Partial),
                x_vars: names(&["X1", "X2", "X3"]),
                y_vars: names(&["Y1", "Y2"]),
                m: Some(2),
                equations: inputs.polynomials.clone(),
                point: Some(point),
                precision_bits: Some(prec.bits()),
                seed: inputs.options.seed,
                ..Default::default()
            })?;
            let cert = check_partial(&job)?;
            r.verdicts.push(VerdictCheck { name: "partial criterion, n = 3, m = 2".into(), certificate: cert, expected: None });
            Ok(r.finish(false))
        }
        n => bail!(Validation, "case 'fib-zeta-elliptic' takes 0 or 2 polynomials, got {n}"),
    }
}

fn ramanujan_identity(prec: Precision) -> Result<CaseReport> {
    let mut r = CaseReport::new("ramanujan-P-identity", prec);
    let q = rat(1, 2);
    let p = ramanujan(Ramanujan::P, &(&q * &q), prec)?;
    let a1 = q_series(Family::A, 1, &q, prec)?;
    let res = (&p - &a1.scale(&rat(-24, 1))).add_rational(&-Rational::one());
    r.value("P(1/4)", p);
    r.value("A_1(1/2)", a1);
    r.residual("P(q^2) - 1 + 24 A_1(q) at q = 1/2", res);
    Ok(r.finish(false))
}

fn map_job(eqs: &[&str], opts: &CheckOptions, prec: Precision) -> Result<JobSpec> {
    JobSpec::from_parts(JobParts {
        mode: Some(Mode::PolynomialMap),
        x_vars: names(&["X1", "X2"]),
        equations: names(eqs),
        seed: opts.seed,
        precision_bits: Some(prec.bits()),
        ..Default::default()
    })
}

fn a7_a3(prec: Precision, inputs: &CaseInputs) -> Result<CaseReport> {
    let mut r = CaseReport::new("a7-a3-relation", prec);
    let q = rat(1, 3);
    let a3 = q_series(Family::A, 3, &q, prec)?;
    let a7 = q_series(Family::A, 7, &q, prec)?;
    let res = &(&a7 - &a3) - &a3.square().scale(&rat(120, 1));
    r.value("A_3(1/3)", a3);
    r.value("A_7(1/3)", a7);
    r.residual("A_7 - A_3 - 120 A_3^2 at q = 1/3", res);
    let job = map_job(&["X2", "X2 + 120*X2^2"], &inputs.options, prec)?;
    let cert = check(&job, &inputs.options)?;
    r.verdicts.push(VerdictCheck {
        name: "polynomial map (X2, X2 + 120 X2^2)".into(),
        certificate: cert,
        expected: Some(Conclusion::Dependent),
    });
    Ok(r.finish(false))
}

fn theta_partition(prec: Precision) -> Result<CaseReport> {
    let mut r = CaseReport::new("theta-partition", prec);
    let z = Rational::one();
    let mut total = Enclosure::zero();
    for res in 0..3 {
        let e = exp_residue(3, res, &z, prec)?;
        total = &total + &e;
        r.value(&format!("e_{res}(1) mod 3"), e);
    }
    let e = exp(&z, prec)?;
    r.residual("e_0(1) + e_1(1) + e_2(1) - exp(1)", &total - &e);
    r.value("exp(1)", e);
    Ok(r.finish(false))
}

fn elementary_symmetric(prec: Precision, inputs: &CaseInputs) -> Result<CaseReport> {
    let mut r = CaseReport::new("elementary-symmetric", prec);
    let job = map_job(&["X1 + X2", "X1*X2"], &inputs.options, prec)?;
    let cert = check(&job, &inputs.options)?;
    r.verdicts.push(VerdictCheck {
        name: "polynomial map (X1 + X2, X1 X2)".into(),
        certificate: cert,
        expected: Some(Conclusion::Independent),
    });
    Ok(r.finish(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn catalog_ids() {
        let ids: Vec<&str> = list_cases().iter().map(|c| c.id).collect();
        for id in ["fib-zeta-elliptic", "ramanujan-P-identity", "a7-a3-relation", "theta-partition", "elementary-symmetric"] {
            assert!(ids.contains(&id));
        }
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(run_case("nope", p(64), &CaseInputs::default()).is_err());
    }

    #[test]
    fn golden_intervals() {
        let g = golden_interval("2.0767").unwrap();
        assert_eq!(g.lo(), rat(20767, 10000));
        assert_eq!(g.hi(), rat(20768, 10000));
        assert!(golden_matches(&Enclosure::exact(rat(207675, 100000)), "2.0767").unwrap());
        assert!(!golden_matches(&Enclosure::exact(rat(20766, 10000)), "2.0767").unwrap());
    }

    #[test]
    fn small_cases_pass() {
        for id in ["ramanujan-P-identity", "a7-a3-relation", "theta-partition", "elementary-symmetric"] {
            let r = run_case(id, p(64), &CaseInputs::default()).unwrap();
            assert_eq!(r.status, CaseStatus::Pass, "{id}: {r:?}");
        }
    }

    #[test]
    fn fib_case_without_polynomials() {
        let r = run_case("fib-zeta-elliptic", p(64), &CaseInputs::default()).unwrap();
        assert_eq!(r.status, CaseStatus::NeedsInput);
        assert!(r.goldens.iter().all(|g| g.ok), "{:?}", r.goldens);
        assert_eq!(r.computed.len(), 5);
    }

    #[test]
    fn fib_case_rejects_nonvanishing_polynomials() {
        let inputs = CaseInputs { polynomials: vec!["Y1 - X1".into(), "Y2 - X2".into()], ..Default::default() };
        let err = run_case("fib-zeta-elliptic", p(64), &inputs).unwrap_err();
        assert!(matches!(err, crate::Error::Validation(_)), "{err}");
        let one = CaseInputs { polynomials: vec!["Y1".into()], ..Default::default() };
        assert!(run_case("fib-zeta-elliptic", p(64), &one).is_err());
        assert!(run_case("theta-partition", p(64), &inputs).is_err());
    }
}
