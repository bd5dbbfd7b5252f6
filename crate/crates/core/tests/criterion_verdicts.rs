use algind_core::criterion::{check, verify_certificate, CheckOptions, Conclusion, Evidence, Theorem};
use algind_core::exact::Enclosure;
use algind_core::job::JobParts;
use algind_core::{JobSpec, Mode};

fn map_job(mode: Mode, eqs: &[&str]) -> JobSpec {
    JobSpec::from_parts(JobParts {
        mode: Some(mode),
        x_vars: vec!["X1".into(), "X2".into()],
        equations: eqs.iter().map(|s| s.to_string()).collect(),
        ..Default::default()
    })
    .unwrap()
}

fn verdict(mode: Mode, eqs: &[&str]) -> (Conclusion, Theorem) {
    let job = map_job(mode, eqs);
    let opts = CheckOptions { seed: Some(11), ..Default::default() };
    let a = check(&job, &opts).unwrap();
    let b = check(&job, &opts).unwrap();
    assert_eq!(a, b, "not deterministic");
    assert!(verify_certificate(&job, &a).unwrap());
    (a.verdict.conclusion, a.verdict.theorem_used)
}

#[test]
fn verdict_suite() {
    use Conclusion::*;
    assert_eq!(verdict(Mode::PolynomialMap, &["X1", "X2"]), (Independent, Theorem::T2));
    assert_eq!(verdict(Mode::PolynomialMap, &["X1 + X2", "X1*X2"]), (Independent, Theorem::T2));
    assert_eq!(verdict(Mode::PolynomialMap, &["X1 + X2", "(X1 + X2)^2"]), (Dependent, Theorem::T2));
    assert_eq!(verdict(Mode::PolynomialMap, &["X2", "X2 + 120*X2^2"]), (Dependent, Theorem::T2));
    assert_eq!(verdict(Mode::RationalMap, &["X1/X2", "X2/X1"]), (Inconclusive, Theorem::T3));
    assert_eq!(verdict(Mode::RationalMap, &["X1/X2", "X1*X2"]), (Independent, Theorem::T3));
}

#[test]
fn implicit_verdicts() {
    let job = |eqs: &[&str], y: [&str; 2]| {
        JobSpec::from_parts(JobParts {
            mode: Some(Mode::Implicit),
            x_vars: vec!["X1".into(), "X2".into()],
            y_vars: vec!["Y1".into(), "Y2".into()],
            equations: eqs.iter().map(|s| s.to_string()).collect(),
            point: Some(vec![
                ("X1".into(), Enclosure::from_decimal("1.5").unwrap()),
                ("X2".into(), Enclosure::from_decimal("2.25").unwrap()),
                ("Y1".into(), Enclosure::from_decimal(y[0]).unwrap()),
                ("Y2".into(), Enclosure::from_decimal(y[1]).unwrap()),
            ]),
            ..Default::default()
        })
        .unwrap()
    };
    let j = job(&["Y1 - X1 - X2", "Y2 - X1*X2"], ["3.75", "3.375"]);
    let c = check(&j, &CheckOptions::default()).unwrap();
    assert_eq!(c.verdict.conclusion, Conclusion::Independent);
    assert_eq!(c.verdict.theorem_used, Theorem::T1);
    assert!(matches!(c.evidence, Evidence::Interval { .. }));
    assert!(verify_certificate(&j, &c).unwrap());
    // residual excludes zero at the point
    let bad = job(&["Y1 - X1 - X2", "Y2 - X1*X2"], ["9.75", "3.375"]);
    assert!(matches!(check(&bad, &CheckOptions::default()), Err(algind_core::Error::Validation(_))));
}
