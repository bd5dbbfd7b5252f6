//! Machine-readable (JSON) and human-readable renderings of results.

use std::fmt::Write;

use algind_core::casebook::{CaseDescriptor, CaseReport, RequiredInputs};
use algind_core::criterion::{Certificate, Evidence};
use algind_core::jacobian::SymbolicMatrix;
use algind_core::zerotest::Effort;
use algind_core::{Enclosure, Error, RationalFunction};
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal digits that resolve `bits` binary digits.
pub fn decimal_digits(bits: u32) -> usize {
    (bits as usize * 30103).div_ceil(100_000) + 1
}

pub fn enclosure_json(e: &Enclosure, bits: u32) -> Value {
    let (lo, hi) = e.to_decimal_bounds(decimal_digits(bits));
    json!({ "mid": e.mid().to_string(), "rad": e.rad().to_string(), "lo": lo, "hi": hi })
}

pub fn enclosure_text(e: &Enclosure, bits: u32) -> String {
    let (lo, hi) = e.to_decimal_bounds(decimal_digits(bits));
    format!("[{lo}, {hi}]")
}

fn effort_json(e: &Effort) -> Value {
    json!({ "samples": e.samples, "redraws": e.redraws, "symbolic_used": e.symbolic_used })
}

fn evidence_json(ev: &Evidence) -> Value {
    match ev {
        Evidence::Witness { determinant, point, value, effort } => {
            let pt: Map<String, Value> = point.iter().map(|(n, v)| (n.clone(), Value::from(v.to_string()))).collect();
            json!({
                "kind": ev.kind(),
                "determinant": determinant,
                "point": pt,
                "value": value.to_string(),
                "effort": effort_json(effort),
            })
        }
        Evidence::Interval { determinant, enclosure, precision_bits, widths } => json!({
            "kind": ev.kind(),
            "determinant": determinant,
            "enclosure": enclosure_json(enclosure, *precision_bits),
            "precision_bits": precision_bits,
            "widths": widths
                .iter()
                .map(|(b, w)| json!({ "precision_bits": b, "width": w.to_string() }))
                .collect::<Vec<_>>(),
        }),
        Evidence::ZeroExpansion { effort } => json!({ "kind": ev.kind(), "effort": effort_json(effort) }),
    }
}

/// Report fields for a certificate, without version or timing.
fn certificate_fields(cert: &Certificate, precision_bits: u32) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("job_digest".into(), cert.inputs_digest.clone().into());
    m.insert("verdict".into(), cert.verdict.conclusion.as_str().into());
    m.insert("over_field".into(), cert.verdict.over_field.clone().into());
    m.insert("theorem".into(), cert.verdict.theorem_used.as_str().into());
    m.insert("evidence".into(), evidence_json(&cert.evidence));
    m.insert(
        "assumptions".into(),
        cert.assumptions.iter().map(|a| json!({ "text": a.text, "source": a.source })).collect(),
    );
    m.insert("seed".into(), cert.seed.into());
    m.insert("precision_bits".into(), precision_bits.into());
    m
}

pub fn check_json(cert: &Certificate, precision_bits: u32, timing_ms: u64) -> Value {
    let mut m = certificate_fields(cert, precision_bits);
    m.insert("version".into(), VERSION.into());
    m.insert("timing_ms".into(), timing_ms.into());
    Value::Object(m)
}

pub fn check_text(cert: &Certificate, precision_bits: u32) -> String {
    let mut s = String::new();
    let v = &cert.verdict;
    let _ = writeln!(s, "verdict: {} over {} ({})", v.conclusion.as_str(), v.over_field, v.theorem_used.as_str());
    let _ = writeln!(s, "evidence: {}", cert.evidence.kind());
    match &cert.evidence {
        Evidence::Witness { determinant, point, value, effort } => {
            let _ = writeln!(s, "  determinant: {determinant}");
            let pt: Vec<String> = point.iter().map(|(n, v)| format!("{n} = {v}")).collect();
            let _ = writeln!(s, "  point: {}", pt.join(", "));
            let _ = writeln!(s, "  value: {value}");
            effort_text(&mut s, effort);
        }
        Evidence::Interval { determinant, enclosure, precision_bits, widths } => {
            let _ = writeln!(s, "  determinant: {determinant}");
            let _ = writeln!(s, "  enclosure: {} at {precision_bits} bits", enclosure_text(enclosure, *precision_bits));
            for (b, w) in widths {
                let _ = writeln!(s, "  width at {b} bits: {}", w.to_decimal_ceil(decimal_digits(*b)));
            }
        }
        Evidence::ZeroExpansion { effort } => effort_text(&mut s, effort),
    }
    s.push_str("assumptions:\n");
    for a in &cert.assumptions {
        let _ = writeln!(s, "  - {} ({})", a.text, a.source);
    }
    let _ = writeln!(s, "seed: {}", cert.seed);
    let _ = writeln!(s, "precision_bits: {precision_bits}");
    let _ = writeln!(s, "job_digest: {}", cert.inputs_digest);
    s
}

fn effort_text(s: &mut String, e: &Effort) {
    let _ = writeln!(
        s,
        "  samples: {}, redraws: {}, symbolic expansion: {}",
        e.samples,
        e.redraws,
        if e.symbolic_used { "yes" } else { "no" }
    );
}

pub fn jacobian_json(digest: &str, mat: &SymbolicMatrix, det: &RationalFunction, timing_ms: u64) -> Value {
    let rows: Vec<Value> =
        (0..mat.rows()).map(|r| mat.row(r).iter().map(|e| Value::from(e.to_string())).collect()).collect();
    json!({
        "version": VERSION,
        "job_digest": digest,
        "matrix": rows,
        "determinant": det.to_string(),
        "timing_ms": timing_ms,
    })
}

pub fn jacobian_text(mat: &SymbolicMatrix, det: &RationalFunction) -> String {
    let mut s = String::from("jacobian:\n");
    for r in 0..mat.rows() {
        let row: Vec<String> = mat.row(r).iter().map(|e| e.to_string()).collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    let _ = writeln!(s, "determinant: {det}");
    s
}

pub fn eval_json(series: &str, params: &[String], bits: u32, value: &Enclosure, timing_ms: u64) -> Value {
    json!({
        "version": VERSION,
        "series": series,
        "params": params,
        "precision_bits": bits,
        "value": enclosure_json(value, bits),
        "timing_ms": timing_ms,
    })
}

pub fn eval_text(series: &str, params: &[String], bits: u32, value: &Enclosure) -> String {
    let args = if params.is_empty() { String::new() } else { format!("({})", params.join(", ")) };
    format!("{series}{args} in {}\nprecision_bits: {bits}\n", enclosure_text(value, bits))
}

fn required_str(r: RequiredInputs) -> String {
    match r {
        RequiredInputs::None => "none".into(),
        RequiredInputs::OptionalPolynomials(n) => format!("optional: {n} polynomial files"),
    }
}

pub fn case_list_json(cases: &[CaseDescriptor]) -> Value {
    let list: Vec<Value> = cases
        .iter()
        .map(|c| {
            json!({ "id": c.id, "title": c.title, "summary": c.summary, "required_inputs": required_str(c.required_inputs) })
        })
        .collect();
    json!({ "version": VERSION, "cases": list })
}

pub fn case_list_text(cases: &[CaseDescriptor]) -> String {
    let mut s = String::new();
    for c in cases {
        let _ = writeln!(s, "{:<22} {}", c.id, c.title);
    }
    s
}

pub fn case_json(r: &CaseReport, seed: u64, timing_ms: u64) -> Value {
    let bits = r.precision_bits;
    let named = |v: &[(String, Enclosure)]| -> Vec<Value> {
        v.iter().map(|(n, e)| json!({ "name": n, "value": enclosure_json(e, bits) })).collect()
    };
    json!({
        "version": VERSION,
        "case": r.id,
        "status": r.status.as_str(),
        "precision_bits": bits,
        "computed": named(&r.computed),
        "residuals": named(&r.residuals),
        "goldens": r.goldens.iter().map(|g| json!({ "name": g.name, "digits": g.digits, "ok": g.ok })).collect::<Vec<_>>(),
        "verdicts": r.verdicts.iter().map(|v| json!({
            "name": v.name,
            "expected": v.expected.map(|c| c.as_str()),
            "ok": v.ok(),
            "certificate": Value::Object(certificate_fields(&v.certificate, bits)),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
        "seed": seed,
        "timing_ms": timing_ms,
    })
}

pub fn case_text(r: &CaseReport) -> String {
    let bits = r.precision_bits;
    let mut s = String::new();
    let _ = writeln!(s, "case: {}", r.id);
    let _ = writeln!(s, "status: {}", r.status.as_str());
    let _ = writeln!(s, "precision_bits: {bits}");
    for (n, e) in &r.computed {
        let _ = writeln!(s, "  {n} in {}", enclosure_text(e, bits));
    }
    for (n, e) in &r.residuals {
        let mark = if e.contains_zero() { "encloses 0" } else { "EXCLUDES 0" };
        let _ = writeln!(s, "  residual {n} in {} ({mark})", enclosure_text(e, bits));
    }
    for g in &r.goldens {
        let _ = writeln!(s, "  golden {} starts {}: {}", g.name, g.digits, if g.ok { "ok" } else { "MISMATCH" });
    }
    for v in &r.verdicts {
        let got = &v.certificate.verdict;
        let _ = write!(s, "  {}: {} over {} ({})", v.name, got.conclusion.as_str(), got.over_field, got.theorem_used.as_str());
        match v.expected {
            Some(c) if v.ok() => s.push_str(&format!(", expected {}\n", c.as_str())),
            Some(c) => s.push_str(&format!(", EXPECTED {}\n", c.as_str())),
            None => s.push('\n'),
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Structural(_) => "structural",
        Error::Parse { .. } => "parse",
        Error::Validation(_) => "validation",
        Error::Arithmetic(_) => "arithmetic",
        Error::Domain(_) => "domain",
        Error::Precision(_) => "precision",
        Error::Undecided(_) => "undecided",
        Error::Internal(_) => "internal",
    }
}

pub fn error_json(e: &Error, exit_code: i32) -> Value {
    let mut err = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Parse { line, column, token, .. } = e {
        err["line"] = (*line).into();
        err["column"] = (*column).into();
        err["token"] = token.clone().into();
    }
    json!({ "version": VERSION, "error": err, "exit_code": exit_code })
}
