//! Job files: JSON documents describing one criterion instance.

use std::collections::BTreeMap;
use std::str::FromStr;

use algind_core::job::JobParts;
use algind_core::{AssumptionRecord, Enclosure, Error, JobSpec, Mode, Rational};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    mode: Option<String>,
    #[serde(default)]
    x_vars: Vec<String>,
    #[serde(default)]
    y_vars: Vec<String>,
    m: Option<usize>,
    #[serde(default)]
    equations: Vec<String>,
    point: Option<BTreeMap<String, RawEnclosure>>,
    #[serde(default)]
    assumptions: Vec<RawAssumption>,
    seed: Option<u64>,
    precision_bits: Option<u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEnclosure {
    Decimal(String),
    Ball { mid: String, rad: String },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAssumption {
    Text(String),
    Record { text: String, source: String },
}

/// Source recorded for assumptions given as bare strings.
pub const USER_SOURCE: &str = "job file";

fn enclosure(name: &str, raw: RawEnclosure) -> algind_core::Result<Enclosure> {
    let field = |e: Error| Error::Validation(format!("field 'point.{name}': {e}"));
    match raw {
        RawEnclosure::Decimal(s) => Enclosure::from_decimal(&s).map_err(field),
        RawEnclosure::Ball { mid, rad } => {
            let mid = Rational::from_str(&mid).map_err(field)?;
            let rad = Rational::from_str(&rad).map_err(field)?;
            Enclosure::new(mid, rad).map_err(field)
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    use serde_json::error::Category;
    match e.classify() {
        Category::Syntax | Category::Eof => Error::Parse {
            line: e.line(),
            column: e.column(),
            token: String::new(),
            message: format!("malformed JSON: {}", strip_position(&e.to_string())),
        },
        _ => Error::Validation(format!("job file: {e}")),
    }
}

fn strip_position(msg: &str) -> &str {
    msg.rsplit_once(" at line ").map_or(msg, |(m, _)| m)
}

/// Parse and fully validate a job document.
pub fn parse_job(text: &str) -> algind_core::Result<JobSpec> {
    let raw: RawJob = serde_json::from_str(text).map_err(json_error)?;
    let mode = match raw.mode {
        Some(m) => Some(Mode::parse(&m)?),
        None => None,
    };
    let point = match raw.point {
        None => None,
        Some(map) => Some(
            map.into_iter()
                .map(|(name, e)| enclosure(&name, e).map(|e| (name, e)))
                .collect::<algind_core::Result<Vec<_>>>()?,
        ),
    };
    let assumptions = raw
        .assumptions
        .into_iter()
        .map(|a| match a {
            RawAssumption::Text(t) => AssumptionRecord::new(t, USER_SOURCE),
            RawAssumption::Record { text, source } => AssumptionRecord::new(text, source),
        })
        .collect::<algind_core::Result<Vec<_>>>()?;
    JobSpec::from_parts(JobParts {
        mode,
        x_vars: raw.x_vars,
        y_vars: raw.y_vars,
        m: raw.m,
        equations: raw.equations,
        point,
        assumptions,
        seed: raw.seed,
        precision_bits: raw.precision_bits,
    })
}
