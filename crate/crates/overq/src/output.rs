//! Text and JSON renderings of verification reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::value::RawValue;

use overq_core::{BigRational, Status, VerificationReport};

/// Exact decimal form of a rational: an integer, or `num/den`.
pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A JSON number token for an arbitrarily large integer, or a quoted
/// `num/den` string for a non-integer.
pub fn json_number(r: &BigRational) -> Box<RawValue> {
    let text = if r.is_integer() {
        r.to_integer().to_string()
    } else {
        serde_json::to_string(&rational_string(r)).expect("strings serialise")
    };
    RawValue::from_string(text).expect("decimal integers are valid JSON")
}

#[derive(Serialize)]
struct ReportJson<'a> {
    order: i64,
    checks: Vec<CheckJson<'a>>,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    params: &'a BTreeMap<String, i64>,
    status: &'a str,
    first_mismatch: Option<MismatchJson>,
    message: &'a str,
}

#[derive(Serialize)]
struct MismatchJson {
    exponent: i64,
    lhs: String,
    rhs: String,
}

pub fn report_json(order: i64, reports: &[VerificationReport]) -> String {
    let doc = ReportJson {
        order,
        checks: reports
            .iter()
            .map(|r| CheckJson {
                name: r.check.name.as_str(),
                params: &r.check.params,
                status: r.status.as_str(),
                first_mismatch: r.first_mismatch.as_ref().map(|m| MismatchJson {
                    exponent: m.exponent,
                    lhs: rational_string(&m.lhs),
                    rhs: rational_string(&m.rhs),
                }),
                message: &r.message,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
    s.push('\n');
    s
}

pub fn report_text(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = write!(s, "{:<5} {}: {}", r.status.as_str(), r.check, r.message);
        if let Some(m) = &r.first_mismatch {
            let _ = write!(
                s,
                " (first mismatch at q^{}: {} vs {})",
                m.exponent,
                rational_string(&m.lhs),
                rational_string(&m.rhs)
            );
        }
        s.push('\n');
    }
    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    let _ = writeln!(
        s,
        "{} checks: {} pass, {} fail, {} error",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Error)
    );
    s
}
