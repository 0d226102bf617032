//! JSON form of verification reports.

use serde_json::{json, Map, Value};

use qdilog_core::verify::{Param, VerificationReport};
use qdilog_core::{DilogSpec, C64};

use crate::config::is_domain;
use crate::parse::format_complex;

/// Collects the names of non-finite fields while building a record.
#[derive(Default)]
struct Finite(Vec<&'static str>);

impl Finite {
    fn real(&mut self, field: &'static str, x: f64) -> Value {
        if x.is_finite() {
            json!(x)
        } else {
            self.0.push(field);
            Value::Null
        }
    }

    fn complex(&mut self, field: &'static str, z: C64) -> Value {
        if z.re.is_finite() && z.im.is_finite() {
            json!(format_complex(z))
        } else {
            self.0.push(field);
            Value::Null
        }
    }
}

pub fn dilog_json(d: &DilogSpec) -> Value {
    match *d {
        DilogSpec::Faddeev { b } => json!({ "family": "faddeev", "b": format_complex(b) }),
        DilogSpec::CyclicFaddeev { n, theta } => json!({ "family": "cyclic", "n": n, "theta": theta }),
        DilogSpec::Tropical => json!({ "family": "tropical" }),
        DilogSpec::Dgg { q } => json!({ "family": "dgg", "q": q }),
    }
}

/// One report as a JSON object. Non-finite numbers become `null`, are
/// listed under `nonfinite`, and force an error record when none is set.
pub fn report_json(r: &VerificationReport) -> Value {
    let mut nf = Finite::default();
    let mut point = Map::new();
    for (label, p) in &r.point {
        let v = match *p {
            Param::Complex(z) => nf.complex("point", z),
            Param::Int(i) => json!(i),
            Param::Real(x) => nf.real("point", x),
        };
        point.insert(label.clone(), v);
    }
    let mut o = Map::new();
    o.insert("identity".into(), json!(r.identity));
    o.insert("group".into(), r.group.map_or(Value::Null, |g| json!(format!("{g:?}"))));
    o.insert("dilog".into(), r.dilog.as_ref().map_or(Value::Null, dilog_json));
    o.insert("point".into(), Value::Object(point));
    o.insert("lhs".into(), nf.complex("lhs", r.lhs));
    o.insert("rhs".into(), nf.complex("rhs", r.rhs));
    o.insert("abs_residual".into(), nf.real("abs_residual", r.abs_residual));
    o.insert("rel_residual".into(), nf.real("rel_residual", r.rel_residual));
    o.insert("tolerance".into(), nf.real("tolerance", r.tolerance));
    o.insert("nodes".into(), json!(r.nodes));
    o.insert("passed".into(), json!(r.passed));
    o.insert("advisory".into(), json!(r.advisory));
    o.insert("skipped".into(), json!(r.skipped));
    let error = match &r.error {
        Some(e) => json!({ "kind": e.kind(), "message": e.to_string() }),
        None if !nf.0.is_empty() => json!({ "kind": "NonFinite", "message": "non-finite value in report" }),
        None => Value::Null,
    };
    o.insert("error".into(), error);
    o.insert("note".into(), r.note.as_ref().map_or(Value::Null, |n| json!(n)));
    if !nf.0.is_empty() {
        nf.0.dedup();
        o.insert("nonfinite".into(), json!(nf.0));
    }
    Value::Object(o)
}

/// Counts over a report list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub reports: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub advisory: usize,
    pub domain_errors: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary { reports: reports.len(), ..Default::default() };
        for r in reports {
            if r.advisory {
                s.advisory += 1;
            } else if r.skipped {
                s.skipped += 1;
            } else if r.passed && r.error.is_none() {
                s.passed += 1;
            } else {
                s.failed += 1;
                if r.error.as_ref().is_some_and(is_domain) {
                    s.domain_errors += 1;
                }
            }
        }
        s
    }

    /// 0 when every gating report passed, 2 when a failure was a domain
    /// error, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else if self.domain_errors > 0 {
            2
        } else {
            1
        }
    }

    pub fn json(&self) -> Value {
        json!({ "summary": {
            "reports": self.reports,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "advisory": self.advisory,
            "domain_errors": self.domain_errors,
            "all_passed": self.failed == 0,
        }})
    }
}

/// Single-line human form of a report.
pub fn report_human(r: &VerificationReport) -> String {
    let status = if r.skipped {
        "SKIP"
    } else if r.advisory {
        if r.passed {
            "ADVISORY-OK"
        } else {
            "ADVISORY"
        }
    } else if r.passed && r.error.is_none() {
        "PASS"
    } else {
        "FAIL"
    };
    let who = r.dilog.as_ref().map_or(String::new(), |d| format!(" [{}]", d.name()));
    let mut s = format!(
        "{status:<11} {}{who}  abs {:.3e}  rel {:.3e}  tol {:.1e}",
        r.identity, r.abs_residual, r.rel_residual, r.tolerance
    );
    if let Some(e) = &r.error {
        s.push_str(&format!("  error {}: {e}", e.kind()));
    } else if let Some(n) = &r.note {
        s.push_str(&format!("  ({n})"));
    }
    s
}
