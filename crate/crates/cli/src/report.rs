//! The report document shared by every subcommand, and its JSON and CSV
//! renderings.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use padic_periods::arith::{Fp2, Fp2Context, PadicElement, ResidualClass, Q};
use padic_periods::qseries::{Cyclo, QExpansion};

pub const TOOL: &str = "padic-periods";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A disagreement with published data that is reported, not failed.
    Finding,
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
            Status::Info => "info",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub values: Value,
}

impl CheckResult {
    pub fn new(check: impl Into<String>, status: Status, values: Value) -> Self {
        CheckResult {
            check: check.into(),
            status,
            values,
        }
    }
}

/// `(p, n)` with `F_{p^2} = F_p[x]/(x^2 - n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub n: u64,
}

impl From<Fp2Context> for FieldInfo {
    fn from(ctx: Fp2Context) -> Self {
        FieldInfo {
            p: ctx.p(),
            n: ctx.nonresidue(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub params: Map<String, Value>,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            meta: Meta {
                tool: TOOL,
                version: VERSION,
                command: command.to_string(),
                field: None,
                timing_ms: None,
            },
            params: Map::new(),
            results: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per top-level value of each result:
    /// `check,status,key,value`, with non-string values as compact JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "status", "key", "value"])
            .expect("in-memory write");
        for r in &self.results {
            let rows: Vec<(String, String)> = match &r.values {
                Value::Object(m) => m.iter().map(|(k, v)| (k.clone(), cell(v))).collect(),
                Value::Null => vec![],
                v => vec![(String::new(), cell(v))],
            };
            if rows.is_empty() {
                w.write_record([r.check.as_str(), r.status.as_str(), "", ""])
                    .expect("in-memory write");
            }
            for (k, v) in rows {
                w.write_record([r.check.as_str(), r.status.as_str(), &k, &v])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

pub fn fp2_json(x: &Fp2) -> Value {
    json!([x.a(), x.b()])
}

pub fn residual_json(r: &ResidualClass) -> Value {
    json!({ "val": r.val(), "res": fp2_json(&r.res()) })
}

/// Integers that fit in `i64` as numbers, everything else as `"a/b"`.
pub fn q_json(q: &Q) -> Value {
    if q.is_integer() {
        if let Some(n) = q.to_integer().to_i64() {
            return json!(n);
        }
    }
    json!(q.to_string())
}

pub fn cyclo_json(c: &Cyclo) -> Value {
    match c.as_rational() {
        Some(q) => q_json(q),
        None => json!(c.to_string()),
    }
}

/// Unit part coordinates are given modulo `p^rel_prec`, as decimal
/// strings.
pub fn padic_json(x: &PadicElement) -> Value {
    let (a, b) = x.unit_coords();
    json!({
        "val": x.valuation(),
        "rel_prec": x.relative_precision(),
        "unit": [a.to_string(), b.to_string()],
    })
}

pub fn series_json(f: &QExpansion) -> Value {
    json!({
        "variable": f.var().to_string(),
        "shift": q_json(f.shift()),
        "step": format!("1/{}", f.denom()),
        "order": q_json(&f.order()),
        "coefficients": f.coeffs().iter().map(cyclo_json).collect::<Vec<_>>(),
    })
}
