//! Experiment records and their JSON-lines / CSV renderings.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::Value;

/// Rounds to 9 significant digits so that output diffs are stable.
pub fn round9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// JSON value for a float: a number with 9 significant digits, or a string
/// for non-finite values.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(round9(x)).map(Value::Number).unwrap_or(Value::Null)
    } else {
        Value::String(non_finite(x).to_string())
    }
}

/// Rounds every float inside a JSON value to 9 significant digits.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(ref x) if x.is_f64() => num(x.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, x)| (k, round_value(x))).collect()),
        other => other,
    }
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round9(*x))
    } else {
        s.serialize_str(non_finite(*x))
    }
}

fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

/// Text form used in the CSV summary.
pub fn fmt9(x: f64) -> String {
    if x.is_finite() {
        let r = round9(x);
        if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e16) {
            format!("{r:e}")
        } else {
            format!("{r}")
        }
    } else {
        non_finite(x).to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported only; never fails a run.
    Info,
}

/// How `value` is compared with `reference`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `|value - reference| <= tolerance`.
    Abs,
    /// `|value - reference| <= tolerance * |reference|`.
    Rel,
    /// `|value - reference| <= tolerance`, the tolerance being a multiple of
    /// a standard error.
    StdErr,
    /// `value >= reference`.
    AtLeast,
    /// `value <= reference`.
    AtMost,
    /// Boolean identity, `value = 1` when it holds.
    Exact,
    Qualitative,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub statistic: String,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
    #[serde(serialize_with = "ser_f64")]
    pub reference: f64,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
    pub rule: Rule,
    pub verdict: Verdict,
}

impl Check {
    fn new(statistic: &str, value: f64, reference: f64, tolerance: f64, rule: Rule, ok: bool) -> Self {
        Self {
            statistic: statistic.to_string(),
            value,
            reference,
            tolerance,
            rule,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn abs(statistic: &str, value: f64, reference: f64, tol: f64) -> Self {
        Self::new(statistic, value, reference, tol, Rule::Abs, (value - reference).abs() <= tol)
    }

    pub fn rel(statistic: &str, value: f64, reference: f64, tol: f64) -> Self {
        let ok = (value - reference).abs() <= tol * reference.abs();
        Self::new(statistic, value, reference, tol, Rule::Rel, ok)
    }

    /// `|value - reference| <= z * se`.
    pub fn within_se(statistic: &str, value: f64, reference: f64, se: f64, z: f64) -> Self {
        let tol = z * se;
        Self::new(statistic, value, reference, tol, Rule::StdErr, (value - reference).abs() <= tol)
    }

    pub fn at_least(statistic: &str, value: f64, bound: f64) -> Self {
        Self::new(statistic, value, bound, 0.0, Rule::AtLeast, value >= bound)
    }

    pub fn at_most(statistic: &str, value: f64, bound: f64) -> Self {
        Self::new(statistic, value, bound, 0.0, Rule::AtMost, value <= bound)
    }

    pub fn holds(statistic: &str, ok: bool) -> Self {
        Self::new(statistic, if ok { 1.0 } else { 0.0 }, 1.0, 0.0, Rule::Exact, ok)
    }

    pub fn info(statistic: &str, value: f64, reference: f64) -> Self {
        Self {
            statistic: statistic.to_string(),
            value,
            reference,
            tolerance: 0.0,
            rule: Rule::Qualitative,
            verdict: Verdict::Info,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Inputs echoed into every record.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    pub d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    pub omega: Option<f64>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    pub eps_tail: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub statistics: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

pub const CSV_HEADER: &str = "experiment,statistic,value,reference,tolerance,verdict";

impl ExperimentRecord {
    pub fn new(experiment: &str, params: Params) -> Self {
        Self {
            experiment: experiment.to_string(),
            params,
            checks: Vec::new(),
            statistics: BTreeMap::new(),
            notes: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn check(&mut self, c: Check) {
        if !c.passed() {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(c);
    }

    pub fn stat(&mut self, key: &str, value: impl Into<Value>) {
        self.statistics.insert(key.to_string(), value.into());
    }

    pub fn stat_f64(&mut self, key: &str, value: f64) {
        self.statistics.insert(key.to_string(), num(value));
    }

    pub fn stat_vec(&mut self, key: &str, values: &[f64]) {
        self.statistics.insert(key.to_string(), Value::Array(values.iter().map(|&v| num(v)).collect()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn check_named(&self, statistic: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.statistic == statistic)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let verdict = match c.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "fail",
                    Verdict::Info => "info",
                };
                format!(
                    "{},{},{},{},{},{}",
                    self.experiment,
                    c.statistic,
                    fmt9(c.value),
                    fmt9(c.reference),
                    fmt9(c.tolerance),
                    verdict
                )
            })
            .collect()
    }
}
