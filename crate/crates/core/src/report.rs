//! Verification reports: one record per checked relation instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// What is left after moving every side of a relation to one side.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub zero: bool,
    pub terms: usize,
    /// Canonical text used for hashing.
    pub text: String,
    /// First nonzero term, for counterexamples.
    pub witness: Option<String>,
}

impl Residual {
    pub fn exact_zero() -> Self {
        Residual { zero: true, terms: 0, text: "0".into(), witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub relation: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub residual_terms: usize,
    pub residual_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn digest(text: &str) -> String {
    let h = Sha256::digest(text.as_bytes());
    let mut s = String::with_capacity(16);
    for b in &h[..8] {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<I, K, V>(it: I) -> BTreeMap<String, Value>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<Value>,
{
    it.into_iter().map(|(k, v)| (k.into(), v.into())).collect()
}

impl Check {
    /// Passes iff the residual vanishes.
    pub fn from_residual(relation: &str, params: BTreeMap<String, Value>, r: &Residual) -> Self {
        Check {
            relation: relation.to_string(),
            params,
            status: if r.zero { Status::Pass } else { Status::Fail },
            residual_terms: r.terms,
            residual_hash: digest(&r.text),
            witness: r.witness.clone(),
            note: None,
        }
    }

    /// A yes/no property; `detail` is hashed and kept as witness on failure.
    pub fn predicate(relation: &str, params: BTreeMap<String, Value>, ok: bool, detail: &str) -> Self {
        Check {
            relation: relation.to_string(),
            params,
            status: if ok { Status::Pass } else { Status::Fail },
            residual_terms: usize::from(!ok),
            residual_hash: digest(detail),
            witness: (!ok).then(|| detail.to_string()),
            note: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_line(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let mut line = format!(
            "{} {} [{}] residual_terms={} hash={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.relation,
            ps.join(" "),
            self.residual_terms,
            self.residual_hash
        );
        if let Some(w) = &self.witness {
            let _ = write!(line, " witness={w}");
        }
        if let Some(n) = &self.note {
            let _ = write!(line, " note={n}");
        }
        line
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, n: usize, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        Report { suite: suite.to_string(), n, passed, failed: checks.len() - passed, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Checks whose relation id starts with `prefix`.
    pub fn select<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.relation.starts_with(prefix))
    }

    /// True when every check under `prefix` passed and at least one exists.
    pub fn passed_under(&self, prefix: &str) -> bool {
        let mut any = false;
        for c in self.select(prefix) {
            any = true;
            if !c.passed() {
                return false;
            }
        }
        any
    }

    pub fn merge(suite: &str, n: usize, parts: Vec<Report>) -> Self {
        Self::new(suite, n, parts.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.to_line());
            s.push('\n');
        }
        let _ = writeln!(s, "suite={} n={} passed={} failed={}", self.suite, self.n, self.passed, self.failed);
        s
    }
}

/// Runs independent check producers in parallel, keeping input order.
pub fn run_parallel<T, F>(items: &[T], f: F) -> Vec<Check>
where
    T: Sync,
    F: Fn(&T) -> Vec<Check> + Sync + Send,
{
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let c = Check::from_residual("demo", params([("i", 1)]), &Residual::exact_zero());
        let r = Report::new("unit", 2, vec![c]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.all_passed());
    }
}
