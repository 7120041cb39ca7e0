use milnor_ktk_core::QParameters;
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, SuiteId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Parameters a check actually ran at.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub q: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub margin: usize,
}

impl From<&QParameters> for CheckParams {
    fn from(p: &QParameters) -> Self {
        Self { q: p.q, n: p.fock_dim, m: p.circle_window, margin: p.margin }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: SuiteId,
    pub check: String,
    pub status: Status,
    /// `None` when the computation itself failed.
    pub defect: Option<f64>,
    pub params: CheckParams,
    pub paper_anchor: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub timestamp: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, mut results: Vec<CheckResult>, timestamp: u64) -> Self {
        results.sort_by(|a, b| (a.suite, &a.check).cmp(&(b.suite, &b.check)));
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            total: results.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            timestamp,
        };
        Self { config, results, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn suite(&self, id: SuiteId) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(move |r| r.suite == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
