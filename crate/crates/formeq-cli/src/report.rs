//! Machine-readable verification reports.
//!
//! A report is one suite run: a named case list with residuals and
//! tolerances where numeric, an overall verdict, the seed, and an echo of
//! the resolved configuration. Field order is fixed by the struct layout and
//! all maps are ordered, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl CaseResult {
    /// A check with a numeric residual measured against a tolerance.
    pub fn measured(case: &str, ok: bool, residual: f64, tolerance: f64, detail: String) -> Self {
        Self {
            case: case.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail,
        }
    }

    /// An exact (rational or structural) check with no numeric residual.
    pub fn exact(case: &str, ok: bool, detail: String) -> Self {
        Self {
            case: case.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            tolerance: None,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub overall: Status,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn new(
        suite: &str,
        seed: u64,
        config: BTreeMap<String, String>,
        cases: Vec<CaseResult>,
    ) -> Self {
        let overall = if cases.iter().all(|c| c.status != Status::Fail) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self { suite: suite.to_string(), overall, seed, config, cases }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_follows_cases() {
        let ok = Report::new(
            "s",
            1,
            BTreeMap::new(),
            vec![CaseResult::exact("a", true, String::new())],
        );
        assert!(ok.passed());
        let bad = Report::new(
            "s",
            1,
            BTreeMap::new(),
            vec![
                CaseResult::exact("a", true, String::new()),
                CaseResult::measured("b", false, 0.5, 0.1, String::new()),
            ],
        );
        assert!(!bad.passed());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let mut config = BTreeMap::new();
        config.insert("group".to_string(), "4".to_string());
        let report = Report::new(
            "solve",
            42,
            config,
            vec![CaseResult::measured("c", true, 1e-13, 1e-12, "detail".into())],
        );
        let json = report.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), json);
    }
}
