//! Report records for verification campaigns. Campaigns stream one JSON
//! line per grid cell and finish with a summary line; a run passes exactly
//! when no cell recorded a failure.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct CellRecord {
    pub campaign: String,
    pub cell: Value,
    pub checks: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub campaign: String,
    pub params: Value,
    pub checks_attempted: u64,
    pub checks_passed: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl VerifyReport {
    pub fn from_records(
        campaign: &str,
        params: Value,
        records: &[CellRecord],
        wall_ms: Option<u128>,
    ) -> Self {
        let checks_attempted: u64 = records.iter().map(|r| r.checks).sum();
        let failures: u64 = records.iter().map(|r| r.failures).sum();
        let counterexample = records
            .iter()
            .find_map(|r| r.counterexample.clone());
        VerifyReport {
            campaign: campaign.to_string(),
            params,
            checks_attempted,
            checks_passed: checks_attempted - failures,
            pass: failures == 0,
            counterexample,
            wall_ms,
        }
    }
}

/// Per-cell assertion tally that keeps the first counterexample.
#[derive(Debug, Default)]
pub struct Checker {
    pub checks: u64,
    pub failures: u64,
    pub first: Option<Value>,
}

impl Checker {
    pub fn check(&mut self, ok: bool, context: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(context());
            }
        }
    }

    pub fn into_record(self, campaign: &str, cell: Value) -> CellRecord {
        CellRecord {
            campaign: campaign.to_string(),
            cell,
            checks: self.checks,
            failures: self.failures,
            counterexample: self.first,
        }
    }
}
