//! Pass/fail check records shared by the verification suites.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// A measured quantity and the bound it was compared against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Numeric {
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<Numeric>,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, details: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
            numeric: None,
        }
    }

    pub fn skip(id: impl Into<String>, details: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: Status::Skip,
            details: details.into(),
            numeric: None,
        }
    }

    /// Pass iff `value < tolerance` (NaN fails).
    pub fn bounded(id: impl Into<String>, value: f64, tolerance: f64, details: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: if value < tolerance { Status::Pass } else { Status::Fail },
            details: details.into(),
            numeric: Some(Numeric { value, tolerance }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// True iff no check failed (skips do not fail, but never count as passes).
pub fn all_ok(checks: &[Check]) -> bool {
    !checks.iter().any(Check::failed)
}
