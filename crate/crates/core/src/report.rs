//! Machine-readable outcomes of exact checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rootdata::{Family, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "CONJECTURE-PASS")]
    ConjecturePass,
    #[serde(rename = "CONJECTURE-FAIL")]
    ConjectureFail,
    #[serde(rename = "PRECONDITION-FAIL")]
    PreconditionFail,
    #[serde(rename = "NON-UNIQUE")]
    NonUnique,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ConjecturePass => "CONJECTURE-PASS",
            Status::ConjectureFail => "CONJECTURE-FAIL",
            Status::PreconditionFail => "PRECONDITION-FAIL",
            Status::NonUnique => "NON-UNIQUE",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, Status::Pass | Status::ConjecturePass)
    }

    /// Turns a plain verdict into its conjectural counterpart.
    pub fn conjectural(self) -> Status {
        match self {
            Status::Pass => Status::ConjecturePass,
            Status::Fail => Status::ConjectureFail,
            s => s,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which algebra, K-matrix kind and parameters a report is about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Instance {
    pub family: Option<Family>,
    pub bn: usize,
    pub bm: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub block: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<String>,
}

impl Instance {
    pub fn of(rs: &RootSystem) -> Self {
        Instance {
            family: Some(rs.family()),
            bn: rs.bn(),
            bm: rs.bm(),
            ..Default::default()
        }
    }

    pub fn with_kind(mut self, kind: &str, block: Option<usize>) -> Self {
        self.kind = Some(kind.to_string());
        self.block = block;
        self
    }

    pub fn with_params(mut self, digest: String) -> Self {
        self.params = Some(digest);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub instance: Instance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str, instance: Instance, status: Status) -> Self {
        VerificationReport {
            check: check.to_string(),
            instance,
            status,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn pass(check: &str, instance: Instance) -> Self {
        Self::new(check, instance, Status::Pass)
    }

    pub fn fail(check: &str, instance: Instance, witness: Witness) -> Self {
        let mut r = Self::new(check, instance, Status::Fail);
        r.witness = Some(witness);
        r
    }

    pub fn precondition(check: &str, instance: Instance, why: impl Into<String>) -> Self {
        let mut r = Self::new(check, instance, Status::PreconditionFail);
        r.notes.push(why.into());
        r
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status.is_pass()
    }

    /// Canonical JSON text; stable across runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Builds PASS or FAIL from an optional first discrepancy.
pub fn from_difference(check: &str, instance: Instance, diff: Option<(String, String, String)>) -> VerificationReport {
    match diff {
        None => VerificationReport::pass(check, instance),
        Some((location, lhs, rhs)) => VerificationReport::fail(check, instance, Witness { location, lhs, rhs }),
    }
}
