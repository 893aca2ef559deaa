use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    /// Non-confluent, obstructed or violated.
    Negative = 1,
    Usage = 2,
    Invariant = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    pub name: String,
    pub kind: &'static str,
    pub source: String,
    pub sha256: String,
}

impl InputInfo {
    pub fn of(p: &Problem) -> Self {
        InputInfo {
            name: p.name.clone(),
            kind: p.kind().as_str(),
            source: p.source.clone(),
            sha256: p.sha256.clone(),
        }
    }
}

/// Where a bound came from.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    Flag,
    File,
    Fallback,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bound {
    pub value: usize,
    pub source: BoundSource,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// The command line as interpreted, flags in canonical order.
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    pub bounds: BTreeMap<String, Value>,
    pub status: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub table: String,
    pub exit: Exit,
}
