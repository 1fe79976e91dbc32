use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// One self-describing document per run. Reports carry no timing so that
/// identical inputs, options and seeds give identical bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub inputs: Vec<InputDigest>,
    pub options: Value,
    pub payload: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn digest(path: &str, bytes: &[u8]) -> InputDigest {
    InputDigest {
        path: path.to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

/// Read a file and record its digest.
pub fn read_input(path: &Path, inputs: &mut Vec<InputDigest>) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    inputs.push(digest(&path.display().to_string(), &bytes));
    String::from_utf8(bytes).map_err(|_| Error::invalid(format!("{} is not UTF-8", path.display())))
}

/// 1 for bad input, 2 for refused sizes, 3 for broken internal invariants.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } => 2,
        Error::Invariant(_) => 3,
        _ => 1,
    }
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    exit_code: i32,
}

pub fn diagnostic(e: &Error) -> String {
    let kind = match e {
        Error::Parse { .. } => "parse",
        Error::Field(_) => "field",
        Error::NonAdmissible { .. } => "non-admissible",
        Error::InfiniteDimensional { .. } => "infinite-dimensional",
        Error::Shape(_) => "shape",
        Error::AlgebraMismatch => "algebra-mismatch",
        Error::NotMinimal(_) => "not-minimal",
        Error::Invalid(_) => "invalid",
        Error::Infeasible { .. } => "infeasible",
        Error::Invariant(_) => "invariant",
        Error::Io { .. } => "io",
    };
    let (line, column) = match e {
        Error::Parse { line, column, .. } => (Some(*line), Some(*column)),
        _ => (None, None),
    };
    let d = Diagnostic {
        kind,
        message: e.to_string(),
        line,
        column,
        exit_code: exit_code(e),
    };
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "error": d })).expect("diagnostic serializes");
    s.push('\n');
    s
}
