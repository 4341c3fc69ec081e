//! Machine-readable reports.

use std::collections::BTreeMap;

use bethe_core::{Complex, Rational};
use serde::Serialize;
use serde_json::{json, Value};

/// Outcome of one check, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Nonconvergence,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Nonconvergence => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residuals: BTreeMap<String, f64>,
    pub data: Value,
}

impl Check {
    pub fn new(name: &str, status: Status) -> Self {
        Check { name: name.into(), status, residuals: BTreeMap::new(), data: Value::Null }
    }

    pub fn residual(mut self, key: &str, value: f64) -> Self {
        self.residuals.insert(key.into(), value);
        self
    }

    pub fn data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, checks: Vec<Check>) -> Self {
        let status = checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        Report { command: command.into(), status, checks }
    }

    /// Concatenates reports, prefixing check names with their command.
    pub fn merge(command: &str, parts: Vec<Report>) -> Self {
        let checks = parts
            .into_iter()
            .flat_map(|r| {
                let prefix = r.command;
                r.checks.into_iter().map(move |mut c| {
                    c.name = format!("{prefix}/{}", c.name);
                    c
                })
            })
            .collect();
        Self::new(command, checks)
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// `[re, im]`, with signed zeros normalised.
pub fn complex(z: &Complex) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

pub fn complexes(v: &[Complex]) -> Value {
    Value::Array(v.iter().map(complex).collect())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}
