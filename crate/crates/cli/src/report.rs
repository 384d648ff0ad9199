use std::fmt::Write as _;

use opmod::{AlgebraError, Matrix, Poly, PolyMatrix};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::SelfCheck(_) => 3,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Self-checks run before anything is printed. With `fault` set the first
/// check is forced to fail, to exercise the failure path end to end.
pub struct Checks {
    fault: bool,
    done: Vec<(String, bool)>,
}

impl Checks {
    pub fn new(fault: bool) -> Self {
        Checks { fault, done: Vec::new() }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        let ok = ok && !(self.fault && self.done.is_empty());
        self.done.push((name.to_string(), ok));
    }

    pub fn finish(self) -> CliResult<Value> {
        if let Some((name, _)) = self.done.iter().find(|(_, ok)| !ok) {
            return Err(CliError::SelfCheck(name.clone()));
        }
        Ok(Value::Object(
            self.done.into_iter().map(|(k, v)| (k, Value::Bool(v))).collect(),
        ))
    }
}

/// What a command prints: the JSON document and the human rendering.
pub struct Report {
    pub json: Value,
    pub human: String,
}

impl Report {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.human.clone()
        }
    }
}

/// Line-oriented builder for the human rendering.
#[derive(Default)]
pub struct Text(String);

impl Text {
    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.0.push_str(s.as_ref());
        self.0.push('\n');
        self
    }

    pub fn field(&mut self, label: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.0, "{label}: {value}");
        self
    }

    pub fn matrix(&mut self, label: &str, m: &Matrix) -> &mut Self {
        let _ = writeln!(self.0, "{label} ({}x{}):", m.rows(), m.cols());
        for line in m.to_string().lines() {
            let _ = writeln!(self.0, "  {line}");
        }
        self
    }

    pub fn poly_matrix(&mut self, label: &str, m: &PolyMatrix) -> &mut Self {
        let _ = writeln!(self.0, "{label} ({}x{}):", m.rows(), m.cols());
        for line in m.to_string().lines() {
            let _ = writeln!(self.0, "  {line}");
        }
        self
    }

    pub fn checks(&mut self, checks: &Value) -> &mut Self {
        if let Value::Object(map) = checks {
            for (name, ok) in map {
                let _ = writeln!(self.0, "check {name}: {}", if ok == &Value::Bool(true) { "ok" } else { "FAILED" });
            }
        }
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.0)
    }
}

pub fn poly_list(polys: &[Poly]) -> String {
    if polys.is_empty() {
        return "(none)".to_string();
    }
    polys.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(", ")
}
