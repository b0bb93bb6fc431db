use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// The JSON document printed on stdout. Maps are ordered so output is byte-stable.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub tolerance: f64,
    pub residuals: BTreeMap<String, f64>,
    pub outputs: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub status: &'static str,
    pub exit_code: u8,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>, tolerance: f64) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            tolerance,
            residuals: BTreeMap::new(),
            outputs: BTreeMap::new(),
            warnings: Vec::new(),
            notes: Vec::new(),
            error: None,
            status: "ok",
            exit_code: 0,
        }
    }

    pub fn residual(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_string(), value);
    }

    pub fn output(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialise");
        self.outputs.insert(name.to_string(), v);
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        eprintln!("warning: {msg}");
        self.warnings.push(msg);
    }

    /// Marks the report failed (exit 1) if any residual exceeds the tolerance or is not finite.
    pub fn judge(&mut self) {
        let bad: Vec<&String> = self
            .residuals
            .iter()
            .filter(|(_, v)| v.is_nan() || **v > self.tolerance)
            .map(|(k, _)| k)
            .collect();
        if !bad.is_empty() {
            let names: Vec<&str> = bad.iter().map(|s| s.as_str()).collect();
            self.fail(
                1,
                format!("residuals above tolerance: {}", names.join(", ")),
            );
        }
    }

    pub fn fail(&mut self, code: u8, msg: String) {
        if self.exit_code == 0 {
            self.exit_code = code;
            self.status = if code == 1 { "fail" } else { "error" };
            self.error = Some(msg);
        }
    }

    pub fn render(&self) -> String {
        // non-finite residuals would serialise as null; they have already failed `judge`
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        let mut r = Report::new("x", vec![], 1e-9);
        r.residual("a", f64::NAN);
        r.judge();
        assert_eq!(r.exit_code, 1);
    }

    #[test]
    fn first_failure_wins() {
        let mut r = Report::new("x", vec![], 1e-9);
        r.fail(3, "ambiguous".into());
        r.fail(1, "later".into());
        assert_eq!((r.exit_code, r.status), (3, "error"));
    }
}
