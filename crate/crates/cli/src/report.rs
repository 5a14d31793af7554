//! Machine-readable reports, printed as JSON in the same structured format
//! as state files.
//!
//! Every numeric value is emitted twice: as a JSON number (shortest decimal
//! that round-trips the exact double) and as a fixed 17-significant-digit
//! string, so reports diff cleanly across platforms while staying fully
//! precise.

use entmeas_core::measures::MeasureReport;
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

/// A float as both a round-trip JSON number and a 17-digit fixed field.
pub fn numeric(v: f64) -> Value {
    json!({ "value": v, "digits17": format!("{v:.16e}") })
}

/// A complex number with both parts as [`numeric`] values.
pub fn complex(z: C64) -> Value {
    json!({ "re": numeric(z.re), "im": numeric(z.im) })
}

/// One measure evaluation as a JSON object.
pub fn measure_value(r: &MeasureReport) -> Value {
    json!({
        "kind": "measure",
        "name": r.name,
        "q": r.q,
        "raw_overlap": r.raw_overlap.map(complex),
        "magnitude": numeric(r.magnitude),
        "monotone": r.monotone.map(numeric),
        "vanishes_by_parity": r.vanishes_by_parity,
        "cross_checks": r.cross_checks.iter().map(|c| json!({
            "name": c.name,
            "value": numeric(c.value),
            "discrepancy": numeric(c.discrepancy),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

/// Accumulates a command's output and renders the final report.
pub struct ReportBuilder {
    command: String,
    input_digest: String,
    results: Vec<Value>,
    warnings: Vec<String>,
}

impl ReportBuilder {
    /// `command` is the raw argument echo; the digest is set separately once
    /// the input file (if any) has been read.
    pub fn new(command: String) -> Self {
        Self {
            command,
            input_digest: "none".to_string(),
            results: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Records the SHA-256 digest of the input file's raw bytes.
    pub fn set_input_digest(&mut self, bytes: &[u8]) {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.input_digest = format!("sha256:{:x}", hasher.finalize());
    }

    pub fn push_result(&mut self, value: Value) {
        self.results.push(value);
    }

    pub fn push_warning(&mut self, warning: String) {
        self.warnings.push(warning);
    }

    /// Renders the report as pretty JSON with a trailing newline. Key order
    /// is alphabetical (the serializer's map ordering), so equal content is
    /// byte-identical across runs.
    pub fn render(&self) -> String {
        let report = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "warnings": self.warnings,
        });
        let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_fields_round_trip_and_carry_17_digits() {
        let v = numeric(std::f64::consts::PI);
        let reparsed = v["value"].as_f64().unwrap();
        assert_eq!(reparsed, std::f64::consts::PI);
        let s = v["digits17"].as_str().unwrap();
        // 1 leading digit + 16 after the point.
        assert!(s.starts_with("3.1415926535897931"), "{s}");
    }

    #[test]
    fn render_is_deterministic() {
        let mut a = ReportBuilder::new("compute x y".into());
        a.set_input_digest(b"abc");
        a.push_result(numeric(0.5));
        let mut b = ReportBuilder::new("compute x y".into());
        b.set_input_digest(b"abc");
        b.push_result(numeric(0.5));
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn digest_matches_known_value() {
        let mut r = ReportBuilder::new("t".into());
        r.set_input_digest(b"abc");
        assert!(r.render().contains(
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        ));
    }
}
