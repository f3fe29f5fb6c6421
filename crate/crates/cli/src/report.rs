use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Identifier of the report layout, bumped on incompatible changes.
pub const REPORT_SCHEMA: &str = "annulus-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub version: String,
    pub command: String,
    /// Named benchmark the run corresponds to, e.g. `fig1-annulus`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<String>,
    pub config: Value,
    /// SHA-256 over the input files in argument order, or over the config
    /// echo when the command reads no files.
    pub input_sha256: String,
    pub results: Value,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
}

impl RunReport {
    /// Serialized report with `timings` removed, for comparing runs.
    pub fn deterministic_part(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(map) = &mut v {
            map.remove("timings");
        }
        v
    }
}

/// Hex SHA-256 of a sequence of byte strings, each length-prefixed so that
/// different splits of the same bytes hash differently.
pub fn digest_inputs<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part);
    }
    hex::encode(hasher.finalize())
}

/// Benchmark name for a pair of round annuli.
pub fn round_benchmark(r: f64, big_r: f64) -> Option<&'static str> {
    let close = |a: f64, b: f64| (a - b).abs() < 1e-6;
    if close(r, 0.5) && close(big_r, 2.0 / 3.0) {
        Some("fig1-annulus")
    } else if close(r, 2.0 / 3.0) && close(big_r, 0.5) {
        Some("fig2-annulus")
    } else if close(r, 0.5) && close(big_r, 0.5) {
        Some("equal-moduli")
    } else if close(big_r, 2.0 * r / (1.0 + r * r)) {
        Some("nitsche-critical")
    } else {
        None
    }
}
