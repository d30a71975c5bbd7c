//! Monte Carlo reports, emitted as one JSON object per line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959963984540054;

/// Wilson score interval at 95%: `(center, half_width)`.
pub fn wilson(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 0.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    (center, half)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub suite: String,
    pub inst: String,
    pub preset: String,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    /// Half-width of the 95% Wilson interval around the success rate.
    pub radius: f64,
    pub wall_time_ms: u128,
    /// Suite-specific figures.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Value>,
}

impl TrialReport {
    pub fn new(suite: &str, inst: &str, preset: &str, seed: u64, successes: u64, trials: u64) -> Self {
        assert!(successes <= trials);
        Self {
            suite: suite.into(),
            inst: inst.into(),
            preset: preset.into(),
            seed,
            trials,
            successes,
            rate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
            radius: wilson(successes, trials).1,
            wall_time_ms: 0,
            extra: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.into(), value.into());
        self
    }

    pub fn extra_f64(&self, key: &str) -> Option<f64> {
        self.extra.get(key).and_then(Value::as_f64)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Appends one line; existing content is never rewritten.
    pub fn append_to(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{}", self.to_json_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_matches_reference_values() {
        // 8 of 10: interval [0.4902, 0.9433].
        let (c, h) = wilson(8, 10);
        assert!((c - h - 0.4902).abs() < 1e-3, "{c}");
        assert!((c + h - 0.9433).abs() < 1e-3, "{h}");
        // 0 of 100: interval [0, 0.0370].
        let (c, h) = wilson(0, 100);
        assert!((c - h).abs() < 1e-12);
        assert!((c + h - 0.0370).abs() < 1e-3);
        assert_eq!(wilson(0, 0), (0.0, 0.0));
    }

    #[test]
    fn reports_append() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        let r = TrialReport::new("s", "dh", "toy", 1, 3, 4).with("note", 1.5);
        r.append_to(&path).unwrap();
        r.append_to(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let v: Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(v["rate"], 0.75);
        assert_eq!(v["extra"]["note"], 1.5);
    }
}
