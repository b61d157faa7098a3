//! Composition of per-task metric values into the weighted ranking score.
//!
//! All inputs and outputs live on the 0-100 reporting scale. The composite
//! formulas are applied literally, with no clamping: a diversity value above
//! 50 legitimately drives the z3 diversity term negative. Values are rounded
//! to four decimals at display time only.

use serde::Serialize;
use thiserror::Error;

/// Per-task metric values plus the derived composite scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    /// Task 1 classification F1.
    pub f1: f64,
    /// Task 2 corpus BLEU-4.
    pub bleu4: f64,
    /// Task 2 corpus SPICE-lite.
    pub spice_t2: f64,
    /// Task 3 diversity (Self-BLEU; lower is more diverse).
    pub mbleu4: f64,
    /// Task 3 correctness SPICE-lite.
    pub spice_t3: f64,
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
    pub overall: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("metric input {0} is not finite")]
    NonFinite(&'static str),
}

fn check_finite(name: &'static str, value: f64) -> Result<f64, ScoreError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ScoreError::NonFinite(name))
    }
}

/// Task-3 composite: equal-weight blend of a diversity term `(50 - mbleu4)`
/// and the correctness score.
pub fn score_ablation(mbleu4: f64, spice_t3: f64) -> Result<f64, ScoreError> {
    let mbleu4 = check_finite("mbleu4", mbleu4)?;
    let spice_t3 = check_finite("spice_t3", spice_t3)?;
    Ok(0.5 * (50.0 - mbleu4) + 0.5 * spice_t3)
}

/// Composes the five per-task values into z1/z2/z3 and the overall ranking
/// score.
pub fn compose_scores(
    f1: f64,
    bleu4: f64,
    spice_t2: f64,
    mbleu4: f64,
    spice_t3: f64,
) -> Result<MetricReport, ScoreError> {
    let f1 = check_finite("f1", f1)?;
    let bleu4 = check_finite("bleu4", bleu4)?;
    let spice_t2 = check_finite("spice_t2", spice_t2)?;
    let z1 = f1;
    let z2 = 0.4 * bleu4 + 0.6 * spice_t2;
    let z3 = score_ablation(mbleu4, spice_t3)?;
    let overall = 0.2 * z1 + 0.3 * z2 + 0.5 * z3;
    Ok(MetricReport { f1, bleu4, spice_t2, mbleu4, spice_t3, z1, z2, z3, overall })
}

/// Four-decimal display form (Rust's formatter rounds ties to even).
pub fn fmt4(value: f64) -> String {
    format!("{value:.4}")
}

impl MetricReport {
    /// Field names and raw values in report order.
    pub fn fields(&self) -> [(&'static str, f64); 9] {
        [
            ("f1", self.f1),
            ("bleu4", self.bleu4),
            ("spice_t2", self.spice_t2),
            ("mbleu4", self.mbleu4),
            ("spice_t3", self.spice_t3),
            ("z1", self.z1),
            ("z2", self.z2),
            ("z3", self.z3),
            ("overall", self.overall),
        ]
    }

    /// Report JSON: the raw doubles plus a `display` map of 4-dp strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (name, value) in self.fields() {
            obj.insert(name.to_string(), serde_json::json!(value));
        }
        let display: serde_json::Map<String, serde_json::Value> = self
            .fields()
            .iter()
            .map(|(name, value)| (name.to_string(), serde_json::json!(fmt4(*value))))
            .collect();
        obj.insert("display".to_string(), serde_json::Value::Object(display));
        serde_json::Value::Object(obj)
    }

    /// Fixed-width table for terminals.
    pub fn text_table(&self) -> String {
        let mut out = String::new();
        out.push_str("metric      value\n");
        out.push_str("---------  ----------\n");
        for (name, value) in self.fields() {
            out.push_str(&format!("{name:<9}  {:>10}\n", fmt4(value)));
        }
        out
    }
}
