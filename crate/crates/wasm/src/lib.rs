//! Browser bindings for the interactive demo page: relation prediction from
//! box geometry, proposition extraction from sentences, and diversity
//! scoring of three-sentence groups.
//!
//! Every export returns a JSON string so the page needs no generated type
//! glue beyond the wasm-bindgen loader.

use vsd_core::baseline::{predict_relation_explained, GeoConfig};
use vsd_core::bbox::BBox;
use vsd_core::metrics::{self_bleu4, tokenize};
use vsd_core::scoring::compose_scores;
use vsd_core::spice::{extract_triples, tuple_fscore};
use wasm_bindgen::prelude::*;

fn err_json(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// Classifies a (subject, object) box pair. Boxes are
/// `[y_min, y_max, x_min, x_max]` with y growing downward.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn predict_relation_json(
    sy_min: u32,
    sy_max: u32,
    sx_min: u32,
    sx_max: u32,
    oy_min: u32,
    oy_max: u32,
    ox_min: u32,
    ox_max: u32,
    containment_threshold: f64,
    contact_tolerance: u32,
) -> String {
    let cfg = match GeoConfig::new(containment_threshold, contact_tolerance) {
        Ok(cfg) => cfg,
        Err(e) => return err_json(e),
    };
    let subject = match BBox::new(sy_min, sy_max, sx_min, sx_max) {
        Ok(b) => b,
        Err(e) => return err_json(format!("subject box: {e}")),
    };
    let object = match BBox::new(oy_min, oy_max, ox_min, ox_max) {
        Ok(b) => b,
        Err(e) => return err_json(format!("object box: {e}")),
    };
    let pred = predict_relation_explained(&subject, &object, &cfg);
    serde_json::json!({
        "label": pred.label.short(),
        "sentence_form": pred.label.sentence(),
        "rule": pred.rule.as_str(),
        "containment_ratio": pred.containment_ratio,
        "intersection_area": subject.intersection_area(&object),
        "subject_area": subject.area(),
    })
    .to_string()
}

/// Extracts object/attribute/relation propositions from one sentence, plus
/// the tuple F-score against an optional reference sentence.
#[wasm_bindgen]
pub fn extract_triples_json(sentence: &str, reference: &str) -> String {
    let cand = extract_triples(sentence);
    let mut out = serde_json::json!({
        "candidate": cand,
        "tokens": tokenize(sentence).tokens(),
    });
    if !reference.trim().is_empty() {
        let reference_set = extract_triples(reference);
        out["fscore"] = serde_json::json!(tuple_fscore(&cand, &reference_set));
        out["reference"] = serde_json::json!(reference_set);
    }
    out.to_string()
}

/// Self-BLEU of a three-sentence group plus the composite scores it yields
/// when combined with the other metric inputs.
#[wasm_bindgen]
pub fn diversity_scores_json(
    s1: &str,
    s2: &str,
    s3: &str,
    f1: f64,
    bleu4: f64,
    spice_t2: f64,
    spice_t3: f64,
) -> String {
    let group = [tokenize(s1), tokenize(s2), tokenize(s3)];
    let mbleu4 = match self_bleu4(&group) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    match compose_scores(f1, bleu4, spice_t2, mbleu4, spice_t3) {
        Ok(report) => report.to_json().to_string(),
        Err(e) => err_json(e),
    }
}
