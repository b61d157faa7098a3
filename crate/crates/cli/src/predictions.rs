//! Prediction-file loading: one JSON object per line, keyed by gold item id.
//!
//! Per task the payload is a label (`"label"` or multi-label `"labels"`), a
//! single `"sentence"`, or exactly three `"sentences"`. Gold item at index
//! `i` is addressed as `item-{i}`.

use serde::Deserialize;
use std::collections::HashMap;
use std::io::BufRead;
use thiserror::Error;
use vsd_core::{label_from_surface, LabelSet, TaskId};

/// The id a prediction must use for the gold item at `index`.
pub fn gold_id(index: usize) -> String {
    format!("item-{index}")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PredictionError {
    #[error("line {line}: malformed JSON: {detail}")]
    Parse { line: usize, detail: String },
    #[error("line {line}: duplicate prediction id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error("prediction {id}: {detail}")]
    TaskMismatch { id: String, detail: String },
    #[error("prediction {id}: expected exactly 3 nonempty sentences, found {found}")]
    MalformedTriple { id: String, found: usize },
    #[error("prediction {id}: unknown relation label {label:?}")]
    UnknownLabel { id: String, label: String },
    #[error("no prediction for gold id {0}")]
    MissingPrediction(String),
    #[error("prediction id {0} matches no gold item")]
    UnknownId(String),
}

/// One prediction, already validated against its task's shape.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Labels(LabelSet),
    Sentence(String),
    Sentences(Vec<String>),
}

#[derive(Debug, Deserialize)]
struct RawPrediction {
    id: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    sentence: Option<String>,
    #[serde(default)]
    sentences: Option<Vec<String>>,
}

fn payload_for_task(raw: RawPrediction, task: TaskId) -> Result<(String, Payload), PredictionError> {
    let id = raw.id;
    let mismatch = |detail: &str| PredictionError::TaskMismatch {
        id: id.clone(),
        detail: detail.to_string(),
    };
    let payload = match task {
        TaskId::Task1 => {
            if raw.sentence.is_some() || raw.sentences.is_some() {
                return Err(mismatch("task1 predictions carry a label, not sentences"));
            }
            let strings = match (raw.label, raw.labels) {
                (Some(_), Some(_)) => {
                    return Err(mismatch("use either \"label\" or \"labels\", not both"))
                }
                (Some(one), None) => vec![one],
                (None, Some(many)) => many,
                (None, None) => return Err(mismatch("task1 prediction needs \"label\"")),
            };
            let mut set = LabelSet::new();
            for s in strings {
                let parsed = label_from_surface(&s)
                    .map_err(|e| PredictionError::UnknownLabel { id: id.clone(), label: e.0 })?;
                set.insert(parsed);
            }
            Payload::Labels(set)
        }
        TaskId::Task2 => {
            if raw.label.is_some() || raw.labels.is_some() || raw.sentences.is_some() {
                return Err(mismatch("task2 predictions carry a single \"sentence\""));
            }
            let sentence = raw.sentence.ok_or_else(|| mismatch("task2 prediction needs \"sentence\""))?;
            if sentence.trim().is_empty() {
                return Err(mismatch("sentence must be nonempty"));
            }
            Payload::Sentence(sentence)
        }
        TaskId::Task3 => {
            if raw.label.is_some() || raw.labels.is_some() || raw.sentence.is_some() {
                return Err(mismatch("task3 predictions carry \"sentences\""));
            }
            let sentences = raw
                .sentences
                .ok_or_else(|| mismatch("task3 prediction needs \"sentences\""))?;
            let nonempty = sentences.iter().filter(|s| !s.trim().is_empty()).count();
            if sentences.len() != 3 || nonempty != 3 {
                return Err(PredictionError::MalformedTriple { id, found: nonempty });
            }
            Payload::Sentences(sentences)
        }
    };
    Ok((id, payload))
}

/// Loads and shape-checks a prediction file for `task`.
pub fn load_predictions<R: BufRead>(
    reader: R,
    task: TaskId,
) -> Result<HashMap<String, Payload>, PredictionError> {
    let mut out = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let text = line.map_err(|e| PredictionError::Parse { line: line_no, detail: e.to_string() })?;
        if text.trim().is_empty() {
            continue;
        }
        let raw: RawPrediction = serde_json::from_str(&text)
            .map_err(|e| PredictionError::Parse { line: line_no, detail: e.to_string() })?;
        let (id, payload) = payload_for_task(raw, task)?;
        if out.contains_key(&id) {
            return Err(PredictionError::DuplicateId { line: line_no, id });
        }
        out.insert(id, payload);
    }
    Ok(out)
}

/// Checks ids cover the gold set exactly: every gold id predicted, no extras.
pub fn check_coverage(
    predictions: &HashMap<String, Payload>,
    n_items: usize,
) -> Result<(), PredictionError> {
    for i in 0..n_items {
        let id = gold_id(i);
        if !predictions.contains_key(&id) {
            return Err(PredictionError::MissingPrediction(id));
        }
    }
    if predictions.len() != n_items {
        let known: std::collections::HashSet<String> = (0..n_items).map(gold_id).collect();
        let extra = predictions
            .keys()
            .find(|id| !known.contains(*id))
            .expect("length mismatch implies an extra id");
        return Err(PredictionError::UnknownId(extra.clone()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use vsd_core::RelationLabel;

    #[test]
    fn parses_single_and_multi_labels() {
        let text = "{\"id\":\"item-0\",\"label\":\"on\"}\n{\"id\":\"item-1\",\"labels\":[\"in\",\"to the left of\"]}\n";
        let preds = load_predictions(text.as_bytes(), TaskId::Task1).unwrap();
        assert_eq!(preds.len(), 2);
        match &preds["item-1"] {
            Payload::Labels(set) => {
                assert!(set.contains(RelationLabel::In));
                assert!(set.contains(RelationLabel::Left));
            }
            other => panic!("unexpected payload {other:?}"),
        }
        check_coverage(&preds, 2).unwrap();
    }

    #[test]
    fn task_shape_is_enforced() {
        let text = "{\"id\":\"item-0\",\"sentence\":\"a ball\"}\n";
        let err = load_predictions(text.as_bytes(), TaskId::Task1).unwrap_err();
        assert!(matches!(err, PredictionError::TaskMismatch { .. }));

        let text = "{\"id\":\"item-0\",\"sentences\":[\"a\",\"b\"]}\n";
        let err = load_predictions(text.as_bytes(), TaskId::Task3).unwrap_err();
        assert!(matches!(err, PredictionError::MalformedTriple { found: 2, .. }));
    }

    #[test]
    fn coverage_errors_name_the_id() {
        let text = "{\"id\":\"item-0\",\"sentence\":\"a ball in water\"}\n";
        let preds = load_predictions(text.as_bytes(), TaskId::Task2).unwrap();
        assert_eq!(
            check_coverage(&preds, 2),
            Err(PredictionError::MissingPrediction("item-1".into()))
        );
        assert_eq!(check_coverage(&preds, 0), Err(PredictionError::UnknownId("item-0".into())));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let text = "{\"id\":\"item-0\",\"label\":\"on\"}\n{\"id\":\"item-0\",\"label\":\"in\"}\n";
        let err = load_predictions(text.as_bytes(), TaskId::Task1).unwrap_err();
        assert!(matches!(err, PredictionError::DuplicateId { line: 2, .. }));
    }

    #[test]
    fn unknown_label_is_reported() {
        let text = "{\"id\":\"item-0\",\"label\":\"beside\"}\n";
        let err = load_predictions(text.as_bytes(), TaskId::Task1).unwrap_err();
        assert_eq!(
            err,
            PredictionError::UnknownLabel { id: "item-0".into(), label: "beside".into() }
        );
    }
}
