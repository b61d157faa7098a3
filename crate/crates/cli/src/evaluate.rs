//! Per-task metric computation over a gold corpus and a prediction map.

use crate::predictions::{check_coverage, gold_id, Payload, PredictionError};
use anyhow::{bail, Context, Result};
use std::collections::HashMap;
use vsd_core::metrics::{corpus_bleu4, corpus_self_bleu4, macro_f1, micro_f1, tokenize, LabelSet, TokenSeq};
use vsd_core::spice::{corpus_spice, triple_group_spice};
use vsd_core::{TaskId, VsdItem};

/// Metric values for one task, as printed by `vsd eval`.
pub fn evaluate(
    task: TaskId,
    items: &[VsdItem],
    predictions: &HashMap<String, Payload>,
    use_macro_f1: bool,
) -> Result<serde_json::Value> {
    if items.is_empty() {
        bail!("gold corpus is empty");
    }
    check_coverage(predictions, items.len())?;
    match task {
        TaskId::Task1 => eval_task1(items, predictions, use_macro_f1),
        TaskId::Task2 => eval_task2(items, predictions),
        TaskId::Task3 => eval_task3(items, predictions),
    }
}

fn payload_of(
    predictions: &HashMap<String, Payload>,
    index: usize,
) -> Result<&Payload, PredictionError> {
    let id = gold_id(index);
    predictions.get(&id).ok_or(PredictionError::MissingPrediction(id))
}

fn eval_task1(
    items: &[VsdItem],
    predictions: &HashMap<String, Payload>,
    use_macro_f1: bool,
) -> Result<serde_json::Value> {
    let mut golds = Vec::with_capacity(items.len());
    let mut preds = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match payload_of(predictions, i)? {
            Payload::Labels(set) => preds.push(set.clone()),
            _ => unreachable!("payloads are shape-checked at load time"),
        }
        golds.push(LabelSet::single(item.relation));
    }
    let (f1, averaging) = if use_macro_f1 {
        (macro_f1(&golds, &preds)?, "macro")
    } else {
        (micro_f1(&golds, &preds)?, "micro")
    };
    Ok(serde_json::json!({ "task": "task1", "f1": f1, "f1_averaging": averaging }))
}

fn eval_task2(items: &[VsdItem], predictions: &HashMap<String, Payload>) -> Result<serde_json::Value> {
    let mut bleu_pairs: Vec<(TokenSeq, Vec<TokenSeq>)> = Vec::with_capacity(items.len());
    let mut spice_pairs: Vec<(String, Vec<String>)> = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let sentence = match payload_of(predictions, i)? {
            Payload::Sentence(s) => s.clone(),
            _ => unreachable!("payloads are shape-checked at load time"),
        };
        let references: Vec<TokenSeq> = item.descriptions_v1.iter().map(|d| tokenize(d)).collect();
        bleu_pairs.push((tokenize(&sentence), references));
        spice_pairs.push((sentence, item.descriptions_v1.clone()));
    }
    let bleu4 = corpus_bleu4(&bleu_pairs)
        .with_context(|| "task2 BLEU over prediction/reference pairs".to_string())?;
    let spice_t2 = corpus_spice(&spice_pairs)?;
    Ok(serde_json::json!({ "task": "task2", "bleu4": bleu4, "spice_t2": spice_t2 }))
}

fn eval_task3(items: &[VsdItem], predictions: &HashMap<String, Payload>) -> Result<serde_json::Value> {
    let mut groups: Vec<Vec<TokenSeq>> = Vec::with_capacity(items.len());
    let mut spice_sum = 0.0;
    for (i, item) in items.iter().enumerate() {
        let sentences = match payload_of(predictions, i)? {
            Payload::Sentences(s) => s.clone(),
            _ => unreachable!("payloads are shape-checked at load time"),
        };
        groups.push(sentences.iter().map(|s| tokenize(s)).collect());
        let mut references = item.descriptions_v1.clone();
        references.extend(item.descriptions_v2.iter().cloned());
        spice_sum += triple_group_spice(&sentences, &references)?;
    }
    let mbleu4 = corpus_self_bleu4(&groups)
        .with_context(|| "task3 Self-BLEU over prediction groups".to_string())?;
    let spice_t3 = 100.0 * spice_sum / items.len() as f64;
    Ok(serde_json::json!({ "task": "task3", "mbleu4": mbleu4, "spice_t3": spice_t3 }))
}
