//! Streaming JSONL corpus loader with line-numbered diagnostics.
//!
//! One JSON object per line; blank lines are skipped. Strict mode fails on
//! the first bad line, lenient mode collects diagnostics and keeps going.

use crate::item::VsdItem;
use serde::Serialize;
use std::io::{BufRead, Write};
use thiserror::Error;

/// Expected record counts per task for a loaded corpus.
///
/// Tasks 1 and 3 yield one record per item; task 2 yields one record per v1
/// description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub n_items: usize,
    pub n_task1_expected: usize,
    pub n_task2_expected: usize,
    pub n_task3_expected: usize,
}

impl CorpusStats {
    pub fn from_items(items: &[VsdItem]) -> Self {
        let n_items = items.len();
        let n_task2 = items.iter().map(|i| i.descriptions_v1.len()).sum();
        CorpusStats {
            n_items,
            n_task1_expected: n_items,
            n_task2_expected: n_task2,
            n_task3_expected: n_items,
        }
    }

    /// Total records a dataset build will emit.
    pub fn total_expected(&self) -> usize {
        self.n_task1_expected + self.n_task2_expected + self.n_task3_expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: malformed JSON: {detail}")]
    Parse { line: usize, detail: String },
    #[error("line {line}: schema violation in {field}: {detail}")]
    Schema { line: usize, field: String, detail: String },
    #[error("line {line}: unknown relation label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("read failure at line {line}: {detail}")]
    Io { line: usize, detail: String },
}

/// Error-handling policy for [`load_corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoadMode {
    /// Fail on the first malformed line.
    #[default]
    Strict,
    /// Skip malformed lines, collecting their diagnostics.
    Lenient,
}

/// A loaded corpus plus any diagnostics collected in lenient mode.
#[derive(Debug, Clone)]
pub struct LoadOutcome {
    pub items: Vec<VsdItem>,
    pub stats: CorpusStats,
    /// Empty in strict mode (errors abort the load instead).
    pub skipped: Vec<CorpusError>,
}

// Raw mirror of the line schema, decoupled from the validated types so each
// constraint can be reported against its field.
#[derive(serde::Deserialize)]
struct RawItem {
    image: String,
    subject: String,
    object: String,
    relation: String,
    subject_bbox: [i64; 4],
    object_bbox: [i64; 4],
    descriptions_v1: Vec<String>,
    #[serde(default)]
    descriptions_v2: Vec<String>,
}

fn bbox_from_raw(raw: [i64; 4], field: &str, line: usize) -> Result<crate::BBox, CorpusError> {
    let schema = |detail: String| CorpusError::Schema {
        line,
        field: field.to_string(),
        detail,
    };
    let mut coords = [0u32; 4];
    for (dst, &src) in coords.iter_mut().zip(raw.iter()) {
        *dst = u32::try_from(src).map_err(|_| schema(format!("coordinate {src} out of range")))?;
    }
    crate::BBox::try_from(coords).map_err(|e| schema(e.to_string()))
}

fn item_from_line(text: &str, line: usize) -> Result<VsdItem, CorpusError> {
    // Distinguish malformed JSON from well-formed JSON that misses the schema.
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CorpusError::Parse { line, detail: e.to_string() })?;
    let raw: RawItem = serde_json::from_value(value).map_err(|e| CorpusError::Schema {
        line,
        field: "<record>".to_string(),
        detail: e.to_string(),
    })?;

    let relation = crate::label_from_surface(&raw.relation)
        .map_err(|e| CorpusError::UnknownLabel { line, label: e.0 })?;
    let item = VsdItem {
        image: raw.image,
        subject_tag: raw.subject,
        object_tag: raw.object,
        relation,
        subject_bbox: bbox_from_raw(raw.subject_bbox, "subject_bbox", line)?,
        object_bbox: bbox_from_raw(raw.object_bbox, "object_bbox", line)?,
        descriptions_v1: raw.descriptions_v1,
        descriptions_v2: raw.descriptions_v2,
    };
    item.validate().map_err(|e| CorpusError::Schema {
        line,
        field: "<record>".to_string(),
        detail: e.to_string(),
    })?;
    Ok(item)
}

/// Loads a JSONL corpus, preserving input order.
pub fn load_corpus<R: BufRead>(reader: R, mode: LoadMode) -> Result<LoadOutcome, CorpusError> {
    let mut items = Vec::new();
    let mut skipped = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let text = line.map_err(|e| CorpusError::Io { line: line_no, detail: e.to_string() })?;
        if text.trim().is_empty() {
            continue;
        }
        match item_from_line(&text, line_no) {
            Ok(item) => items.push(item),
            Err(err) => match mode {
                LoadMode::Strict => return Err(err),
                LoadMode::Lenient => skipped.push(err),
            },
        }
    }
    let stats = CorpusStats::from_items(&items);
    Ok(LoadOutcome { items, stats, skipped })
}

/// Serializes items back to the JSONL schema, one object per line.
pub fn write_corpus<W: Write>(mut out: W, items: &[VsdItem]) -> std::io::Result<()> {
    for item in items {
        let line = serde_json::to_string(item).expect("corpus items always serialize");
        writeln!(out, "{line}")?;
    }
    Ok(())
}
