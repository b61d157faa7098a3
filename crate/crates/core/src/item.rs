//! Corpus records, task identifiers, and instruction-following records.

use crate::bbox::BBox;
use crate::relation::RelationLabel;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// One annotated corpus record: an image reference, two tagged boxes, the
/// relation between them, and two sets of textual descriptions.
///
/// `descriptions_v1` always has at least one entry; `descriptions_v2` may be
/// empty, in which case open-ended dataset building falls back to sampling a
/// second v1 description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VsdItem {
    /// Opaque image reference (path or id); never decoded.
    pub image: String,
    #[serde(rename = "subject")]
    pub subject_tag: String,
    #[serde(rename = "object")]
    pub object_tag: String,
    pub relation: RelationLabel,
    pub subject_bbox: BBox,
    pub object_bbox: BBox,
    pub descriptions_v1: Vec<String>,
    #[serde(default)]
    pub descriptions_v2: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ItemError {
    #[error("field {0} must be nonempty")]
    EmptyField(&'static str),
    #[error("field {0} must not contain newlines")]
    NewlineInField(&'static str),
    #[error("descriptions_v1 must contain at least one entry")]
    NoDescriptions,
    #[error("{0} contains an empty entry at position {1}")]
    EmptyDescription(&'static str, usize),
    #[error("{0} entry at position {1} contains a newline")]
    NewlineInDescription(&'static str, usize),
}

impl VsdItem {
    /// Checks the invariants serde cannot express.
    pub fn validate(&self) -> Result<(), ItemError> {
        if self.image.is_empty() {
            return Err(ItemError::EmptyField("image"));
        }
        if self.subject_tag.is_empty() {
            return Err(ItemError::EmptyField("subject"));
        }
        if self.object_tag.is_empty() {
            return Err(ItemError::EmptyField("object"));
        }
        // Tags and descriptions end up inside single answer lines.
        for (name, value) in [("subject", &self.subject_tag), ("object", &self.object_tag)] {
            if value.contains('\n') {
                return Err(ItemError::NewlineInField(name));
            }
        }
        if self.descriptions_v1.is_empty() {
            return Err(ItemError::NoDescriptions);
        }
        for (name, list) in [
            ("descriptions_v1", &self.descriptions_v1),
            ("descriptions_v2", &self.descriptions_v2),
        ] {
            if let Some(pos) = list.iter().position(|d| d.trim().is_empty()) {
                return Err(ItemError::EmptyDescription(name, pos));
            }
            if let Some(pos) = list.iter().position(|d| d.contains('\n')) {
                return Err(ItemError::NewlineInDescription(name, pos));
            }
        }
        Ok(())
    }
}

/// The three sub-tasks a record can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskId {
    /// Pick one relation label from the closed set.
    #[serde(rename = "task1")]
    Task1,
    /// Produce a single description sentence.
    #[serde(rename = "task2")]
    Task2,
    /// Produce three diverse description sentences.
    #[serde(rename = "task3")]
    Task3,
}

impl TaskId {
    pub const ALL: [TaskId; 3] = [TaskId::Task1, TaskId::Task2, TaskId::Task3];

    pub fn as_str(self) -> &'static str {
        match self {
            TaskId::Task1 => "task1",
            TaskId::Task2 => "task2",
            TaskId::Task3 => "task3",
        }
    }

    /// Parses `1`/`2`/`3` as well as `task1`/`task2`/`task3`.
    pub fn parse(s: &str) -> Option<TaskId> {
        match s.trim().to_lowercase().as_str() {
            "1" | "task1" => Some(TaskId::Task1),
            "2" | "task2" => Some(TaskId::Task2),
            "3" | "task3" => Some(TaskId::Task3),
            _ => None,
        }
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single-round (question, answer) training example bound to one image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstructRecord {
    pub id: String,
    pub image: String,
    pub task: TaskId,
    pub question: String,
    pub answer: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("record {id}: question must be nonempty")]
    EmptyQuestion { id: String },
    #[error("record {id}: answer must be nonempty")]
    EmptyAnswer { id: String },
    #[error("record {id}: task3 answer must have exactly 3 nonempty lines, found {found}")]
    BadTripleShape { id: String, found: usize },
}

impl InstructRecord {
    pub fn validate(&self) -> Result<(), RecordError> {
        if self.question.is_empty() {
            return Err(RecordError::EmptyQuestion { id: self.id.clone() });
        }
        if self.answer.is_empty() {
            return Err(RecordError::EmptyAnswer { id: self.id.clone() });
        }
        if self.task == TaskId::Task3 {
            let lines: Vec<&str> = self.answer.split('\n').collect();
            if lines.len() != 3 || lines.iter().any(|l| l.trim().is_empty()) {
                return Err(RecordError::BadTripleShape {
                    id: self.id.clone(),
                    found: lines.iter().filter(|l| !l.trim().is_empty()).count(),
                });
            }
        }
        Ok(())
    }

    /// The three answer lines of a task-3 record.
    pub fn answer_lines(&self) -> Vec<&str> {
        self.answer.split('\n').collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_item() -> VsdItem {
        VsdItem {
            image: "000001.jpg".into(),
            subject_tag: "yellow ball".into(),
            object_tag: "water".into(),
            relation: RelationLabel::In,
            subject_bbox: BBox::new(650, 680, 394, 424).unwrap(),
            object_bbox: BBox::new(5, 677, 0, 992).unwrap(),
            descriptions_v1: vec!["yellow ball in water".into()],
            descriptions_v2: vec![],
        }
    }

    #[test]
    fn valid_item_passes() {
        sample_item().validate().unwrap();
    }

    #[test]
    fn empty_tag_fails() {
        let mut item = sample_item();
        item.object_tag = String::new();
        assert_eq!(item.validate(), Err(ItemError::EmptyField("object")));
    }

    #[test]
    fn v1_must_be_nonempty() {
        let mut item = sample_item();
        item.descriptions_v1.clear();
        assert_eq!(item.validate(), Err(ItemError::NoDescriptions));
    }

    #[test]
    fn task_id_round_trips_through_json() {
        let json = serde_json::to_string(&TaskId::Task3).unwrap();
        assert_eq!(json, "\"task3\"");
        assert_eq!(TaskId::parse("2"), Some(TaskId::Task2));
        assert_eq!(TaskId::parse("task1"), Some(TaskId::Task1));
        assert_eq!(TaskId::parse("4"), None);
    }

    #[test]
    fn task3_answer_shape_is_enforced() {
        let mut rec = InstructRecord {
            id: "task3-0-0".into(),
            image: "img".into(),
            task: TaskId::Task3,
            question: "q".into(),
            answer: "a\nb\nc".into(),
        };
        rec.validate().unwrap();
        rec.answer = "a\nb".into();
        assert!(matches!(rec.validate(), Err(RecordError::BadTripleShape { found: 2, .. })));
    }
}
