//! The closed nine-way spatial relation vocabulary and its surface forms.
//!
//! Every relation has two spellings: a `Short` form used as a classification
//! answer (e.g. `"next"`) and a `Sentence` form used inside rendered question
//! text and stacked descriptions (e.g. `"next to"`). For six of the nine
//! labels the two spellings coincide.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Spatial relation between a subject and an object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationLabel {
    On,
    In,
    Next,
    Under,
    Above,
    Behind,
    InFrontOf,
    Left,
    Right,
}

/// All labels, in the fixed order used when listing choices in a question.
pub const ALL_LABELS: [RelationLabel; 9] = [
    RelationLabel::On,
    RelationLabel::In,
    RelationLabel::Next,
    RelationLabel::Under,
    RelationLabel::Above,
    RelationLabel::Behind,
    RelationLabel::InFrontOf,
    RelationLabel::Left,
    RelationLabel::Right,
];

/// Which spelling of a label to render.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceStyle {
    /// Single-word answer form, e.g. `"left"`.
    Short,
    /// Prepositional phrase form used in sentences, e.g. `"to the left of"`.
    Sentence,
}

/// Returns the spelling of `label` in the requested style.
pub fn surface_for(label: RelationLabel, style: SurfaceStyle) -> &'static str {
    use RelationLabel::*;
    match (label, style) {
        (On, _) => "on",
        (In, _) => "in",
        (Next, SurfaceStyle::Short) => "next",
        (Next, SurfaceStyle::Sentence) => "next to",
        (Under, _) => "under",
        (Above, _) => "above",
        (Behind, _) => "behind",
        (InFrontOf, _) => "in front of",
        (Left, SurfaceStyle::Short) => "left",
        (Left, SurfaceStyle::Sentence) => "to the left of",
        (Right, SurfaceStyle::Short) => "right",
        (Right, SurfaceStyle::Sentence) => "to the right of",
    }
}

/// A string that matches no entry in the surface-form table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown relation label {0:?}")]
pub struct UnknownLabel(pub String);

/// Parses a label from any of its surface forms, case- and
/// whitespace-insensitively.
pub fn label_from_surface(s: &str) -> Result<RelationLabel, UnknownLabel> {
    let needle = s.trim().to_lowercase();
    for label in ALL_LABELS {
        if surface_for(label, SurfaceStyle::Short) == needle
            || surface_for(label, SurfaceStyle::Sentence) == needle
        {
            return Ok(label);
        }
    }
    Err(UnknownLabel(s.to_string()))
}

/// The comma-separated choice list shown in classification questions,
/// in sentence style and fixed order.
pub fn label_list_sentence() -> String {
    ALL_LABELS
        .iter()
        .map(|&l| surface_for(l, SurfaceStyle::Sentence))
        .collect::<Vec<_>>()
        .join(", ")
}

impl RelationLabel {
    /// Short answer spelling.
    pub fn short(self) -> &'static str {
        surface_for(self, SurfaceStyle::Short)
    }

    /// Sentence (prepositional phrase) spelling.
    pub fn sentence(self) -> &'static str {
        surface_for(self, SurfaceStyle::Sentence)
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl Serialize for RelationLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.short())
    }
}

impl<'de> Deserialize<'de> for RelationLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        label_from_surface(&s).map_err(D::Error::custom)
    }
}
