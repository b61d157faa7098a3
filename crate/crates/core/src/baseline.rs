//! Rule-based bounding-box relation predictor.
//!
//! A deterministic stand-in for a learned model: it maps a (subject, object)
//! box pair to one of the seven geometrically decidable labels. BEHIND and
//! IN_FRONT_OF are never emitted because 2-D boxes carry no depth, which caps
//! the achievable classification score on corpora using those labels.

use crate::bbox::BBox;
use crate::relation::RelationLabel;
use thiserror::Error;

/// Tuning knobs for the rule cascade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoConfig {
    /// Fraction of the subject box that must be covered by the object box to
    /// call IN. In (0, 1].
    pub containment_threshold: f64,
    /// Pixel gap between subject bottom and object top below which the pair
    /// counts as resting contact (ON). A gap equal to the tolerance is not
    /// contact: a pair separated by exactly the tolerance stays ABOVE.
    pub contact_tolerance: u32,
}

impl Default for GeoConfig {
    fn default() -> Self {
        GeoConfig { containment_threshold: 0.9, contact_tolerance: 10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeoConfigError {
    #[error("containment_threshold must be in (0, 1], got {0}")]
    BadThreshold(f64),
}

impl GeoConfig {
    pub fn new(containment_threshold: f64, contact_tolerance: u32) -> Result<Self, GeoConfigError> {
        if !(containment_threshold > 0.0 && containment_threshold <= 1.0) {
            return Err(GeoConfigError::BadThreshold(containment_threshold));
        }
        Ok(GeoConfig { containment_threshold, contact_tolerance })
    }
}

/// Which rule of the cascade decided a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeoRule {
    Containment,
    Contact,
    VerticallyDisjointAbove,
    VerticallyDisjointUnder,
    HorizontallyDisjointLeft,
    HorizontallyDisjointRight,
    Fallback,
}

impl GeoRule {
    pub fn as_str(self) -> &'static str {
        match self {
            GeoRule::Containment => "containment",
            GeoRule::Contact => "contact",
            GeoRule::VerticallyDisjointAbove => "vertically-disjoint-above",
            GeoRule::VerticallyDisjointUnder => "vertically-disjoint-under",
            GeoRule::HorizontallyDisjointLeft => "horizontally-disjoint-left",
            GeoRule::HorizontallyDisjointRight => "horizontally-disjoint-right",
            GeoRule::Fallback => "fallback-next",
        }
    }
}

/// Prediction plus the evidence that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPrediction {
    pub label: RelationLabel,
    pub rule: GeoRule,
    /// intersection area / subject area; 0 when the subject is degenerate.
    pub containment_ratio: f64,
}

/// First matching rule wins; y grows downward, so the subject being higher in
/// the image means a smaller y. A zero-area subject skips the containment
/// rule (its ratio is undefined) and falls through to the geometric rules.
pub fn predict_relation_explained(subject: &BBox, object: &BBox, cfg: &GeoConfig) -> GeoPrediction {
    let subject_area = subject.area();
    let ratio = if subject_area > 0 {
        subject.intersection_area(object) as f64 / subject_area as f64
    } else {
        0.0
    };
    let rule = if subject_area > 0 && ratio >= cfg.containment_threshold {
        GeoRule::Containment
    } else if subject.y_max.abs_diff(object.y_min) < cfg.contact_tolerance
        && subject.horizontal_overlap(object) > 0
    {
        GeoRule::Contact
    } else if subject.y_max <= object.y_min {
        GeoRule::VerticallyDisjointAbove
    } else if subject.y_min >= object.y_max {
        GeoRule::VerticallyDisjointUnder
    } else if subject.x_max <= object.x_min {
        GeoRule::HorizontallyDisjointLeft
    } else if subject.x_min >= object.x_max {
        GeoRule::HorizontallyDisjointRight
    } else {
        GeoRule::Fallback
    };
    let label = match rule {
        GeoRule::Containment => RelationLabel::In,
        GeoRule::Contact => RelationLabel::On,
        GeoRule::VerticallyDisjointAbove => RelationLabel::Above,
        GeoRule::VerticallyDisjointUnder => RelationLabel::Under,
        GeoRule::HorizontallyDisjointLeft => RelationLabel::Left,
        GeoRule::HorizontallyDisjointRight => RelationLabel::Right,
        GeoRule::Fallback => RelationLabel::Next,
    };
    GeoPrediction { label, rule, containment_ratio: ratio }
}

/// Predicted relation for a (subject, object) box pair.
pub fn predict_relation(subject: &BBox, object: &BBox, cfg: &GeoConfig) -> RelationLabel {
    predict_relation_explained(subject, object, cfg).label
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationLabel::*;

    fn bbox(y_min: u32, y_max: u32, x_min: u32, x_max: u32) -> BBox {
        BBox::new(y_min, y_max, x_min, x_max).unwrap()
    }

    #[test]
    fn worked_pair_lands_exactly_on_containment() {
        let subject = bbox(650, 680, 394, 424);
        let object = bbox(5, 677, 0, 992);
        let pred = predict_relation_explained(&subject, &object, &GeoConfig::default());
        assert_eq!(pred.label, In);
        assert_eq!(pred.rule, GeoRule::Containment);
        assert!((pred.containment_ratio - 0.9).abs() < 1e-12);
    }

    #[test]
    fn vertically_disjoint_subject_higher_is_above() {
        assert_eq!(
            predict_relation(&bbox(0, 10, 0, 10), &bbox(20, 30, 0, 10), &GeoConfig::default()),
            Above
        );
    }

    #[test]
    fn horizontally_disjoint_subject_right() {
        assert_eq!(
            predict_relation(&bbox(0, 10, 50, 60), &bbox(0, 10, 0, 10), &GeoConfig::default()),
            Right
        );
    }

    #[test]
    fn contact_with_horizontal_overlap_is_on() {
        // Subject bottom rests 4px above object top, with x overlap.
        let pred = predict_relation_explained(
            &bbox(0, 96, 10, 40),
            &bbox(100, 200, 0, 50),
            &GeoConfig::default(),
        );
        assert_eq!(pred.label, On);
        assert_eq!(pred.rule, GeoRule::Contact);
    }

    #[test]
    fn contact_needs_horizontal_overlap() {
        // Same vertical gap but horizontally disjoint: falls through to ABOVE.
        assert_eq!(
            predict_relation(&bbox(0, 96, 60, 90), &bbox(100, 200, 0, 50), &GeoConfig::default()),
            Above
        );
    }

    #[test]
    fn overlapping_without_containment_is_next() {
        let pred = predict_relation_explained(
            &bbox(150, 260, 150, 260),
            &bbox(100, 200, 100, 200),
            &GeoConfig::default(),
        );
        assert_eq!(pred.label, Next);
        assert_eq!(pred.rule, GeoRule::Fallback);
    }

    #[test]
    fn zero_area_subject_skips_containment() {
        // A point inside the object would divide by zero in the containment
        // rule; it must fall through (here to the contact rule's failure and
        // the fallback).
        let pred = predict_relation_explained(
            &bbox(150, 150, 150, 150),
            &bbox(100, 200, 100, 200),
            &GeoConfig::default(),
        );
        assert_ne!(pred.rule, GeoRule::Containment);
        assert_eq!(pred.label, Next);
    }

    #[test]
    fn containment_beats_contact_in_priority() {
        // Subject fully inside the object while also touching its top edge
        // region: containment must win.
        let pred = predict_relation_explained(
            &bbox(100, 108, 120, 180),
            &bbox(100, 200, 100, 200),
            &GeoConfig::default(),
        );
        assert_eq!(pred.rule, GeoRule::Containment);
        assert_eq!(pred.label, In);
    }

    #[test]
    fn threshold_is_configurable() {
        let subject = bbox(650, 680, 394, 424);
        let object = bbox(5, 677, 0, 992);
        let strict = GeoConfig::new(0.95, 10).unwrap();
        // Ratio is exactly 0.9: below 0.95 the pair stops being IN.
        assert_ne!(predict_relation(&subject, &object, &strict), In);
        assert!(GeoConfig::new(0.0, 10).is_err());
        assert!(GeoConfig::new(1.2, 10).is_err());
    }

    #[test]
    fn depth_labels_are_never_emitted() {
        let cfg = GeoConfig::default();
        for sy in (0..300u32).step_by(37) {
            for sx in (0..300u32).step_by(41) {
                let s = bbox(sy, sy + 25, sx, sx + 25);
                let o = bbox(120, 220, 120, 220);
                let label = predict_relation(&s, &o, &cfg);
                assert!(label != Behind && label != InFrontOf);
            }
        }
    }
}
