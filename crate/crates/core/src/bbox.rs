//! Axis-aligned bounding boxes in image pixel coordinates.
//!
//! The coordinate system follows image convention: y grows downward, so a
//! smaller `y_min` means higher in the image. Boxes serialize as the
//! four-element array `[y_min, y_max, x_min, x_max]`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A bounding box. Degenerate (zero-area) boxes are valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BBox {
    pub y_min: u32,
    pub y_max: u32,
    pub x_min: u32,
    pub x_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BBoxError {
    #[error("y_min {y_min} exceeds y_max {y_max}")]
    YOrder { y_min: u32, y_max: u32 },
    #[error("x_min {x_min} exceeds x_max {x_max}")]
    XOrder { x_min: u32, x_max: u32 },
}

impl BBox {
    pub fn new(y_min: u32, y_max: u32, x_min: u32, x_max: u32) -> Result<Self, BBoxError> {
        if y_min > y_max {
            return Err(BBoxError::YOrder { y_min, y_max });
        }
        if x_min > x_max {
            return Err(BBoxError::XOrder { x_min, x_max });
        }
        Ok(Self { y_min, y_max, x_min, x_max })
    }

    pub fn width(&self) -> u64 {
        u64::from(self.x_max - self.x_min)
    }

    pub fn height(&self) -> u64 {
        u64::from(self.y_max - self.y_min)
    }

    pub fn area(&self) -> u64 {
        self.width() * self.height()
    }

    /// Overlap length along x; non-positive when the boxes are horizontally
    /// disjoint or merely touching.
    pub fn horizontal_overlap(&self, other: &BBox) -> i64 {
        i64::from(self.x_max.min(other.x_max)) - i64::from(self.x_min.max(other.x_min))
    }

    /// Overlap length along y, same convention as [`BBox::horizontal_overlap`].
    pub fn vertical_overlap(&self, other: &BBox) -> i64 {
        i64::from(self.y_max.min(other.y_max)) - i64::from(self.y_min.max(other.y_min))
    }

    pub fn intersection_area(&self, other: &BBox) -> u64 {
        let w = self.horizontal_overlap(other).max(0) as u64;
        let h = self.vertical_overlap(other).max(0) as u64;
        w * h
    }
}

impl TryFrom<[u32; 4]> for BBox {
    type Error = BBoxError;

    fn try_from(v: [u32; 4]) -> Result<Self, Self::Error> {
        BBox::new(v[0], v[1], v[2], v[3])
    }
}

impl From<BBox> for [u32; 4] {
    fn from(b: BBox) -> Self {
        [b.y_min, b.y_max, b.x_min, b.x_max]
    }
}

impl Serialize for BBox {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        <[u32; 4]>::from(*self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BBox {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = <[u32; 4]>::deserialize(deserializer)?;
        BBox::try_from(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_inverted_edges() {
        assert!(matches!(BBox::new(680, 650, 394, 424), Err(BBoxError::YOrder { .. })));
        assert!(matches!(BBox::new(0, 1, 5, 4), Err(BBoxError::XOrder { .. })));
    }

    #[test]
    fn zero_area_boxes_are_valid() {
        let b = BBox::new(10, 10, 3, 3).unwrap();
        assert_eq!(b.area(), 0);
    }

    #[test]
    fn serializes_in_schema_order() {
        let b = BBox::new(650, 680, 394, 424).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), "[650,680,394,424]");
        let back: BBox = serde_json::from_str("[650,680,394,424]").unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<BBox>("[680,650,394,424]").is_err());
    }

    #[test]
    fn intersection_of_worked_pair() {
        let subject = BBox::new(650, 680, 394, 424).unwrap();
        let object = BBox::new(5, 677, 0, 992).unwrap();
        assert_eq!(subject.area(), 900);
        assert_eq!(subject.intersection_area(&object), 810);
    }

    proptest! {
        #[test]
        fn area_is_nonnegative_and_symmetric_intersection(
            ay0 in 0u32..1000, ah in 0u32..1000, ax0 in 0u32..1000, aw in 0u32..1000,
            by0 in 0u32..1000, bh in 0u32..1000, bx0 in 0u32..1000, bw in 0u32..1000,
        ) {
            let a = BBox::new(ay0, ay0 + ah, ax0, ax0 + aw).unwrap();
            let b = BBox::new(by0, by0 + bh, bx0, bx0 + bw).unwrap();
            prop_assert_eq!(a.intersection_area(&b), b.intersection_area(&a));
            prop_assert!(a.intersection_area(&b) <= a.area().min(b.area()));
        }
    }
}
