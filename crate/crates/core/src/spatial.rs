//! Eight-way spatial relations and plane containment.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;
use crate::scene::{ObjectAttributes, PlaneAttributes, PlaneId};

/// Direction of a target relative to a reference, with `+x` = right and `+y` = front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpatialRelation {
    Right,
    RightFront,
    Front,
    LeftFront,
    Left,
    LeftRear,
    Back,
    RightRear,
}

impl SpatialRelation {
    /// Counterclockwise from +x, one per 45° sector.
    pub const ALL: [SpatialRelation; 8] = [
        SpatialRelation::Right,
        SpatialRelation::RightFront,
        SpatialRelation::Front,
        SpatialRelation::LeftFront,
        SpatialRelation::Left,
        SpatialRelation::LeftRear,
        SpatialRelation::Back,
        SpatialRelation::RightRear,
    ];

    pub fn sector(self) -> usize {
        Self::ALL.iter().position(|&r| r == self).unwrap()
    }

    pub fn is_cardinal(self) -> bool {
        self.sector().is_multiple_of(2)
    }

    /// The relation seen from the other side.
    pub fn opposite(self) -> Self {
        Self::ALL[(self.sector() + 4) % 8]
    }

    /// Cardinal components of a diagonal (a cardinal is its own only component).
    pub fn components(self) -> Vec<SpatialRelation> {
        let s = self.sector();
        if s.is_multiple_of(2) {
            vec![self]
        } else {
            vec![Self::ALL[s - 1], Self::ALL[(s + 1) % 8]]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpatialRelation::Right => "right",
            SpatialRelation::RightFront => "right_front",
            SpatialRelation::Front => "front",
            SpatialRelation::LeftFront => "left_front",
            SpatialRelation::Left => "left",
            SpatialRelation::LeftRear => "left_rear",
            SpatialRelation::Back => "back",
            SpatialRelation::RightRear => "right_rear",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.name() == s)
    }
}

impl fmt::Display for SpatialRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("coincident points ({x}, {y}) have no spatial relation")]
pub struct CoincidentPoints {
    pub x: f64,
    pub y: f64,
}

/// Sector of the direction `b - a`. Sectors are 45° wide and centred on the compass
/// directions; an exact boundary belongs to the counterclockwise sector.
pub fn relate(a: Point, b: Point) -> Result<SpatialRelation, CoincidentPoints> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    if dx == 0.0 && dy == 0.0 {
        return Err(CoincidentPoints { x: a.x, y: a.y });
    }
    let theta = dy.atan2(dx).rem_euclid(2.0 * PI);
    let sector = ((theta + PI / 8.0) / (PI / 4.0)).floor() as usize % 8;
    Ok(SpatialRelation::ALL[sector])
}

/// Whether `b` stands in relation `r` to `a`; a diagonal also satisfies its two cardinals.
pub fn holds(a: Point, b: Point, r: SpatialRelation) -> Result<bool, CoincidentPoints> {
    let actual = relate(a, b)?;
    Ok(actual == r || (r.is_cardinal() && actual.components().contains(&r)))
}

/// Whether the object's whole footprint lies on plane `plane`. The background region is the
/// unit table minus every geometric plane.
pub fn contains(planes: &[PlaneAttributes], plane: PlaneId, obj: &ObjectAttributes) -> bool {
    let Some(target) = planes.get(plane) else {
        return false;
    };
    if !target.region.contains_disc(obj.position, obj.radius) {
        return false;
    }
    if target.is_geometric() {
        return true;
    }
    planes
        .iter()
        .filter(|p| p.is_geometric())
        .all(|p| p.region.disc_gap(obj.position, obj.radius) >= 0.0)
}

/// The plane whose region wholly contains the object's footprint, if any.
pub fn locate(planes: &[PlaneAttributes], obj: &ObjectAttributes) -> Option<PlaneId> {
    (0..planes.len()).find(|&idx| contains(planes, idx, obj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SpatialRelation::*;

    const O: Point = Point::new(0.5, 0.5);

    #[test]
    fn axis_examples() {
        assert_eq!(relate(O, Point::new(0.9, 0.5)).unwrap(), Right);
        assert_eq!(relate(O, Point::new(0.5, 0.1)).unwrap(), Back);
        assert_eq!(relate(O, Point::new(0.5, 0.9)).unwrap(), Front);
        assert_eq!(relate(O, Point::new(0.1, 0.5)).unwrap(), Left);
        assert!(relate(O, O).is_err());
    }

    #[test]
    fn diagonal_at_exact_45_degrees() {
        // 45° is the centre of the right-front sector.
        assert_eq!(relate(O, Point::new(0.8, 0.8)).unwrap(), RightFront);
        assert_eq!(relate(O, Point::new(0.2, 0.2)).unwrap(), LeftRear);
    }

    #[test]
    fn boundary_goes_counterclockwise() {
        // 22.5° from +x sits on the right / right-front boundary.
        let t = PI / 8.0;
        let b = Point::new(0.5 + 0.3 * t.cos(), 0.5 + 0.3 * t.sin());
        let theta = (b.y - 0.5).atan2(b.x - 0.5);
        let expected = if theta >= PI / 8.0 { RightFront } else { Right };
        assert_eq!(relate(O, b).unwrap(), expected);
    }

    #[test]
    fn component_queries() {
        let b = Point::new(0.8, 0.8);
        assert!(holds(O, b, Right).unwrap());
        assert!(holds(O, b, Front).unwrap());
        assert!(holds(O, b, RightFront).unwrap());
        assert!(!holds(O, b, Left).unwrap());
        assert!(!holds(O, b, LeftFront).unwrap());
    }

    proptest! {
        #[test]
        fn antisymmetric(ax in 0.0..1.0f64, ay in 0.0..1.0f64, bx in 0.0..1.0f64, by in 0.0..1.0f64) {
            let (a, b) = (Point::new(ax, ay), Point::new(bx, by));
            prop_assume!(a.dist(b) > 1e-6);
            prop_assert_eq!(relate(b, a).unwrap(), relate(a, b).unwrap().opposite());
        }

        #[test]
        fn holds_counts(ax in 0.0..1.0f64, ay in 0.0..1.0f64, bx in 0.0..1.0f64, by in 0.0..1.0f64) {
            let (a, b) = (Point::new(ax, ay), Point::new(bx, by));
            prop_assume!(a.dist(b) > 1e-6);
            let true_set: Vec<_> = SpatialRelation::ALL.iter().filter(|&&r| holds(a, b, r).unwrap()).collect();
            let actual = relate(a, b).unwrap();
            if actual.is_cardinal() {
                prop_assert_eq!(true_set.len(), 1);
            } else {
                prop_assert_eq!(true_set.len(), 3);
            }
        }
    }
}
