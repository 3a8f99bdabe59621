//! Scene vocabulary and the structural invariants of a generated scene.
//!
//! Coordinates are fractions of the table side. Plane 0 is always the white
//! non-geometric background; planes `1..` are geometric.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Region};

macro_rules! vocab {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Canonical token, as used in data files and records.
            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn from_name(s: &str) -> Option<Self> {
                match s {
                    $($text => Some($name::$variant),)+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

vocab!(PlaneShape {
    Triangular => "triangular",
    Rectangular => "rectangular",
    Circular => "circular",
    NonGeometric => "non_geometric",
});

vocab!(PlaneMaterial {
    Marble => "marble",
    Wood => "wood",
});

vocab!(PlaneColor {
    Black => "black",
    Gray => "gray",
    Brown => "brown",
    White => "white",
});

vocab!(ObjectShape {
    Cone => "cone",
    Cube => "cube",
    Cylinder => "cylinder",
    Pentahedron => "pentahedron",
    Sphere => "sphere",
    TriangularPrism => "triangular_prism",
    Tetrahedron => "tetrahedron",
});

vocab!(Size {
    Small => "small",
    Large => "large",
});

vocab!(ObjectMaterial {
    Metal => "metal",
    Rubber => "rubber",
    Leather => "leather",
    Marble => "marble",
    Wood => "wood",
});

vocab!(ObjectColor {
    Blue => "blue",
    Brown => "brown",
    Cyan => "cyan",
    Gray => "gray",
    Green => "green",
    Purple => "purple",
    Red => "red",
    Yellow => "yellow",
});

impl PlaneShape {
    pub const GEOMETRIC: &'static [PlaneShape] =
        &[PlaneShape::Triangular, PlaneShape::Rectangular, PlaneShape::Circular];
}

impl PlaneColor {
    pub const GEOMETRIC: &'static [PlaneColor] = &[PlaneColor::Black, PlaneColor::Gray, PlaneColor::Brown];
}

impl Size {
    /// Footprint-radius interval for the size class.
    pub fn radius_range(self) -> (f64, f64) {
        match self {
            Size::Small => (0.015, 0.030),
            Size::Large => (0.040, 0.060),
        }
    }
}

pub type PlaneId = usize;
pub type ObjectId = usize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneAttributes {
    pub id: PlaneId,
    pub shape: PlaneShape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<PlaneMaterial>,
    pub color: PlaneColor,
    pub region: Region,
}

impl PlaneAttributes {
    pub fn background() -> Self {
        Self {
            id: 0,
            shape: PlaneShape::NonGeometric,
            material: None,
            color: PlaneColor::White,
            region: Region::Background,
        }
    }

    pub fn is_geometric(&self) -> bool {
        self.shape != PlaneShape::NonGeometric
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectAttributes {
    pub id: ObjectId,
    pub shape: ObjectShape,
    pub size: Size,
    pub material: ObjectMaterial,
    pub color: ObjectColor,
    pub position: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneGraph {
    pub scene_id: u64,
    pub rng_seed: u64,
    pub planes: Vec<PlaneAttributes>,
    pub objects: Vec<ObjectAttributes>,
    /// Containing plane of each object, indexed by object id.
    pub containment: Vec<PlaneId>,
}

impl SceneGraph {
    pub fn geometric_planes(&self) -> impl Iterator<Item = &PlaneAttributes> {
        self.planes.iter().filter(|p| p.is_geometric())
    }

    pub fn plane_of(&self, object: ObjectId) -> PlaneId {
        self.containment[object]
    }

    pub fn objects_on(&self, plane: PlaneId) -> impl Iterator<Item = &ObjectAttributes> + '_ {
        self.objects
            .iter()
            .filter(move |o| self.containment.get(o.id) == Some(&plane))
    }
}

/// Numeric bounds checked by [`validate_scene`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneLimits {
    pub plane_count: (usize, usize),
    pub geometric_objects: (usize, usize),
    pub background_objects: (usize, usize),
    pub object_clearance: f64,
    pub plane_clearance: f64,
}

impl Default for SceneLimits {
    fn default() -> Self {
        Self {
            plane_count: (1, 5),
            geometric_objects: (1, 10),
            background_objects: (1, 12),
            object_clearance: 0.01,
            plane_clearance: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    PlaneCount,
    PlaneAttributes,
    PlaneBounds,
    PlaneOverlap,
    ObjectCount,
    Containment,
    ObjectAttributes,
    ObjectClearance,
    PlaneClearance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub planes: Vec<PlaneId>,
    pub objects: Vec<ObjectId>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.message.clone()).collect()
    }

    fn push(&mut self, kind: ViolationKind, planes: Vec<PlaneId>, objects: Vec<ObjectId>, message: String) {
        self.violations.push(Violation { kind, planes, objects, message });
    }
}

const TOL: f64 = 1e-9;

pub fn validate_scene(scene: &SceneGraph) -> ValidationReport {
    validate_scene_with(scene, &SceneLimits::default())
}

/// Lists every violated scene invariant. Never panics, whatever the input.
pub fn validate_scene_with(scene: &SceneGraph, limits: &SceneLimits) -> ValidationReport {
    use ViolationKind::*;
    let mut report = ValidationReport::default();

    let geometric: Vec<&self::PlaneAttributes> = scene.geometric_planes().collect();
    let (lo, hi) = limits.plane_count;
    if geometric.len() < lo {
        report.push(PlaneCount, vec![], vec![], format!("plane count {} < {}", geometric.len(), lo));
    } else if geometric.len() > hi {
        report.push(PlaneCount, vec![], vec![], format!("plane count {} > {}", geometric.len(), hi));
    }

    match scene.planes.first() {
        Some(bg) if bg.shape == PlaneShape::NonGeometric => {}
        _ => report.push(PlaneAttributes, vec![0], vec![], "plane 0 is not the non-geometric background".into()),
    }
    for (idx, plane) in scene.planes.iter().enumerate() {
        if plane.id != idx {
            report.push(PlaneAttributes, vec![idx], vec![], format!("plane at index {idx} has id {}", plane.id));
        }
        if plane.is_geometric() {
            if idx == 0 {
                continue;
            }
            if plane.material.is_none() || plane.color == PlaneColor::White {
                report.push(
                    PlaneAttributes,
                    vec![idx],
                    vec![],
                    format!("geometric plane {idx} needs a material and a non-white color"),
                );
            }
            let shape_ok = match (&plane.shape, &plane.region) {
                (PlaneShape::Circular, Region::Disc { radius, .. }) => *radius > 0.0,
                (PlaneShape::Triangular, Region::Polygon { vertices }) => vertices.len() == 3,
                (PlaneShape::Rectangular, Region::Polygon { vertices }) => vertices.len() == 4,
                _ => false,
            };
            if !shape_ok {
                report.push(PlaneAttributes, vec![idx], vec![], format!("plane {idx} region does not match shape {}", plane.shape));
            } else if !plane.region.within_unit_square() {
                report.push(PlaneBounds, vec![idx], vec![], format!("plane {idx} leaves the unit table"));
            }
        } else if idx != 0 {
            report.push(PlaneAttributes, vec![idx], vec![], format!("non-geometric plane at index {idx}"));
        } else if plane.material.is_some() || plane.color != PlaneColor::White || plane.region != Region::Background {
            report.push(PlaneAttributes, vec![0], vec![], "background plane must be white, material-free and unbounded".into());
        }
    }

    for (i, a) in geometric.iter().enumerate() {
        for b in &geometric[i + 1..] {
            if !a.region.separated_by(&b.region, 0.0) {
                report.push(PlaneOverlap, vec![a.id, b.id], vec![], format!("planes {} and {} overlap", a.id, b.id));
            }
        }
    }

    if scene.containment.len() != scene.objects.len() {
        report.push(
            Containment,
            vec![],
            vec![],
            format!("containment covers {} of {} objects", scene.containment.len(), scene.objects.len()),
        );
    }

    for (idx, plane) in scene.planes.iter().enumerate() {
        let count = scene.containment.iter().filter(|&&p| p == idx).count();
        let (lo, hi) = if idx == 0 { limits.background_objects } else { limits.geometric_objects };
        if count < lo || count > hi {
            report.push(
                ObjectCount,
                vec![idx],
                vec![],
                format!("plane {idx} holds {count} objects, expected {lo}..={hi} ({})", plane.shape),
            );
        }
    }

    for (idx, obj) in scene.objects.iter().enumerate() {
        if obj.id != idx {
            report.push(ObjectAttributes, vec![], vec![idx], format!("object at index {idx} has id {}", obj.id));
        }
        let (rlo, rhi) = obj.size.radius_range();
        if obj.radius < rlo - TOL || obj.radius > rhi + TOL {
            report.push(
                ObjectAttributes,
                vec![],
                vec![idx],
                format!("object {idx} radius {:.4} outside {} range", obj.radius, obj.size),
            );
        }
        if !obj.position.in_unit_square() || !Region::Background.contains_disc(obj.position, obj.radius - TOL) {
            report.push(ObjectAttributes, vec![], vec![idx], format!("object {idx} leaves the unit table"));
        }
        let Some(&plane_id) = scene.containment.get(idx) else {
            continue;
        };
        if plane_id >= scene.planes.len() {
            report.push(Containment, vec![plane_id], vec![idx], format!("object {idx} assigned to missing plane {plane_id}"));
            continue;
        }
        if !crate::spatial::contains(&scene.planes, plane_id, obj) {
            report.push(
                Containment,
                vec![plane_id],
                vec![idx],
                format!("object {idx} footprint is not inside plane {plane_id}"),
            );
        }
        for plane in scene.planes.iter().filter(|p| p.is_geometric() && p.id != plane_id) {
            let gap = plane.region.disc_gap(obj.position, obj.radius);
            if gap < limits.plane_clearance - TOL {
                report.push(
                    PlaneClearance,
                    vec![plane.id],
                    vec![idx],
                    format!("object {idx} is {gap:.4} from foreign plane {} (< {})", plane.id, limits.plane_clearance),
                );
            }
        }
    }

    for (i, a) in scene.objects.iter().enumerate() {
        for b in &scene.objects[i + 1..] {
            let gap = a.position.dist(b.position) - a.radius - b.radius;
            if gap < limits.object_clearance - TOL {
                report.push(
                    ObjectClearance,
                    vec![],
                    vec![a.id, b.id],
                    format!("objects {} and {} clearance {gap:.4} < {}", a.id, b.id, limits.object_clearance),
                );
            }
        }
    }

    report
}
