//! Rejection sampling of valid scenes.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{signed_area, Point, Region};
use crate::rng::{self, tag, Rng};
use crate::scene::{
    ObjectAttributes, ObjectColor, ObjectMaterial, ObjectShape, PlaneAttributes, PlaneColor, PlaneMaterial,
    PlaneShape, SceneGraph, SceneLimits, Size,
};
use crate::spatial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    pub seed: u64,
    pub max_place_attempts: u32,
    /// Whole-layout restarts (each with a fresh derived stream) before giving up.
    pub max_layout_restarts: u32,
    pub plane_count_range: (usize, usize),
    pub geometric_objects: (usize, usize),
    pub background_objects: (usize, usize),
    /// Plane area as a fraction of the table area.
    pub plane_area: (f64, f64),
    pub object_clearance: f64,
    pub plane_clearance: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_place_attempts: 200,
            max_layout_restarts: 64,
            plane_count_range: (1, 5),
            geometric_objects: (1, 10),
            background_objects: (1, 12),
            plane_area: (0.03, 0.12),
            object_clearance: 0.01,
            plane_clearance: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("invalid sampler config: {0}")]
    InvalidConfig(String),
    #[error("could not place {entity} in scene {scene_id} within {attempts} attempts")]
    PlacementExhausted {
        scene_id: u64,
        entity: String,
        attempts: u32,
    },
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<(), SamplerError> {
        let bad = |msg: &str| Err(SamplerError::InvalidConfig(msg.to_string()));
        let ranges = [
            ("plane_count_range", self.plane_count_range),
            ("geometric_objects", self.geometric_objects),
            ("background_objects", self.background_objects),
        ];
        for (name, (lo, hi)) in ranges {
            if lo > hi || hi == 0 {
                return bad(&format!("{name} is empty"));
            }
        }
        if self.max_place_attempts == 0 || self.max_layout_restarts == 0 {
            return bad("attempt budgets must be at least 1");
        }
        let (amin, amax) = self.plane_area;
        if !(amin > 0.0 && amin <= amax && amax < 1.0) {
            return bad("plane_area must satisfy 0 < min <= max < 1");
        }
        if self.object_clearance < 0.0 || self.plane_clearance < 0.0 {
            return bad("clearances must be non-negative");
        }
        Ok(())
    }

    pub fn limits(&self) -> SceneLimits {
        SceneLimits {
            plane_count: self.plane_count_range,
            geometric_objects: self.geometric_objects,
            background_objects: self.background_objects,
            object_clearance: self.object_clearance,
            plane_clearance: self.plane_clearance,
        }
    }
}

/// Samples scene `scene_id`, restarting the whole layout on placement failure.
/// A pure function of `(config, scene_id)`.
pub fn sample_scene(config: &SamplerConfig, scene_id: u64) -> Result<SceneGraph, SamplerError> {
    config.validate()?;
    let mut last = None;
    for attempt in 0..config.max_layout_restarts {
        match sample_scene_attempt(config, scene_id, attempt) {
            Ok(scene) => return Ok(scene),
            Err(e @ SamplerError::PlacementExhausted { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one layout attempt"))
}

/// One layout attempt on the stream `(seed, scene_id, attempt)`.
pub fn sample_scene_attempt(config: &SamplerConfig, scene_id: u64, attempt: u32) -> Result<SceneGraph, SamplerError> {
    let stream_seed = rng::derive_seed(config.seed, &[tag::SCENE, scene_id, attempt as u64]);
    let mut rng = <Rng as rand::SeedableRng>::seed_from_u64(stream_seed);
    let exhausted = |entity: String| SamplerError::PlacementExhausted {
        scene_id,
        entity,
        attempts: config.max_place_attempts,
    };

    // The plane count comes from a stream that ignores `attempt`, so layout restarts
    // do not bias scenes towards fewer planes.
    let (plo, phi) = config.plane_count_range;
    let plane_count = rng::stream(config.seed, &[tag::SCENE, scene_id]).gen_range(plo..=phi);
    let mut planes = vec![PlaneAttributes::background()];
    for idx in 1..=plane_count {
        let shape = *PlaneShape::GEOMETRIC.choose(&mut rng).unwrap();
        let material = *PlaneMaterial::ALL.choose(&mut rng).unwrap();
        let color = *PlaneColor::GEOMETRIC.choose(&mut rng).unwrap();
        let region = (0..config.max_place_attempts)
            .map(|_| sample_plane_geometry(shape, config.plane_area, &mut rng))
            .find(|r| {
                planes
                    .iter()
                    .skip(1)
                    .all(|p: &PlaneAttributes| p.region.separated_by(r, config.plane_clearance))
            })
            .ok_or_else(|| exhausted(format!("plane {idx}")))?;
        planes.push(PlaneAttributes {
            id: idx,
            shape,
            material: Some(material),
            color,
            region,
        });
    }

    let mut objects: Vec<ObjectAttributes> = Vec::new();
    let mut containment = Vec::new();
    let order: Vec<usize> = (1..planes.len()).chain(std::iter::once(0)).collect();
    for plane_id in order {
        let target = if plane_id == 0 {
            let (lo, hi) = config.background_objects;
            rng.gen_range(lo..=hi)
        } else {
            let (lo, hi) = config.geometric_objects;
            let cap = capacity(&planes[plane_id].region).clamp(lo, hi);
            rng.gen_range(lo..=cap)
        };
        for _ in 0..target {
            let obj = place_object(config, &planes, plane_id, &objects, &mut rng)
                .ok_or_else(|| exhausted(format!("object {} on plane {plane_id}", objects.len())))?;
            objects.push(obj);
            containment.push(plane_id);
        }
    }

    Ok(SceneGraph {
        scene_id,
        rng_seed: stream_seed,
        planes,
        objects,
        containment,
    })
}

/// Rough number of objects a plane can hold with clearance.
fn capacity(region: &Region) -> usize {
    (region.area() / 0.0105).floor() as usize
}

fn place_object(
    config: &SamplerConfig,
    planes: &[PlaneAttributes],
    plane_id: usize,
    placed: &[ObjectAttributes],
    rng: &mut Rng,
) -> Option<ObjectAttributes> {
    let shape = *ObjectShape::ALL.choose(rng).unwrap();
    let size = *Size::ALL.choose(rng).unwrap();
    let material = *ObjectMaterial::ALL.choose(rng).unwrap();
    let color = *ObjectColor::ALL.choose(rng).unwrap();
    let (rlo, rhi) = size.radius_range();
    let radius = rng.gen_range(rlo..=rhi);
    let (xmin, xmax, ymin, ymax) = bounding_box(&planes[plane_id].region);
    let (xmin, xmax) = (xmin.max(radius), xmax.min(1.0 - radius));
    let (ymin, ymax) = (ymin.max(radius), ymax.min(1.0 - radius));
    if xmin >= xmax || ymin >= ymax {
        return None;
    }
    for _ in 0..config.max_place_attempts {
        let position = Point::new(rng.gen_range(xmin..xmax), rng.gen_range(ymin..ymax));
        let candidate = ObjectAttributes {
            id: placed.len(),
            shape,
            size,
            material,
            color,
            position,
            radius,
        };
        if !spatial::contains(planes, plane_id, &candidate) {
            continue;
        }
        let clear_of_planes = planes
            .iter()
            .filter(|p| p.is_geometric() && p.id != plane_id)
            .all(|p| p.region.disc_gap(position, radius) >= config.plane_clearance);
        let clear_of_objects = placed
            .iter()
            .all(|o| o.position.dist(position) - o.radius - radius >= config.object_clearance);
        if clear_of_planes && clear_of_objects {
            return Some(candidate);
        }
    }
    None
}

fn bounding_box(region: &Region) -> (f64, f64, f64, f64) {
    match region {
        Region::Background => (0.0, 1.0, 0.0, 1.0),
        Region::Disc { center, radius } => (center.x - radius, center.x + radius, center.y - radius, center.y + radius),
        Region::Polygon { vertices } => vertices.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), v| (a.min(v.x), b.max(v.x), c.min(v.y), d.max(v.y)),
        ),
    }
}

/// Samples a region of the given geometric shape with area uniform in `area`, placed
/// uniformly at random where it fits inside the unit table. Polygons are counterclockwise.
pub fn sample_plane_geometry(shape: PlaneShape, area: (f64, f64), rng: &mut Rng) -> Region {
    assert!(shape != PlaneShape::NonGeometric, "background has no sampled geometry");
    let target = rng.gen_range(area.0..=area.1);
    match shape {
        PlaneShape::Circular => {
            let radius = (target / PI).sqrt();
            let center = Point::new(rng.gen_range(radius..1.0 - radius), rng.gen_range(radius..1.0 - radius));
            Region::Disc { center, radius }
        }
        PlaneShape::Triangular => {
            let base = rng.gen_range(0.0..2.0 * PI);
            let raw: Vec<Point> = (0..3)
                .map(|k| {
                    let angle = base + 2.0 * PI * k as f64 / 3.0 + rng.gen_range(-0.35..0.35);
                    let r = rng.gen_range(0.8..1.2);
                    Point::new(r * angle.cos(), r * angle.sin())
                })
                .collect();
            place_polygon(raw, target, rng)
        }
        PlaneShape::Rectangular => {
            let aspect = rng.gen_range(1.0..2.0f64);
            let h = (target / aspect).sqrt();
            let w = h * aspect;
            let rot = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..PI / 2.0) };
            let (c, s) = (rot.cos(), rot.sin());
            let raw = [(-w, -h), (w, -h), (w, h), (-w, h)]
                .iter()
                .map(|&(x, y)| Point::new(0.5 * (x * c - y * s), 0.5 * (x * s + y * c)))
                .collect();
            place_polygon(raw, target, rng)
        }
        PlaneShape::NonGeometric => unreachable!(),
    }
}

fn place_polygon(raw: Vec<Point>, target_area: f64, rng: &mut Rng) -> Region {
    let scale = (target_area / signed_area(&raw).abs()).sqrt();
    let mut pts: Vec<Point> = raw.iter().map(|p| Point::new(p.x * scale, p.y * scale)).collect();
    if signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    let (xmin, xmax, ymin, ymax) = bounding_box(&Region::Polygon { vertices: pts.clone() });
    let dx = rng.gen_range(-xmin..(1.0 - xmax));
    let dy = rng.gen_range(-ymin..(1.0 - ymax));
    let vertices = pts.into_iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect();
    Region::Polygon { vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::validate_scene_with;

    #[test]
    fn deterministic_per_seed_and_id() {
        let config = SamplerConfig { seed: 1, ..Default::default() };
        let a = serde_json::to_string(&sample_scene(&config, 0).unwrap()).unwrap();
        let b = serde_json::to_string(&sample_scene(&config, 0).unwrap()).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&sample_scene(&config, 1).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn forced_bounds() {
        let config = SamplerConfig {
            seed: 3,
            plane_count_range: (1, 1),
            geometric_objects: (1, 1),
            ..Default::default()
        };
        for id in 0..50 {
            let scene = sample_scene(&config, id).unwrap();
            assert_eq!(scene.geometric_planes().count(), 1);
            assert_eq!(scene.objects_on(1).count(), 1);
            let bg = scene.objects_on(0).count();
            assert!((1..=12).contains(&bg));
            assert!(validate_scene_with(&scene, &config.limits()).is_valid());
        }
    }

    #[test]
    fn plane_geometry_contracts() {
        let mut rng = rng::stream(9, &[]);
        for _ in 0..500 {
            for &shape in PlaneShape::GEOMETRIC {
                let region = sample_plane_geometry(shape, (0.03, 0.12), &mut rng);
                let area = region.area();
                assert!((0.03 - 1e-9..=0.12 + 1e-9).contains(&area), "{shape} area {area}");
                assert!(region.within_unit_square());
                match (&shape, &region) {
                    (PlaneShape::Circular, Region::Disc { radius, .. }) => {
                        let r_lo = (0.03 / PI).sqrt();
                        let r_hi = (0.12 / PI).sqrt();
                        assert!(*radius >= r_lo - 1e-12 && *radius <= r_hi + 1e-12);
                    }
                    (PlaneShape::Triangular, Region::Polygon { vertices }) => {
                        assert_eq!(vertices.len(), 3);
                        assert!(signed_area(vertices) > 0.0);
                    }
                    (PlaneShape::Rectangular, Region::Polygon { vertices }) => {
                        assert_eq!(vertices.len(), 4);
                        assert!(vertices.iter().all(|v| v.in_unit_square()));
                    }
                    _ => panic!("shape/region mismatch"),
                }
            }
        }
    }

    #[test]
    fn rejects_empty_ranges() {
        let config = SamplerConfig {
            plane_count_range: (3, 2),
            ..Default::default()
        };
        assert!(matches!(sample_scene(&config, 0), Err(SamplerError::InvalidConfig(_))));
        let config = SamplerConfig {
            max_place_attempts: 0,
            ..Default::default()
        };
        assert!(config.validate().is_err());
    }

    #[test]
    fn exhaustion_is_reported() {
        // Objects cannot fit on planes this small.
        let config = SamplerConfig {
            plane_area: (0.0005, 0.0006),
            max_layout_restarts: 2,
            max_place_attempts: 5,
            ..Default::default()
        };
        assert!(matches!(sample_scene(&config, 0), Err(SamplerError::PlacementExhausted { .. })));
    }
}
