use std::collections::BTreeSet;

use super::{CountMode, ObjectFilter, PlaneAttr, PlaneSelector, Restriction};
use crate::quantifier::{eval_tally, QuantifierExpr, Semantics, Tally, Verdict};
use crate::scene::{PlaneAttributes, PlaneId, SceneGraph};
use crate::spatial;

/// Plane ids picked out by a selector, or the restriction that rejects it.
pub type Selection = Result<BTreeSet<PlaneId>, Restriction>;

pub fn select_planes(sel: &PlaneSelector, scene: &SceneGraph) -> Selection {
    select_planes_with(sel, scene, Semantics::default())
}

pub(crate) fn select_planes_with(sel: &PlaneSelector, scene: &SceneGraph, semantics: Semantics) -> Selection {
    let mut base: Vec<&PlaneAttributes> = scene.planes.iter().filter(|p| sel.filter.matches(p)).collect();

    if let Some(attr) = sel.unique_attribute {
        let geometric: Vec<&PlaneAttributes> = scene.geometric_planes().collect();
        if geometric.len() < 2 {
            return Err(Restriction::odd("uniqueness needs at least two geometric planes"));
        }
        base.retain(|p| {
            p.is_geometric() && geometric.iter().filter(|q| q.id != p.id).all(|q| !same_plane_attr(attr, p, q))
        });
    }

    let mut narrowed = base.clone();
    let mut restricted = false;

    if let Some(sp) = &sel.spatial {
        let anchors: Vec<&PlaneAttributes> = scene.geometric_planes().filter(|p| sp.anchor.matches(p)).collect();
        let anchor = match anchors.as_slice() {
            [] => return Err(Restriction::ill_posed("anchor plane does not exist")),
            [a] => *a,
            _ => return Err(Restriction::odd("anchor plane description is ambiguous")),
        };
        let origin = anchor.region.centroid();
        base.retain(|p| p.is_geometric() && p.id != anchor.id);
        narrowed = base
            .iter()
            .copied()
            .filter(|p| spatial::holds(origin, p.region.centroid(), sp.relation).unwrap_or(false))
            .collect();
        restricted = true;
    }

    if let Some(count) = &sel.count {
        match count.mode {
            CountMode::EachPlane => {
                let mut kept = Vec::new();
                for p in narrowed {
                    if count_holds(&count.quantifier, count_on(scene, p.id, &count.objects), semantics)? {
                        kept.push(p);
                    }
                }
                narrowed = kept;
                restricted = true;
            }
            CountMode::Total => {
                // A presupposition about the selected planes, not a narrowing filter.
                let total = narrowed.iter().map(|p| count_on(scene, p.id, &count.objects)).sum();
                if !narrowed.is_empty() && !count_holds(&count.quantifier, total, semantics)? {
                    return Err(Restriction::ill_posed(format!("selected planes do not hold a total of {total}")));
                }
            }
        }
    }

    if restricted && narrowed.len() >= base.len() {
        return Err(Restriction::odd("plane restriction does not narrow the selection"));
    }
    if narrowed.is_empty() {
        return Err(Restriction::ill_posed("no plane matches the description"));
    }
    if !sel.plural && narrowed.len() != 1 {
        return Err(Restriction::odd(format!("definite singular plane matches {} planes", narrowed.len())));
    }
    Ok(narrowed.iter().map(|p| p.id).collect())
}

fn same_plane_attr(attr: PlaneAttr, a: &PlaneAttributes, b: &PlaneAttributes) -> bool {
    match attr {
        PlaneAttr::Shape => a.shape == b.shape,
        PlaneAttr::Color => a.color == b.color,
        PlaneAttr::Material => a.material == b.material,
    }
}

/// Objects on `plane` matching the attribute part of `filter`.
pub(crate) fn count_on(scene: &SceneGraph, plane: PlaneId, filter: &ObjectFilter) -> usize {
    scene.objects_on(plane).filter(|o| filter.matches_attributes(o)).count()
}

fn count_holds(q: &QuantifierExpr, count: usize, semantics: Semantics) -> Result<bool, Restriction> {
    match eval_tally(q, &Tally::count(count), semantics) {
        Ok(Verdict::Holds(b)) => Ok(b),
        Ok(Verdict::IllPosed) => Err(Restriction::ill_posed("plane count quantifier is undefined")),
        Err(e) => Err(Restriction::ill_posed(format!("plane count quantifier: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, Region};
    use crate::program::{CountConstraint, PlaneFilter, PlaneForm, PlaneSpatial};
    use crate::quantifier::QuantifierKind;
    use crate::scene::*;
    use crate::spatial::SpatialRelation;

    fn plane(id: usize, shape: PlaneShape, color: PlaneColor, x: f64, y: f64) -> PlaneAttributes {
        PlaneAttributes {
            id,
            shape,
            material: Some(PlaneMaterial::Wood),
            color,
            region: Region::Disc { center: Point::new(x, y), radius: 0.1 },
        }
    }

    fn object(id: usize, shape: ObjectShape, x: f64, y: f64) -> ObjectAttributes {
        ObjectAttributes {
            id,
            shape,
            size: Size::Small,
            material: ObjectMaterial::Rubber,
            color: ObjectColor::Red,
            position: Point::new(x, y),
            radius: 0.02,
        }
    }

    fn scene(planes: Vec<PlaneAttributes>, objects: Vec<(ObjectAttributes, PlaneId)>) -> SceneGraph {
        let mut all = vec![PlaneAttributes::background()];
        all.extend(planes);
        SceneGraph {
            scene_id: 0,
            rng_seed: 0,
            planes: all,
            containment: objects.iter().map(|o| o.1).collect(),
            objects: objects.into_iter().map(|o| o.0).collect(),
        }
    }

    #[test]
    fn non_geometric_selector_picks_background() {
        let s = scene(vec![plane(1, PlaneShape::Circular, PlaneColor::Black, 0.3, 0.3)], vec![]);
        assert_eq!(select_planes(&PlaneSelector::non_geometric(), &s).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn each_plane_between_narrows_to_matching_plane() {
        let mut objects = Vec::new();
        let mut id = 0;
        for (pid, n, x) in [(1, 2, 0.25), (2, 7, 0.75)] {
            for k in 0..n {
                objects.push((object(id, ObjectShape::TriangularPrism, x + 0.001 * k as f64, 0.5), pid));
                id += 1;
            }
        }
        let s = scene(
            vec![
                plane(1, PlaneShape::Circular, PlaneColor::Brown, 0.25, 0.5),
                plane(2, PlaneShape::Triangular, PlaneColor::Brown, 0.75, 0.5),
            ],
            objects,
        );
        let sel = PlaneSelector {
            form: PlaneForm::AttributeEachBetween,
            count: Some(CountConstraint {
                quantifier: QuantifierExpr::between(QuantifierKind::Between, 1, 4),
                objects: ObjectFilter { shape: Some(ObjectShape::TriangularPrism), ..Default::default() },
                mode: CountMode::EachPlane,
            }),
            ..PlaneSelector::attribute(PlaneFilter { color: Some(PlaneColor::Brown), ..Default::default() }, true)
        };
        assert_eq!(select_planes(&sel, &s).unwrap(), BTreeSet::from([1]));

        // Widening the range keeps both planes, which no longer narrows anything.
        let mut wide = sel.clone();
        wide.count.as_mut().unwrap().quantifier = QuantifierExpr::between(QuantifierKind::Between, 1, 9);
        assert_eq!(select_planes(&wide, &s).unwrap_err().kind, super::super::RestrictionKind::PragmaticallyOdd);
    }

    #[test]
    fn unique_shape() {
        let s = scene(
            vec![
                plane(1, PlaneShape::Circular, PlaneColor::Black, 0.2, 0.2),
                plane(2, PlaneShape::Circular, PlaneColor::Gray, 0.5, 0.5),
                plane(3, PlaneShape::Triangular, PlaneColor::Gray, 0.8, 0.8),
            ],
            vec![],
        );
        let sel = PlaneSelector {
            form: PlaneForm::UniqueAttribute,
            unique_attribute: Some(PlaneAttr::Shape),
            ..PlaneSelector::attribute(PlaneFilter { geometric: true, ..Default::default() }, false)
        };
        assert_eq!(select_planes(&sel, &s).unwrap(), BTreeSet::from([3]));
    }

    #[test]
    fn spatial_anchor_must_be_unique_and_narrow() {
        let s = scene(
            vec![
                plane(1, PlaneShape::Circular, PlaneColor::Black, 0.2, 0.5),
                plane(2, PlaneShape::Triangular, PlaneColor::Black, 0.8, 0.5),
                plane(3, PlaneShape::Rectangular, PlaneColor::Gray, 0.5, 0.5),
            ],
            vec![],
        );
        let mut sel = PlaneSelector {
            form: PlaneForm::AttributeSpatial,
            spatial: Some(PlaneSpatial {
                relation: SpatialRelation::Left,
                anchor: PlaneFilter { color: Some(PlaneColor::Gray), ..Default::default() },
            }),
            ..PlaneSelector::attribute(PlaneFilter { color: Some(PlaneColor::Black), ..Default::default() }, true)
        };
        assert_eq!(select_planes(&sel, &s).unwrap(), BTreeSet::from([1]));
        sel.spatial.as_mut().unwrap().anchor = PlaneFilter { color: Some(PlaneColor::Black), ..Default::default() };
        assert!(select_planes(&sel, &s).is_err());
    }
}
