//! Random construction of candidate programs for a family on a given scene.
//!
//! Candidates are grounded in the scene (descriptions are taken from objects and planes
//! that exist) so that a useful share of them survive the restriction layer. Whether a
//! candidate is well-posed is still decided by [`run_program`](super::run_program).

use rand::seq::SliceRandom;
use rand::Rng as _;
use thiserror::Error;

use super::select::{count_on, select_planes};
use super::*;
use crate::quantifier::{Arity, QuantifierExpr, QuantifierKind};
use crate::rng::Rng;
use crate::scene::{ObjectAttributes, PlaneAttributes, PlaneId, SceneGraph};
use crate::spatial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("family {family} does not fit scene {scene_id}: {reason}")]
    NotApplicable { family: FamilyId, scene_id: u64, reason: String },
}

/// Outer quantifiers for the existence and nested-comparison forms.
const OUTER_KINDS: [QuantifierKind; 22] = {
    use QuantifierKind::*;
    [
        All, Most, NotAll, No, Some, SomeButNotAll, ExactlyN, NotExactlyN, Between, NotBetween, AllButAtMostN,
        AllButAtLeastN, MoreThanN, AtLeastN, FewerThanN, AtMostN, MoreThanF, AtLeastF, FewerThanF, AtMostF,
        EveryExcept, NoExcept,
    ]
};

/// Quantifiers over the comparison set in nested forms ("as most of the cylinders").
const INNER_KINDS: [QuantifierKind; 13] = {
    use QuantifierKind::*;
    [
        All, Most, Some, ExactlyN, Between, MoreThanN, AtLeastN, FewerThanN, AtMostN, MoreThanF, AtLeastF,
        FewerThanF, AtMostF,
    ]
};

const COMPARATIVE_KINDS: [QuantifierKind; 3] =
    [QuantifierKind::MoreOThanO, QuantifierKind::FewerOThanO, QuantifierKind::EqualOAndO];

const FRACTIONS: [(u32, u32); 8] = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 5)];

const SELECTOR_TRIES: usize = 24;

/// Draws one candidate program for `family` on `scene`. The plane selector is guaranteed to
/// select; the object clause may still be rejected when the program is run.
pub fn generate_candidate(family: FamilyId, scene: &SceneGraph, rng: &mut Rng) -> Result<QuestionProgram, GenerationError> {
    let fail = |reason: &str| GenerationError::NotApplicable { family, scene_id: scene.scene_id, reason: reason.into() };
    let (selector, planes) = (0..SELECTOR_TRIES)
        .find_map(|_| {
            let sel = build_selector(family.plane, scene, rng)?;
            let planes = select_planes(&sel, scene).ok()?;
            Some((sel, planes))
        })
        .ok_or_else(|| fail("no plane description selects"))?;
    let on: Vec<&ObjectAttributes> = scene.objects.iter().filter(|o| planes.contains(&scene.plane_of(o.id))).collect();
    let clause = build_clause(family.object, scene, &on, rng).ok_or_else(|| fail("no object clause fits the selected planes"))?;
    Ok(QuestionProgram {
        family,
        plane_selector: selector,
        form: family.object,
        restrictor: clause.restrictor,
        scope: clause.scope,
        quantifiers: clause.quantifiers,
        exception: clause.exception,
    })
}

// ---- plane side -------------------------------------------------------------------------

fn build_selector(form: PlaneForm, scene: &SceneGraph, rng: &mut Rng) -> Option<PlaneSelector> {
    let geometric: Vec<&PlaneAttributes> = scene.geometric_planes().collect();
    let target = *geometric.choose(rng)?;
    let blank = |filter: PlaneFilter, plural: bool| PlaneSelector { form, ..PlaneSelector::attribute(filter, plural) };
    let sel = match form {
        PlaneForm::Attribute => {
            if rng.gen_bool(1.0 / (geometric.len() as f64 + 1.0)) {
                PlaneSelector::non_geometric()
            } else {
                let filter = plane_filter(target, rng, false);
                let plural = matching_planes(scene, &filter) > 1;
                blank(filter, plural)
            }
        }
        PlaneForm::UniqueAttribute => {
            let attr = *[PlaneAttr::Shape, PlaneAttr::Color, PlaneAttr::Material].choose(rng)?;
            PlaneSelector {
                unique_attribute: Some(attr),
                ..blank(PlaneFilter { geometric: true, ..Default::default() }, false)
            }
        }
        PlaneForm::AttributeSpatial => {
            let anchor = *geometric.iter().filter(|p| p.id != target.id).collect::<Vec<_>>().choose(rng)?;
            let anchor_filter = unique_plane_filter(anchor, &geometric, rng)?;
            let mut relation = spatial::relate(anchor.region.centroid(), target.region.centroid()).ok()?;
            if !relation.is_cardinal() && rng.gen_bool(0.5) {
                relation = *relation.components().choose(rng)?;
            }
            let filter = if rng.gen_bool(0.3) { PlaneFilter::default() } else { plane_filter(target, rng, false) };
            let mut sel = PlaneSelector {
                spatial: Some(PlaneSpatial { relation, anchor: anchor_filter }),
                ..blank(filter, true)
            };
            sel.plural = select_planes(&sel, scene).ok()?.len() > 1;
            sel
        }
        PlaneForm::EachCount => count_selector(form, scene, target, PlaneFilter::default(), true, rng)?,
        PlaneForm::SingularCount | PlaneForm::SingularExactly | PlaneForm::SingularNone => {
            let filter = if rng.gen_bool(0.3) { PlaneFilter::default() } else { plane_filter(target, rng, false) };
            count_selector(form, scene, target, filter, false, rng)?
        }
        PlaneForm::SingularNotBetween => count_selector(form, scene, target, PlaneFilter::default(), false, rng)?,
        PlaneForm::AttributeEachBetween | PlaneForm::AttributeEachNotExactly => {
            let filter = plane_filter(target, rng, false);
            count_selector(form, scene, target, filter, true, rng)?
        }
        PlaneForm::AttributeTotal => {
            let filter = plane_filter(target, rng, false);
            let plural = matching_planes(scene, &filter) > 1;
            count_selector(form, scene, target, filter, plural, rng)?
        }
    };
    Some(sel)
}

fn matching_planes(scene: &SceneGraph, filter: &PlaneFilter) -> usize {
    scene.planes.iter().filter(|p| filter.matches(p)).count()
}

/// Non-empty random subset of a geometric plane's attributes.
fn plane_filter(plane: &PlaneAttributes, rng: &mut Rng, allow_empty: bool) -> PlaneFilter {
    loop {
        let f = PlaneFilter {
            shape: rng.gen_bool(0.5).then_some(plane.shape),
            color: rng.gen_bool(0.5).then_some(plane.color),
            material: if rng.gen_bool(0.5) { plane.material } else { None },
            geometric: false,
        };
        if allow_empty || !f.is_universal() {
            return f;
        }
    }
}

/// A plane description that only `plane` satisfies, preferring few attributes.
fn unique_plane_filter(plane: &PlaneAttributes, geometric: &[&PlaneAttributes], rng: &mut Rng) -> Option<PlaneFilter> {
    let mut options: Vec<PlaneFilter> = (1u8..8)
        .map(|mask| PlaneFilter {
            shape: (mask & 1 != 0).then_some(plane.shape),
            color: (mask & 2 != 0).then_some(plane.color),
            material: if mask & 4 != 0 { plane.material } else { None },
            geometric: false,
        })
        .filter(|f| geometric.iter().filter(|p| f.matches(p)).count() == 1)
        .collect();
    options.shuffle(rng);
    options.sort_by_key(|f| [f.shape.is_some(), f.color.is_some(), f.material.is_some()].iter().filter(|&&b| b).count());
    options.into_iter().next()
}

fn count_selector(
    form: PlaneForm,
    scene: &SceneGraph,
    target: &PlaneAttributes,
    filter: PlaneFilter,
    plural: bool,
    rng: &mut Rng,
) -> Option<PlaneSelector> {
    use QuantifierKind as K;
    let objects = count_filter(scene, target.id, rng);
    let c = count_on(scene, target.id, &objects) as u32;
    let (quantifier, mode) = match form {
        PlaneForm::EachCount | PlaneForm::SingularCount => {
            let kind = *[K::AtLeastN, K::AtMostN, K::MoreThanN, K::FewerThanN].choose(rng)?;
            let n = match kind {
                K::AtLeastN => rng.gen_range(1..=c.max(1)),
                K::MoreThanN => rng.gen_range(0..c.max(1)),
                K::AtMostN => rng.gen_range(c..=c + 2),
                _ => rng.gen_range(c + 1..=c + 3),
            };
            (QuantifierExpr::count(kind, n), CountMode::EachPlane)
        }
        PlaneForm::AttributeEachBetween => {
            let lo = rng.gen_range(c.saturating_sub(2)..=c).max(1);
            let hi = rng.gen_range(lo.max(c)..=c + 3).max(lo + 1);
            (QuantifierExpr::between(K::Between, lo, hi), CountMode::EachPlane)
        }
        PlaneForm::SingularExactly => (QuantifierExpr::count(K::ExactlyN, c), CountMode::EachPlane),
        PlaneForm::SingularNotBetween => {
            let (lo, hi) = if c >= 3 && rng.gen_bool(0.5) {
                let hi = rng.gen_range(1..c);
                (rng.gen_range(0..hi), hi)
            } else {
                let lo = c + 1;
                (lo, lo + rng.gen_range(1..=3))
            };
            (QuantifierExpr::between(K::NotBetween, lo, hi), CountMode::EachPlane)
        }
        PlaneForm::AttributeEachNotExactly => {
            let n = loop {
                let n = rng.gen_range(0..=c + 2);
                if n != c {
                    break n;
                }
            };
            (QuantifierExpr::count(K::NotExactlyN, n), CountMode::EachPlane)
        }
        PlaneForm::SingularNone => {
            if c != 0 {
                return None;
            }
            (QuantifierExpr::new(K::No), CountMode::EachPlane)
        }
        PlaneForm::AttributeTotal => {
            let total: usize =
                scene.planes.iter().filter(|p| filter.matches(p)).map(|p| count_on(scene, p.id, &objects)).sum();
            if total == 0 {
                return None;
            }
            (QuantifierExpr::count(K::ExactlyN, total as u32), CountMode::Total)
        }
        _ => return None,
    };
    Some(PlaneSelector {
        form,
        filter,
        plural,
        unique_attribute: None,
        spatial: None,
        count: Some(CountConstraint { quantifier, objects, mode }),
    })
}

/// Object description for a plane count, drawn from objects on `plane` (or from anywhere
/// in the scene, so that "not any" constraints can be satisfied).
fn count_filter(scene: &SceneGraph, plane: PlaneId, rng: &mut Rng) -> ObjectFilter {
    let local: Vec<&ObjectAttributes> = scene.objects_on(plane).collect();
    let source = if local.is_empty() || rng.gen_bool(0.25) { scene.objects.iter().collect() } else { local };
    match source.choose(rng) {
        Some(o) if rng.gen_bool(0.9) => describe(o, 1, 2, rng),
        _ => ObjectFilter::default(),
    }
}

// ---- object side ------------------------------------------------------------------------

struct Clause {
    restrictor: ObjectFilter,
    scope: Scope,
    quantifiers: Vec<QuantifierExpr>,
    exception: Option<ObjectFilter>,
}

fn build_clause(form: ObjectForm, scene: &SceneGraph, on: &[&ObjectAttributes], rng: &mut Rng) -> Option<Clause> {
    let everything: Vec<&ObjectAttributes> = scene.objects.iter().collect();
    match form {
        ObjectForm::Existence1 => {
            let pool = if on.is_empty() || rng.gen_bool(0.3) { &everything[..] } else { on };
            let restrictor = if rng.gen_bool(0.1) { ObjectFilter::default() } else { describe(pool.choose(rng)?, 1, 3, rng) };
            let a: Vec<&ObjectAttributes> = everything.iter().copied().filter(|o| restrictor.matches_attributes(o)).collect();
            let inter = a.iter().filter(|o| on.iter().any(|x| x.id == o.id)).count() as u32;
            let (q, exception) = outer_quantifier(&a, &everything, inter, rng)?;
            Some(Clause { restrictor, scope: Scope::OnPlanes, quantifiers: vec![q], exception })
        }
        ObjectForm::Existence2 => {
            let anchor = *on.choose(rng)?;
            let anchor_desc = unique_description(anchor, on, rng)?;
            let others: Vec<&ObjectAttributes> = on.iter().copied().filter(|o| o.id != anchor.id).collect();
            let other = *others.choose(rng)?;
            let relation = relation_towards(anchor, other, rng)?;
            let restrictor = if rng.gen_bool(0.15) { ObjectFilter::default() } else { describe(other, 1, 2, rng) };
            let a: Vec<&ObjectAttributes> = others.iter().copied().filter(|o| restrictor.matches_attributes(o)).collect();
            let inter = a
                .iter()
                .filter(|o| spatial::holds(anchor.position, o.position, relation).unwrap_or(false))
                .count() as u32;
            let (q, exception) = outer_quantifier(&a, on, inter, rng)?;
            Some(Clause {
                restrictor,
                scope: Scope::Related { relation, anchor: anchor_desc },
                quantifiers: vec![q],
                exception,
            })
        }
        ObjectForm::CompareAttributes | ObjectForm::SizeComparison => {
            let (x, y) = two_objects(on, rng)?;
            let attribute = if form == ObjectForm::SizeComparison {
                ObjectAttr::Size
            } else {
                *ObjectAttr::ALL.choose(rng)?
            };
            let mut restrictor = describe(x, 1, 2, rng);
            let mut comparison = describe(y, 1, 2, rng);
            restrictor.clear(attribute);
            comparison.clear(attribute);
            let a: Vec<&ObjectAttributes> = on.iter().copied().filter(|o| restrictor.matches_attributes(o)).collect();
            let c = on.iter().filter(|o| comparison.matches_attributes(o)).count() as u32;
            let inner = inner_quantifier(c, rng)?;
            let guess = rng.gen_range(0..=a.len() as u32);
            let (outer, exception) = outer_quantifier(&a, on, guess, rng)?;
            let scope = if form == ObjectForm::SizeComparison {
                Scope::SizeRelation { larger: rng.gen_bool(0.5), comparison }
            } else {
                Scope::SameAttribute { attribute, comparison }
            };
            Some(Clause { restrictor, scope, quantifiers: vec![outer, inner], exception })
        }
        ObjectForm::QuantityComparison => {
            let (x, y) = two_objects(on, rng)?;
            let restrictor = describe(x, 1, 2, rng);
            let comparison = describe(y, 1, 2, rng);
            let kind = *COMPARATIVE_KINDS.choose(rng)?;
            Some(Clause {
                restrictor,
                scope: Scope::Compared { comparison },
                quantifiers: vec![QuantifierExpr::new(kind)],
                exception: None,
            })
        }
        ObjectForm::SpatialRelations => {
            let anchor = *on.choose(rng)?;
            let anchor_desc = unique_description(anchor, on, rng)?;
            let others: Vec<&ObjectAttributes> = on.iter().copied().filter(|o| o.id != anchor.id).collect();
            let (x, y) = two_objects(&others, rng)?;
            let relation = relation_towards(anchor, x, rng)?;
            let restrictor = ObjectFilter {
                spatial: Some(Box::new(ObjectSpatial { relation, anchor: anchor_desc.clone() })),
                ..describe(x, 1, 2, rng)
            };
            let mut comparison = describe(y, 1, 2, rng);
            if rng.gen_bool(0.5) {
                let relation = relation_towards(anchor, y, rng)?;
                comparison.spatial = Some(Box::new(ObjectSpatial { relation, anchor: anchor_desc }));
            }
            let kind = *COMPARATIVE_KINDS.choose(rng)?;
            Some(Clause {
                restrictor,
                scope: Scope::Compared { comparison },
                quantifiers: vec![QuantifierExpr::new(kind)],
                exception: None,
            })
        }
    }
}

fn two_objects<'a>(pool: &[&'a ObjectAttributes], rng: &mut Rng) -> Option<(&'a ObjectAttributes, &'a ObjectAttributes)> {
    if pool.len() < 2 {
        return None;
    }
    let picked: Vec<_> = pool.choose_multiple(rng, 2).copied().collect();
    Some((picked[0], picked[1]))
}

/// The relation `other` stands in to `anchor`, sometimes coarsened to a cardinal component.
fn relation_towards(anchor: &ObjectAttributes, other: &ObjectAttributes, rng: &mut Rng) -> Option<spatial::SpatialRelation> {
    let actual = spatial::relate(anchor.position, other.position).ok()?;
    Some(if rng.gen_bool(0.2) {
        *spatial::SpatialRelation::ALL.choose(rng)?
    } else if !actual.is_cardinal() && rng.gen_bool(0.5) {
        *actual.components().choose(rng)?
    } else {
        actual
    })
}

/// Random description of `obj` fixing between `lo` and `hi` of its attributes.
fn describe(obj: &ObjectAttributes, lo: usize, hi: usize, rng: &mut Rng) -> ObjectFilter {
    let k = rng.gen_range(lo..=hi);
    let mut attrs = ObjectAttr::ALL;
    attrs.shuffle(rng);
    let mut f = ObjectFilter::default();
    for a in &attrs[..k] {
        match a {
            ObjectAttr::Size => f.size = Some(obj.size),
            ObjectAttr::Color => f.color = Some(obj.color),
            ObjectAttr::Material => f.material = Some(obj.material),
            ObjectAttr::Shape => f.shape = Some(obj.shape),
        }
    }
    f
}

/// A description only `obj` satisfies among `within`, with as few attributes as possible.
/// Shape is always included so the description reads as a noun phrase.
fn unique_description(obj: &ObjectAttributes, within: &[&ObjectAttributes], rng: &mut Rng) -> Option<ObjectFilter> {
    let mut options: Vec<ObjectFilter> = (0u8..8)
        .map(|mask| ObjectFilter {
            shape: Some(obj.shape),
            size: (mask & 1 != 0).then_some(obj.size),
            color: (mask & 2 != 0).then_some(obj.color),
            material: (mask & 4 != 0).then_some(obj.material),
            spatial: None,
        })
        .filter(|f| within.iter().filter(|o| f.matches_attributes(o)).count() == 1)
        .collect();
    options.shuffle(rng);
    options.sort_by_key(ObjectFilter::attribute_count);
    options.into_iter().next()
}

/// An outer quantifier with parameters near the observed `|A∩B|` (`inter`), and the
/// exception description for the except-kinds.
fn outer_quantifier(
    a: &[&ObjectAttributes],
    universe: &[&ObjectAttributes],
    inter: u32,
    rng: &mut Rng,
) -> Option<(QuantifierExpr, Option<ObjectFilter>)> {
    use QuantifierKind as K;
    let kind = *OUTER_KINDS.choose(rng)?;
    let size = a.len() as u32;
    let q = match kind.arity() {
        Arity::None => QuantifierExpr::new(kind),
        Arity::Count => {
            let n = match kind {
                K::AllButAtMostN | K::AllButAtLeastN => rng.gen_range(1..=size.saturating_sub(inter).max(1) + 1),
                _ => near(inter, rng).max(1),
            };
            QuantifierExpr::count(kind, n)
        }
        Arity::Range => {
            let lo = near(inter, rng);
            QuantifierExpr::between(kind, lo, lo + rng.gen_range(1..=3))
        }
        Arity::Fraction => {
            let (num, den) = *FRACTIONS.choose(rng)?;
            QuantifierExpr::fraction(kind, num, den)
        }
        Arity::Exception => {
            let c = *a.choose(rng)?;
            let desc = unique_description(c, universe, rng)?;
            return Some((QuantifierExpr::new(kind), Some(desc)));
        }
    };
    Some((q, None))
}

fn inner_quantifier(comparison_size: u32, rng: &mut Rng) -> Option<QuantifierExpr> {
    let kind = *INNER_KINDS.choose(rng)?;
    Some(match kind.arity() {
        Arity::Count => QuantifierExpr::count(kind, rng.gen_range(1..=comparison_size.clamp(1, 4))),
        Arity::Range => {
            let lo = rng.gen_range(1..=comparison_size.clamp(1, 3));
            QuantifierExpr::between(kind, lo, lo + rng.gen_range(1..=2))
        }
        Arity::Fraction => {
            let (num, den) = *FRACTIONS.choose(rng)?;
            QuantifierExpr::fraction(kind, num, den)
        }
        _ => QuantifierExpr::new(kind),
    })
}

/// A count within two of `x`.
fn near(x: u32, rng: &mut Rng) -> u32 {
    (x as i64 + rng.gen_range(-2..=2)).max(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::sampler::{sample_scene, SamplerConfig};

    #[test]
    fn every_family_produces_answerable_candidates() {
        let config = SamplerConfig { seed: 5, ..Default::default() };
        let scenes: Vec<SceneGraph> = (0..40).map(|i| sample_scene(&config, i).unwrap()).collect();
        for family in FamilyId::all() {
            let mut answered = [0usize; 2];
            for scene in &scenes {
                let mut r = rng::stream(1, &[scene.scene_id]);
                for _ in 0..20 {
                    if let Ok(p) = generate_candidate(family, scene, &mut r) {
                        assert!(p.check_shape().is_ok(), "{family}: {:?}", p.check_shape());
                        if let Outcome::Answer(b) = run_program(&p, scene) {
                            answered[b as usize] += 1;
                        }
                    }
                }
            }
            assert!(answered[0] > 0 && answered[1] > 0, "{family}: {answered:?}");
        }
    }
}
