//! Program execution checked against a naive re-implementation, and rewrites checked for
//! equivalence across scenes.

mod common;

use std::collections::BTreeMap;

use common::{difference, intersection, oracle, Param};
use qlevr_gen::program::*;
use qlevr_gen::quantifier::{QuantifierExpr, QuantifierKind};
use qlevr_gen::rng;
use qlevr_gen::sampler::{sample_scene, SamplerConfig};
use qlevr_gen::scene::{ObjectAttributes, SceneGraph, Size};
use qlevr_gen::spatial::SpatialRelation;

fn attrs_match(f: &ObjectFilter, o: &ObjectAttributes) -> bool {
    f.size.is_none_or(|v| v == o.size)
        && f.color.is_none_or(|v| v == o.color)
        && f.material.is_none_or(|v| v == o.material)
        && f.shape.is_none_or(|v| v == o.shape)
}

/// Sector of `to` seen from `from`, counterclockwise from +x in 45° steps.
fn sector(from: &ObjectAttributes, to: &ObjectAttributes) -> Option<usize> {
    let (dx, dy) = (to.position.x - from.position.x, to.position.y - from.position.y);
    if dx == 0.0 && dy == 0.0 {
        return None;
    }
    let deg = dy.atan2(dx).to_degrees().rem_euclid(360.0);
    Some(((deg / 45.0).round() as usize) % 8)
}

/// A diagonal satisfies both of its cardinal neighbours.
fn naive_rel(from: &ObjectAttributes, to: &ObjectAttributes, rel: SpatialRelation) -> bool {
    let Some(s) = sector(from, to) else { return false };
    let r = rel.sector();
    s == r || (r.is_multiple_of(2) && ((s + 1) % 8 == r || (r + 1) % 8 == s))
}

fn unique(scene: &SceneGraph, desc: &ObjectFilter, within: &[usize]) -> Option<usize> {
    let hits: Vec<usize> = within.iter().copied().filter(|&o| attrs_match(desc, &scene.objects[o])).collect();
    (hits.len() == 1).then(|| hits[0])
}

fn filter(scene: &SceneGraph, f: &ObjectFilter, within: &[usize]) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = within.iter().copied().filter(|&o| attrs_match(f, &scene.objects[o])).collect();
    if let Some(sp) = &f.spatial {
        let anchor = unique(scene, &sp.anchor, within)?;
        out.retain(|&o| o != anchor && naive_rel(&scene.objects[anchor], &scene.objects[o], sp.relation));
    }
    Some(out)
}

fn param(q: &QuantifierExpr) -> Param {
    if let Some(n) = q.n {
        Param::N(n)
    } else if let Some((lo, hi)) = q.range {
        Param::Range(lo, hi)
    } else if let Some(f) = q.fraction {
        Param::Frac(f.num, f.den)
    } else if let Some(c) = q.exception {
        Param::Except(c)
    } else {
        Param::None
    }
}

/// The printed formula with the negation flags applied by hand.
fn truth_of(q: &QuantifierExpr, p: &[usize], a: &[usize], b: &[usize]) -> Option<bool> {
    let b = if q.inner_negated { difference(p, b) } else { b.to_vec() };
    let v = oracle(q.kind, param(q), a, &b)?;
    Some(v != q.outer_negated)
}

fn presupposes(kind: QuantifierKind) -> bool {
    use QuantifierKind as K;
    matches!(
        kind,
        K::All
            | K::NotAll
            | K::Most
            | K::SomeButNotAll
            | K::AllButAtMostN
            | K::AllButAtLeastN
            | K::EveryExcept
            | K::NoExcept
            | K::MoreThanF
            | K::AtLeastF
            | K::FewerThanF
            | K::AtMostF
    )
}

fn nested_scope(
    scene: &SceneGraph,
    on: &[usize],
    a: &[usize],
    c: &[usize],
    q: &QuantifierExpr,
    rel: impl Fn(&ObjectAttributes, &ObjectAttributes) -> bool,
) -> Option<Vec<usize>> {
    let mut b = Vec::new();
    for &x in on {
        let others: Vec<usize> = c.iter().copied().filter(|&y| y != x).collect();
        let related: Vec<usize> = on.iter().copied().filter(|&y| y != x && rel(&scene.objects[x], &scene.objects[y])).collect();
        let v = if others.is_empty() && presupposes(q.tag()) { None } else { truth_of(q, on, &others, &related) };
        match v {
            Some(true) => b.push(x),
            Some(false) => {}
            None if a.contains(&x) => return None,
            None => {}
        }
    }
    Some(b)
}

/// Answer computed from lists and the printed formulas; plane selection is the engine's.
fn naive_answer(p: &QuestionProgram, scene: &SceneGraph) -> Option<bool> {
    let planes = select_planes(&p.plane_selector, scene).ok()?;
    let all: Vec<usize> = scene.objects.iter().map(|o| o.id).collect();
    let on: Vec<usize> = all.iter().copied().filter(|&o| planes.contains(&scene.plane_of(o))).collect();
    let (universe, a, b) = match &p.scope {
        Scope::OnPlanes => (all.clone(), filter(scene, &p.restrictor, &all)?, on),
        Scope::Related { relation, anchor } => {
            let anchor = unique(scene, anchor, &on)?;
            let a: Vec<usize> = filter(scene, &p.restrictor, &on)?.into_iter().filter(|&o| o != anchor).collect();
            let b = on.iter().copied().filter(|&o| o != anchor && naive_rel(&scene.objects[anchor], &scene.objects[o], *relation)).collect();
            (on, a, b)
        }
        Scope::Compared { comparison } => {
            let a = filter(scene, &p.restrictor, &on)?;
            let b = filter(scene, comparison, &on)?;
            if a.is_empty() || b.is_empty() {
                return None;
            }
            (on, a, b)
        }
        Scope::SameAttribute { attribute, comparison } => {
            let a = filter(scene, &p.restrictor, &on)?;
            let c = filter(scene, comparison, &on)?;
            if a.is_empty() || c.is_empty() {
                return None;
            }
            let same = |x: &ObjectAttributes, y: &ObjectAttributes| match attribute {
                ObjectAttr::Size => x.size == y.size,
                ObjectAttr::Color => x.color == y.color,
                ObjectAttr::Material => x.material == y.material,
                ObjectAttr::Shape => x.shape == y.shape,
            };
            let b = nested_scope(scene, &on, &a, &c, &p.quantifiers[1], same)?;
            (on, a, b)
        }
        Scope::SizeRelation { larger, comparison } => {
            let a = filter(scene, &p.restrictor, &on)?;
            let c = filter(scene, comparison, &on)?;
            if a.is_empty() || c.is_empty() {
                return None;
            }
            let (big, small) = if *larger { (Size::Large, Size::Small) } else { (Size::Small, Size::Large) };
            let b = nested_scope(scene, &on, &a, &c, &p.quantifiers[1], |x, y| x.size == big && y.size == small)?;
            (on, a, b)
        }
    };
    let mut q = p.quantifiers[0].clone();
    if let Some(desc) = &p.exception {
        q.exception = Some(unique(scene, desc, &universe)?);
    }
    if a.is_empty() && presupposes(q.tag()) {
        return None;
    }
    // Sanity on the sets themselves before applying the formula.
    assert_eq!(intersection(&a, &universe).len(), a.len());
    truth_of(&q, &universe, &a, &b)
}

#[test]
fn engine_matches_naive_reimplementation_for_every_form() {
    let config = SamplerConfig { seed: 77, ..Default::default() };
    let families = FamilyId::all();
    let mut answered: BTreeMap<ObjectForm, usize> = BTreeMap::new();
    let mut scene_id = 0;
    while answered.len() < 6 || answered.values().any(|&n| n < 1000) {
        assert!(scene_id < 5_000, "not enough answerable programs: {answered:?}");
        let scene = sample_scene(&config, scene_id).unwrap();
        for (i, &family) in families.iter().enumerate() {
            let mut r = rng::stream(77, &[scene_id, i as u64]);
            for _ in 0..3 {
                let Ok(p) = generate_candidate(family, &scene, &mut r) else { continue };
                match run_program(&p, &scene) {
                    Outcome::Answer(b) => {
                        assert_eq!(naive_answer(&p, &scene), Some(b), "scene {scene_id}: {p:#?}");
                        *answered.entry(family.object).or_default() += 1;
                    }
                    Outcome::Rejected(_) => {}
                }
            }
        }
        scene_id += 1;
    }
}

#[test]
fn rewrites_agree_with_the_original_on_other_scenes() {
    let config = SamplerConfig { seed: 99, ..Default::default() };
    let scenes: Vec<SceneGraph> = (0..100).map(|id| sample_scene(&config, id).unwrap()).collect();
    let families = FamilyId::all();
    let mut programs = Vec::new();
    let mut k = 0u64;
    while programs.len() < 1000 {
        let scene = &scenes[(k % 100) as usize];
        let family = families[(k % families.len() as u64) as usize];
        let mut r = rng::stream(99, &[k]);
        k += 1;
        if let Ok(p) = generate_candidate(family, scene, &mut r) {
            if run_program(&p, scene).answer().is_some() {
                programs.push(p);
            }
        }
    }
    let mut compared = 0;
    for p in &programs {
        let rewrites = equivalent_rewrites(p);
        for scene in &scenes {
            let base = run_program(p, scene).answer();
            for r in &rewrites {
                assert_eq!(run_program(r, scene).answer(), base, "{p:?} vs {r:?} on scene {}", scene.scene_id);
                compared += 1;
            }
        }
    }
    assert!(compared >= 100_000, "only {compared} comparisons");
}
