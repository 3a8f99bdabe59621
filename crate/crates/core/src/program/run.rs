use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::select::select_planes_with;
use super::{trivial_reason, ObjectFilter, QuestionProgram, Restriction, Scope};
use crate::quantifier::{eval_with, Arity, QuantifierExpr, QuantifierKind, Semantics, SetArgs, Verdict};
use crate::scene::{ObjectAttributes, ObjectId, SceneGraph, Size};
use crate::spatial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Answer(bool),
    Rejected(Restriction),
}

impl Outcome {
    pub fn answer(&self) -> Option<bool> {
        match self {
            Outcome::Answer(b) => Some(*b),
            Outcome::Rejected(_) => None,
        }
    }
}

pub fn run_program(p: &QuestionProgram, scene: &SceneGraph) -> Outcome {
    run_program_with(p, scene, Semantics::default())
}

pub fn run_program_with(p: &QuestionProgram, scene: &SceneGraph, semantics: Semantics) -> Outcome {
    match execute(p, scene, semantics) {
        Ok(b) => Outcome::Answer(b),
        Err(r) => Outcome::Rejected(r),
    }
}

/// Kinds whose statement presupposes a non-empty restrictor.
pub(crate) fn presupposes_restrictor(kind: QuantifierKind) -> bool {
    use QuantifierKind::*;
    matches!(
        kind,
        All | NotAll | Most | SomeButNotAll | AllButAtMostN | AllButAtLeastN | EveryExcept | NoExcept
    ) || kind.is_proportional()
}

fn execute(p: &QuestionProgram, scene: &SceneGraph, semantics: Semantics) -> Result<bool, Restriction> {
    p.check_shape().map_err(|e| Restriction::ill_posed(format!("malformed program: {e}")))?;
    if let Some(reason) = trivial_reason(p) {
        return Err(Restriction::trivial(reason));
    }
    let planes = select_planes_with(&p.plane_selector, scene, semantics)?;
    let on: BTreeSet<ObjectId> = scene
        .objects
        .iter()
        .filter(|o| planes.contains(&scene.plane_of(o.id)))
        .map(|o| o.id)
        .collect();

    let (universe, restrictor, scope) = match &p.scope {
        Scope::OnPlanes => {
            let universe: BTreeSet<ObjectId> = scene.objects.iter().map(|o| o.id).collect();
            let a = filter_set(scene, &p.restrictor, &universe)?;
            (universe, a, on)
        }
        Scope::Related { relation, anchor } => {
            let anchor = resolve_unique(scene, anchor, &on)?;
            let mut a = filter_set(scene, &p.restrictor, &on)?;
            a.remove(&anchor);
            let origin = scene.objects[anchor].position;
            let b = on
                .iter()
                .copied()
                .filter(|&o| o != anchor && related(origin, &scene.objects[o], *relation))
                .collect();
            (on, a, b)
        }
        Scope::Compared { comparison } => {
            let a = filter_set(scene, &p.restrictor, &on)?;
            let b = filter_set(scene, comparison, &on)?;
            if a.is_empty() || b.is_empty() {
                return Err(Restriction::ill_posed("a compared set is empty"));
            }
            (on, a, b)
        }
        Scope::SameAttribute { attribute, comparison } => {
            let a = filter_set(scene, &p.restrictor, &on)?;
            let c = filter_set(scene, comparison, &on)?;
            if a.is_empty() || c.is_empty() {
                return Err(Restriction::ill_posed("a compared set is empty"));
            }
            let b = inner_scope(scene, &on, &a, &c, &p.quantifiers[1], semantics, |x, y| attribute.same_value(x, y))?;
            (on, a, b)
        }
        Scope::SizeRelation { larger, comparison } => {
            let a = filter_set(scene, &p.restrictor, &on)?;
            let c = filter_set(scene, comparison, &on)?;
            if a.is_empty() || c.is_empty() {
                return Err(Restriction::ill_posed("a compared set is empty"));
            }
            let larger = *larger;
            let b = inner_scope(scene, &on, &a, &c, &p.quantifiers[1], semantics, |x, y| size_relation(x, y, larger))?;
            (on, a, b)
        }
    };

    let mut q = p.quantifiers[0].clone();
    if let Some(desc) = &p.exception {
        q.exception = Some(resolve_unique(scene, desc, &universe)?);
    }
    if restrictor.is_empty() && presupposes_restrictor(q.tag()) {
        return Err(Restriction::ill_posed(format!("`{}` over an empty restrictor", q.tag())));
    }
    evaluate(&q, &SetArgs { universe, restrictor, scope }, semantics)
}

fn evaluate(q: &QuantifierExpr, args: &SetArgs, semantics: Semantics) -> Result<bool, Restriction> {
    match eval_with(q, args, semantics) {
        Ok(Verdict::Holds(b)) => Ok(b),
        Ok(Verdict::IllPosed) => Err(Restriction::ill_posed(format!("`{}` is undefined here", q.tag()))),
        Err(e) => Err(Restriction::ill_posed(e.to_string())),
    }
}

/// `{a ∈ P : Q2(P, C − {a}, {x : rel(a, x)})}`, the scope built by a nested quantifier.
/// Only members of the restrictor `A` must get a defined inner verdict.
fn inner_scope(
    scene: &SceneGraph,
    universe: &BTreeSet<ObjectId>,
    restrictor: &BTreeSet<ObjectId>,
    comparison: &BTreeSet<ObjectId>,
    q: &QuantifierExpr,
    semantics: Semantics,
    rel: impl Fn(&ObjectAttributes, &ObjectAttributes) -> bool,
) -> Result<BTreeSet<ObjectId>, Restriction> {
    if q.kind.arity() == Arity::Exception {
        return Err(Restriction::ill_posed("exception quantifiers cannot be nested"));
    }
    let mut scope = BTreeSet::new();
    for &a in universe {
        let obj = &scene.objects[a];
        let mut others = comparison.clone();
        others.remove(&a);
        let in_a = restrictor.contains(&a);
        if others.is_empty() && presupposes_restrictor(q.tag()) {
            if in_a {
                return Err(Restriction::ill_posed("comparison set has no other member"));
            }
            continue;
        }
        let related = universe.iter().copied().filter(|&x| x != a && rel(obj, &scene.objects[x])).collect();
        let args = SetArgs { universe: universe.clone(), restrictor: others, scope: related };
        match evaluate(q, &args, semantics) {
            Ok(true) => {
                scope.insert(a);
            }
            Ok(false) => {}
            Err(e) if in_a => return Err(e),
            Err(_) => {}
        }
    }
    Ok(scope)
}

fn size_relation(a: &ObjectAttributes, b: &ObjectAttributes, larger: bool) -> bool {
    if larger {
        a.size == Size::Large && b.size == Size::Small
    } else {
        a.size == Size::Small && b.size == Size::Large
    }
}

fn related(origin: crate::geometry::Point, obj: &ObjectAttributes, relation: spatial::SpatialRelation) -> bool {
    spatial::holds(origin, obj.position, relation).unwrap_or(false)
}

/// Objects of `within` matching `filter`, resolving its spatial anchor if any.
fn filter_set(scene: &SceneGraph, filter: &ObjectFilter, within: &BTreeSet<ObjectId>) -> Result<BTreeSet<ObjectId>, Restriction> {
    let mut out: BTreeSet<ObjectId> =
        within.iter().copied().filter(|&o| filter.matches_attributes(&scene.objects[o])).collect();
    if let Some(sp) = &filter.spatial {
        let anchor = resolve_unique(scene, &sp.anchor, within)?;
        let origin = scene.objects[anchor].position;
        out.retain(|&o| o != anchor && related(origin, &scene.objects[o], sp.relation));
    }
    Ok(out)
}

/// The one object of `within` a definite description refers to.
fn resolve_unique(scene: &SceneGraph, desc: &ObjectFilter, within: &BTreeSet<ObjectId>) -> Result<ObjectId, Restriction> {
    let mut hits = within.iter().copied().filter(|&o| desc.matches_attributes(&scene.objects[o]));
    match (hits.next(), hits.next()) {
        (None, _) => Err(Restriction::ill_posed("referenced object does not exist")),
        (Some(o), None) => Ok(o),
        _ => Err(Restriction::odd("object description is ambiguous")),
    }
}
