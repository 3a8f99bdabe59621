use std::collections::BTreeSet;

use super::{CountMode, QuestionProgram, Scope};
use crate::quantifier::{eval_tally, Arity, QuantifierExpr, Semantics, Tally, Verdict};

/// Largest per-plane object count the sampler can produce.
const MAX_PLANE_COUNT: usize = 12;
const MAX_PLANES: usize = 6;

/// Whether the program's answer is fixed before looking at any scene.
pub fn detect_trivial(p: &QuestionProgram) -> bool {
    trivial_reason(p).is_some()
}

pub fn trivial_reason(p: &QuestionProgram) -> Option<String> {
    if let Some(count) = &p.plane_selector.count {
        let q = &count.quantifier;
        if constant(q, (0..=MAX_PLANE_COUNT).map(Tally::count)).is_some() {
            return Some(format!("plane count `{}` holds for every count or none", q.tag()));
        }
    }
    for q in &p.quantifiers {
        if q.kind.is_binary() && q.kind.arity() != Arity::Exception && constant(q, tallies(&(0..=16).collect())).is_some() {
            return Some(format!("`{}` with these parameters has a fixed value", q.tag()));
        }
    }

    match &p.scope {
        Scope::Compared { comparison } => {
            if p.restrictor.implies(comparison) || comparison.implies(&p.restrictor) {
                return Some("one compared description entails the other".into());
            }
        }
        Scope::SameAttribute { attribute, comparison } => {
            if p.restrictor.fixes(*attribute) && comparison.fixes(*attribute) {
                return Some("both descriptions fix the compared attribute".into());
            }
        }
        Scope::SizeRelation { comparison, .. } => {
            if p.restrictor.size.is_some() && comparison.size.is_some() {
                return Some("both descriptions fix the size".into());
            }
        }
        Scope::OnPlanes => return restated_count(p),
        Scope::Related { .. } => {}
    }
    None
}

/// "On the plane with 8 balls, are there exactly 3 balls?": the plane phrase already fixes
/// how many restrictor objects lie on the selected planes.
fn restated_count(p: &QuestionProgram) -> Option<String> {
    let count = p.plane_selector.count.as_ref()?;
    if count.objects != p.restrictor {
        return None;
    }
    let allowed: Vec<usize> = match count.mode {
        CountMode::Total => (0..=MAX_PLANE_COUNT * MAX_PLANES).collect(),
        CountMode::EachPlane => (0..=MAX_PLANE_COUNT).collect(),
    };
    let semantics = Semantics::default();
    let per_plane: Vec<usize> = allowed
        .into_iter()
        .filter(|&c| eval_tally(&count.quantifier, &Tally::count(c), semantics) == Ok(Verdict::Holds(true)))
        .collect();
    let feasible: BTreeSet<usize> = if count.mode == CountMode::EachPlane && p.plane_selector.plural {
        reachable_sums(&per_plane)
    } else {
        per_plane.into_iter().collect()
    };
    let q = &p.quantifiers[0];
    if q.kind.arity() == Arity::Exception || feasible.is_empty() {
        return None;
    }
    constant(q, tallies(&feasible)).map(|v| format!("the plane phrase already decides the answer ({v})"))
}

/// Sums of one to `MAX_PLANES` values drawn from `values`.
fn reachable_sums(values: &[usize]) -> BTreeSet<usize> {
    let mut layer: BTreeSet<usize> = values.iter().copied().collect();
    let mut all = layer.clone();
    for _ in 1..MAX_PLANES {
        layer = layer.iter().flat_map(|s| values.iter().map(move |v| s + v)).collect();
        all.extend(&layer);
    }
    all
}

/// Tallies with `|A∩B|` drawn from `inter`, and small free choices for the rest.
fn tallies(inter: &BTreeSet<usize>) -> impl Iterator<Item = Tally> + '_ {
    inter.iter().flat_map(|&i| {
        (0..=16).flat_map(move |diff| {
            (0..=2).flat_map(move |extra_scope| {
                (0..=1).map(move |outside| Tally {
                    universe: i + diff + extra_scope + outside,
                    inter: i,
                    diff,
                    scope: i + extra_scope,
                    exception: None,
                })
            })
        })
    })
}

/// The single defined value `q` takes over `tallies`, if it never varies.
fn constant(q: &QuantifierExpr, tallies: impl Iterator<Item = Tally>) -> Option<bool> {
    let mut seen = None;
    for t in tallies {
        match eval_tally(q, &t, Semantics::default()) {
            Ok(Verdict::Holds(b)) => match seen {
                None => seen = Some(b),
                Some(prev) if prev != b => return None,
                _ => {}
            },
            Ok(Verdict::IllPosed) => {}
            Err(_) => return None,
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::*;
    use crate::quantifier::QuantifierKind::*;
    use std::option::Option::Some;
    use crate::scene::{ObjectColor, ObjectShape};

    fn filter(color: Option<ObjectColor>, shape: ObjectShape) -> ObjectFilter {
        ObjectFilter { color, shape: Some(shape), ..Default::default() }
    }

    fn comparison(a: ObjectFilter, b: ObjectFilter) -> QuestionProgram {
        QuestionProgram {
            family: FamilyId { plane: PlaneForm::Attribute, object: ObjectForm::QuantityComparison },
            plane_selector: PlaneSelector::non_geometric(),
            form: ObjectForm::QuantityComparison,
            restrictor: a,
            scope: Scope::Compared { comparison: b },
            quantifiers: vec![QuantifierExpr::new(MoreOThanO)],
            exception: None,
        }
    }

    #[test]
    fn subset_comparisons_are_trivial() {
        let red_cubes = filter(Some(ObjectColor::Red), ObjectShape::Cube);
        let cubes = filter(None, ObjectShape::Cube);
        let blue_cubes = filter(Some(ObjectColor::Blue), ObjectShape::Cube);
        assert!(detect_trivial(&comparison(red_cubes.clone(), cubes)));
        assert!(!detect_trivial(&comparison(red_cubes, blue_cubes)));
    }

    fn plane_with_balls(n: u32, ask: QuantifierExpr) -> QuestionProgram {
        let balls = filter(None, ObjectShape::Sphere);
        QuestionProgram {
            family: FamilyId { plane: PlaneForm::SingularExactly, object: ObjectForm::Existence1 },
            plane_selector: PlaneSelector {
                form: PlaneForm::SingularExactly,
                count: Some(CountConstraint {
                    quantifier: QuantifierExpr::count(ExactlyN, n),
                    objects: balls.clone(),
                    mode: CountMode::EachPlane,
                }),
                ..PlaneSelector::attribute(PlaneFilter::default(), false)
            },
            form: ObjectForm::Existence1,
            restrictor: balls,
            scope: Scope::OnPlanes,
            quantifiers: vec![ask],
            exception: None,
        }
    }

    #[test]
    fn plane_count_restated_in_question() {
        assert!(detect_trivial(&plane_with_balls(8, QuantifierExpr::count(ExactlyN, 3))));
        assert!(detect_trivial(&plane_with_balls(8, QuantifierExpr::count(AtLeastN, 2))));
        // Whether other balls exist off the plane is open.
        assert!(!detect_trivial(&plane_with_balls(8, QuantifierExpr::new(All))));
    }

    #[test]
    fn degenerate_parameters() {
        assert!(detect_trivial(&plane_with_balls(2, QuantifierExpr::count(AllButAtLeastN, 0))));
        let mut p = plane_with_balls(2, QuantifierExpr::new(Most));
        p.plane_selector.count.as_mut().unwrap().quantifier = QuantifierExpr::count(AtLeastN, 0);
        assert!(detect_trivial(&p));
    }

    #[test]
    fn reachable_sums_cover_multiples() {
        let s = reachable_sums(&[8]);
        assert_eq!(s, BTreeSet::from([8, 16, 24, 32, 40, 48]));
    }
}
