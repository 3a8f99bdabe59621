use std::collections::BTreeSet;

use super::*;
use crate::program::*;
use crate::quantifier::{QuantifierExpr, QuantifierKind};
use crate::rng;
use crate::scene::*;

fn example_program() -> QuestionProgram {
    QuestionProgram {
        family: FamilyId { plane: PlaneForm::Attribute, object: ObjectForm::Existence1 },
        plane_selector: PlaneSelector::attribute(
            PlaneFilter {
                shape: Some(PlaneShape::Triangular),
                color: Some(PlaneColor::Black),
                material: Some(PlaneMaterial::Wood),
                ..Default::default()
            },
            false,
        ),
        form: ObjectForm::Existence1,
        restrictor: ObjectFilter {
            size: Some(Size::Small),
            color: Some(ObjectColor::Red),
            material: Some(ObjectMaterial::Rubber),
            ..Default::default()
        },
        scope: Scope::OnPlanes,
        quantifiers: vec![QuantifierExpr::count(QuantifierKind::ExactlyN, 2)],
        exception: None,
    }
}

fn example_template() -> TextTemplate {
    TextTemplate {
        family: FamilyId { plane: PlaneForm::Attribute, object: ObjectForm::Existence1 },
        variant: 0,
        pattern: "Are there exactly <OC> <Z> <C> <M> <S><os> on the <PC> <PM> <PS> plane<ps>?".into(),
        kinds: None,
    }
}

/// Synonym table with one form per token, so realizations are fixed.
fn plain() -> SynonymTable {
    let full = SynonymTable::builtin();
    let text: String = full.forms.iter().map(|(k, v)| format!("{k}\t{}\n", v[0])).collect();
    SynonymTable::parse(&text).unwrap()
}

#[test]
fn example_template_renders_the_printed_question() {
    let text = realize(&example_program(), &example_template(), &plain(), &mut rng::stream(0, &[])).unwrap();
    assert_eq!(text, "Are there exactly 2 small red rubber objects on the black wooden triangular plane?");
}

#[test]
fn count_one_is_singular() {
    let mut p = example_program();
    p.quantifiers[0] = QuantifierExpr::count(QuantifierKind::ExactlyN, 1);
    let text = realize(&p, &example_template(), &plain(), &mut rng::stream(0, &[])).unwrap();
    assert!(text.contains("exactly 1 small red rubber object on"), "{text}");
}

#[test]
fn fraction_wording_uses_both_branches() {
    let mut p = example_program();
    p.quantifiers[0] = QuantifierExpr::fraction(QuantifierKind::AtLeastF, 2, 3);
    let bank = TemplateBank::builtin();
    let syn = SynonymTable::builtin();
    let mut seen = BTreeSet::new();
    for seed in 0..100 {
        let (_, text) = realize_any(&p, &bank, &syn, &mut rng::stream(seed, &[])).unwrap();
        if text.contains("two thirds") {
            seen.insert("words");
        } else if text.contains("2/3") {
            seen.insert("numerals");
        } else {
            panic!("{text}");
        }
    }
    assert_eq!(seen.len(), 2);
    assert_eq!(fraction_words(crate::quantifier::Fraction::new(1, 2), false), "a half");
    assert_eq!(fraction_words(crate::quantifier::Fraction::new(3, 4), false), "three quarters");
}

#[test]
fn unbindable_slots_are_reported() {
    let mut t = example_template();
    t.pattern = "On <PLANE>, is it <REL> <ANCHOR>?".into();
    assert!(TemplateBank::parse(&format!("object\texistence_1\t0\t{}", "<BOGUS> <PLANE>")).is_err());
    t.pattern = "Is it <REL> <ANCHOR>?".into();
    assert!(matches!(
        realize(&example_program(), &t, &plain(), &mut rng::stream(0, &[])),
        Err(TextError::UnboundSlot { .. })
    ));
}

#[test]
fn inner_negation_needs_the_not_slot() {
    let mut p = example_program();
    p.quantifiers[0] = QuantifierExpr::new(QuantifierKind::No).with_flags(false, true);
    assert!(realize(&p, &example_template(), &plain(), &mut rng::stream(0, &[])).is_err());
    let bank = TemplateBank::builtin();
    let (_, text) = realize_any(&p, &bank, &plain(), &mut rng::stream(0, &[])).unwrap();
    assert!(text.contains("no small red rubber objects") && text.contains("not"), "{text}");
}

#[test]
fn bank_has_two_to_six_variants_per_family() {
    let bank = TemplateBank::builtin();
    for family in FamilyId::all() {
        let n = bank.for_family(family).len();
        assert!((2..=6).contains(&n), "{family}: {n}");
    }
}

#[test]
fn realization_is_reproducible_and_canonical_form_normalizes() {
    let bank = TemplateBank::builtin();
    let syn = SynonymTable::builtin();
    let p = example_program();
    let a = realize_any(&p, &bank, &syn, &mut rng::stream(3, &[])).unwrap();
    let b = realize_any(&p, &bank, &syn, &mut rng::stream(3, &[])).unwrap();
    assert_eq!(a, b);
    assert_eq!(canonical_form("Are  there\tTWO?"), "are there two?");
}

#[test]
fn synonyms_are_recoverable() {
    let syn = SynonymTable::builtin();
    assert_eq!(syn.canonical("shape", "ball"), Some("shape.sphere"));
    assert_eq!(syn.canonical("size", "tiny"), Some("size.small"));
    // Within a category no surface form is shared by two tokens.
    let mut seen = BTreeSet::new();
    for (k, forms) in &syn.forms {
        let prefix = k.split('.').next().unwrap();
        for f in forms {
            assert!(seen.insert((prefix.to_string(), f.clone())), "{k}: {f}");
        }
    }
}
