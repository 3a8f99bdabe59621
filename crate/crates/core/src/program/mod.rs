//! Question programs: plane selection, object filters and quantifiers, executed
//! against a scene graph by model checking.

mod generate;
mod rewrite;
mod run;
mod select;
mod trivial;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quantifier::{QuantifierExpr, QuantifierKind};
use crate::scene::{ObjectAttributes, ObjectColor, ObjectMaterial, ObjectShape, PlaneAttributes, PlaneColor, PlaneMaterial, PlaneShape, Size};
use crate::spatial::SpatialRelation;

pub use generate::{generate_candidate, GenerationError};
pub use rewrite::{equivalent_rewrites, rewrite_with};
pub use run::{run_program, run_program_with, Outcome};
pub use select::{select_planes, Selection};
pub use trivial::{detect_trivial, trivial_reason};

/// The eleven plane-template forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneForm {
    /// "On the white non-geometric plane" and other attribute-only descriptions.
    Attribute,
    /// "On the geometric plane with a different shape from other planes"
    UniqueAttribute,
    /// "On the black planes to the left rear of the circular plane"
    AttributeSpatial,
    /// "On the planes where there are at least 3 red cubes on each plane"
    EachCount,
    /// "On the quadrilateral plane where there are at most 5 blue balls"
    SingularCount,
    /// "On the brown planes where there are between 1 and 4 triangular prisms on each plane"
    AttributeEachBetween,
    /// "On the triangular plane where there is exactly 1 leathery object"
    SingularExactly,
    /// "On the plane where there are not 2 to 4 triangular prisms"
    SingularNotBetween,
    /// "On the gray planes where there are not exactly 3 items on each plane"
    AttributeEachNotExactly,
    /// "On the marble plane where there are not any wooden cones"
    SingularNone,
    /// "On the wooden plane where there is a total of 7 small rubber objects"
    AttributeTotal,
}

impl PlaneForm {
    pub const ALL: [PlaneForm; 11] = [
        PlaneForm::Attribute,
        PlaneForm::UniqueAttribute,
        PlaneForm::AttributeSpatial,
        PlaneForm::EachCount,
        PlaneForm::SingularCount,
        PlaneForm::AttributeEachBetween,
        PlaneForm::SingularExactly,
        PlaneForm::SingularNotBetween,
        PlaneForm::AttributeEachNotExactly,
        PlaneForm::SingularNone,
        PlaneForm::AttributeTotal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlaneForm::Attribute => "attribute",
            PlaneForm::UniqueAttribute => "unique_attribute",
            PlaneForm::AttributeSpatial => "attribute_spatial",
            PlaneForm::EachCount => "each_count",
            PlaneForm::SingularCount => "singular_count",
            PlaneForm::AttributeEachBetween => "attribute_each_between",
            PlaneForm::SingularExactly => "singular_exactly",
            PlaneForm::SingularNotBetween => "singular_not_between",
            PlaneForm::AttributeEachNotExactly => "attribute_each_not_exactly",
            PlaneForm::SingularNone => "singular_none",
            PlaneForm::AttributeTotal => "attribute_total",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == s)
    }
}

/// The six object-template reasoning forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectForm {
    Existence1,
    Existence2,
    CompareAttributes,
    QuantityComparison,
    SizeComparison,
    SpatialRelations,
}

impl ObjectForm {
    pub const ALL: [ObjectForm; 6] = [
        ObjectForm::Existence1,
        ObjectForm::Existence2,
        ObjectForm::CompareAttributes,
        ObjectForm::QuantityComparison,
        ObjectForm::SizeComparison,
        ObjectForm::SpatialRelations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObjectForm::Existence1 => "existence_1",
            ObjectForm::Existence2 => "existence_2",
            ObjectForm::CompareAttributes => "compare_attributes",
            ObjectForm::QuantityComparison => "quantity_comparison",
            ObjectForm::SizeComparison => "size_comparison",
            ObjectForm::SpatialRelations => "spatial_relations",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == s)
    }
}

/// A question family: one plane form paired with one object form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub plane: PlaneForm,
    pub object: ObjectForm,
}

impl FamilyId {
    pub fn all() -> Vec<FamilyId> {
        PlaneForm::ALL
            .iter()
            .flat_map(|&plane| ObjectForm::ALL.iter().map(move |&object| FamilyId { plane, object }))
            .collect()
    }

    pub fn parse(s: &str) -> Option<Self> {
        let (p, o) = s.split_once('.')?;
        Some(FamilyId {
            plane: PlaneForm::from_name(p)?,
            object: ObjectForm::from_name(o)?,
        })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.plane.name(), self.object.name())
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FamilyId::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneAttr {
    Shape,
    Color,
    Material,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectAttr {
    Size,
    Color,
    Material,
    Shape,
}

impl ObjectAttr {
    pub const ALL: [ObjectAttr; 4] = [ObjectAttr::Size, ObjectAttr::Color, ObjectAttr::Material, ObjectAttr::Shape];

    pub fn same_value(self, a: &ObjectAttributes, b: &ObjectAttributes) -> bool {
        match self {
            ObjectAttr::Size => a.size == b.size,
            ObjectAttr::Color => a.color == b.color,
            ObjectAttr::Material => a.material == b.material,
            ObjectAttr::Shape => a.shape == b.shape,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaneFilter {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<PlaneShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<PlaneColor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<PlaneMaterial>,
    /// Restrict to geometric planes ("non-white", "geometric").
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub geometric: bool,
}

impl PlaneFilter {
    pub fn matches(&self, plane: &PlaneAttributes) -> bool {
        (!self.geometric || plane.is_geometric())
            && self.shape.is_none_or(|s| s == plane.shape)
            && self.color.is_none_or(|c| c == plane.color)
            && self.material.is_none_or(|m| Some(m) == plane.material)
    }

    pub fn is_universal(&self) -> bool {
        self.shape.is_none() && self.color.is_none() && self.material.is_none() && !self.geometric
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObjectSpatial {
    pub relation: SpatialRelation,
    /// Definite description of the anchor object; must pick out exactly one object.
    pub anchor: ObjectFilter,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObjectFilter {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<Size>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<ObjectColor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<ObjectMaterial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ObjectShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spatial: Option<Box<ObjectSpatial>>,
}

impl ObjectFilter {
    /// Filter fixing every attribute of `obj`.
    pub fn describing(obj: &ObjectAttributes) -> Self {
        Self {
            size: Some(obj.size),
            color: Some(obj.color),
            material: Some(obj.material),
            shape: Some(obj.shape),
            spatial: None,
        }
    }

    /// Attribute test only; spatial constraints need the scene and are applied by the runner.
    pub fn matches_attributes(&self, obj: &ObjectAttributes) -> bool {
        self.size.is_none_or(|v| v == obj.size)
            && self.color.is_none_or(|v| v == obj.color)
            && self.material.is_none_or(|v| v == obj.material)
            && self.shape.is_none_or(|v| v == obj.shape)
    }

    pub fn fixes(&self, attr: ObjectAttr) -> bool {
        match attr {
            ObjectAttr::Size => self.size.is_some(),
            ObjectAttr::Color => self.color.is_some(),
            ObjectAttr::Material => self.material.is_some(),
            ObjectAttr::Shape => self.shape.is_some(),
        }
    }

    pub fn clear(&mut self, attr: ObjectAttr) {
        match attr {
            ObjectAttr::Size => self.size = None,
            ObjectAttr::Color => self.color = None,
            ObjectAttr::Material => self.material = None,
            ObjectAttr::Shape => self.shape = None,
        }
    }

    pub fn attribute_count(&self) -> usize {
        ObjectAttr::ALL.iter().filter(|&&a| self.fixes(a)).count()
    }

    /// Definitional implication: every object matching `self` matches `other`, whatever the scene.
    pub fn implies(&self, other: &ObjectFilter) -> bool {
        let attr_ok = (other.size.is_none() || other.size == self.size)
            && (other.color.is_none() || other.color == self.color)
            && (other.material.is_none() || other.material == self.material)
            && (other.shape.is_none() || other.shape == self.shape);
        attr_ok && (other.spatial.is_none() || other.spatial == self.spatial)
    }

    pub fn without_spatial(&self) -> Self {
        Self { spatial: None, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// The count quantifier must hold on every selected plane individually.
    EachPlane,
    /// Object counts are summed over the selected planes.
    Total,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountConstraint {
    pub quantifier: QuantifierExpr,
    pub objects: ObjectFilter,
    pub mode: CountMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaneSpatial {
    pub relation: SpatialRelation,
    pub anchor: PlaneFilter,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaneSelector {
    pub form: PlaneForm,
    pub filter: PlaneFilter,
    /// Plural ("the black planes") or definite singular ("the black plane").
    pub plural: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unique_attribute: Option<PlaneAttr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spatial: Option<PlaneSpatial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<CountConstraint>,
}

impl PlaneSelector {
    /// Attribute-only selector.
    pub fn attribute(filter: PlaneFilter, plural: bool) -> Self {
        Self {
            form: PlaneForm::Attribute,
            filter,
            plural,
            unique_attribute: None,
            spatial: None,
            count: None,
        }
    }

    pub fn non_geometric() -> Self {
        Self::attribute(
            PlaneFilter {
                shape: Some(PlaneShape::NonGeometric),
                color: Some(PlaneColor::White),
                ..Default::default()
            },
            false,
        )
    }

    /// Quantifier slots contributed by the plane phrase, in surface order.
    pub fn quantifier_slots(&self) -> Vec<QuantifierExpr> {
        match &self.count {
            None => vec![],
            Some(c) => match c.mode {
                CountMode::Total => vec![QuantifierExpr::new(QuantifierKind::Total)],
                CountMode::EachPlane if self.plural => {
                    vec![QuantifierExpr::new(QuantifierKind::Each), c.quantifier.clone()]
                }
                CountMode::EachPlane => vec![c.quantifier.clone()],
            },
        }
    }
}

/// What the restrictor set is related to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Scope {
    /// B = objects on the selected planes; the universe is every object in the scene.
    OnPlanes,
    /// B = objects standing in `relation` to the anchor object.
    Related { relation: SpatialRelation, anchor: ObjectFilter },
    /// B = objects sharing `attribute` with the comparison set under the inner quantifier.
    SameAttribute { attribute: ObjectAttr, comparison: ObjectFilter },
    /// B = the comparison set itself (cardinality comparisons).
    Compared { comparison: ObjectFilter },
    /// B = objects larger (or smaller) than the comparison set under the inner quantifier.
    SizeRelation { larger: bool, comparison: ObjectFilter },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuestionProgram {
    pub family: FamilyId,
    pub plane_selector: PlaneSelector,
    pub form: ObjectForm,
    pub restrictor: ObjectFilter,
    pub scope: Scope,
    /// Object-level quantifiers, outermost first. The second, when present, is the inner
    /// quantifier over the comparison set.
    pub quantifiers: Vec<QuantifierExpr>,
    /// Definite description of the exception object for `every ... except` / `no ... except`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exception: Option<ObjectFilter>,
}

impl QuestionProgram {
    /// Every quantifier slot in surface order: plane phrase first, then the object clause.
    pub fn all_quantifiers(&self) -> Vec<QuantifierExpr> {
        let mut slots = self.plane_selector.quantifier_slots();
        slots.extend(self.quantifiers.iter().cloned());
        slots
    }

    /// Canonical kind tags, one per slot.
    pub fn quantifier_tags(&self) -> Vec<QuantifierKind> {
        self.all_quantifiers().iter().map(QuantifierExpr::tag).collect()
    }

    pub fn num_quantifiers(&self) -> usize {
        self.plane_selector.quantifier_slots().len() + self.quantifiers.len()
    }

    /// Structural checks that do not need a scene.
    pub fn check_shape(&self) -> Result<(), String> {
        let n = self.num_quantifiers();
        if !(1..=4).contains(&n) {
            return Err(format!("{n} quantifiers, expected 1..=4"));
        }
        let inner = matches!(self.scope, Scope::SameAttribute { .. } | Scope::SizeRelation { .. });
        let expected = if inner { 2 } else { 1 };
        if self.quantifiers.len() != expected {
            return Err(format!("{} object quantifiers for {}, expected {expected}", self.quantifiers.len(), self.form.name()));
        }
        let compared = matches!(self.scope, Scope::Compared { .. });
        if compared != self.quantifiers[0].kind.is_comparative() {
            return Err("comparative quantifiers go with comparison scopes only".into());
        }
        let scope_ok = matches!(
            (self.form, &self.scope),
            (ObjectForm::Existence1, Scope::OnPlanes)
            | (ObjectForm::Existence2, Scope::Related { .. })
            | (ObjectForm::CompareAttributes, Scope::SameAttribute { .. })
            | (ObjectForm::QuantityComparison, Scope::Compared { .. })
            | (ObjectForm::SizeComparison, Scope::SizeRelation { .. })
            | (ObjectForm::SpatialRelations, Scope::Compared { .. })
        );
        if !scope_ok {
            return Err(format!("scope does not fit form {}", self.form.name()));
        }
        let needs_exception = self.quantifiers[0].kind.arity() == crate::quantifier::Arity::Exception;
        if needs_exception != self.exception.is_some() {
            return Err("exception description must accompany except-quantifiers".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictionKind {
    PragmaticallyOdd,
    IllPosed,
    Trivial,
}

impl fmt::Display for RestrictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RestrictionKind::PragmaticallyOdd => "pragmatically odd",
            RestrictionKind::IllPosed => "ill-posed",
            RestrictionKind::Trivial => "trivial",
        })
    }
}

/// A fired restriction: why a program yields no answer on a scene.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restriction {
    pub kind: RestrictionKind,
    pub reason: String,
}

impl Restriction {
    pub fn odd(reason: impl Into<String>) -> Self {
        Self { kind: RestrictionKind::PragmaticallyOdd, reason: reason.into() }
    }

    pub fn ill_posed(reason: impl Into<String>) -> Self {
        Self { kind: RestrictionKind::IllPosed, reason: reason.into() }
    }

    pub fn trivial(reason: impl Into<String>) -> Self {
        Self { kind: RestrictionKind::Trivial, reason: reason.into() }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.reason)
    }
}
