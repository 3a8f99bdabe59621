//! English realization of question programs from a template bank and a synonym table.

mod phrase;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::program::{FamilyId, ObjectForm, PlaneForm, QuestionProgram};
use crate::quantifier::QuantifierKind;
use crate::rng::Rng;

pub use phrase::fraction_words;

const DEFAULT_TEMPLATES: &str = include_str!("../../data/templates.tsv");
const DEFAULT_SYNONYMS: &str = include_str!("../../data/synonyms.tsv");

/// Every slot a pattern may use.
pub const SLOTS: &[&str] = &[
    "PC", "PM", "PS", "ps", "PBE", "PQ", "PN", "PN1", "PN2", "PREL", "PANCHOR", "PATTR", "OC", "Z", "C", "M", "S", "os",
    "QA", "BE", "DO", "HAVE", "NOT", "REL", "ANCHOR", "ATTR", "QC", "CMP", "COMPARE", "NA", "NB", "CMPN",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("slot <{slot}> cannot be bound for family {family}")]
    UnboundSlot { slot: String, family: FamilyId },
    #[error("no template of family {0} fits the program")]
    NoTemplate(FamilyId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextTemplate {
    pub family: FamilyId,
    pub variant: u32,
    pub pattern: String,
    /// When set, the template only fits programs whose main quantifier has one of these kinds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kinds: Option<Vec<QuantifierKind>>,
}

impl TextTemplate {
    pub fn slots(&self) -> Vec<&str> {
        slots_in(&self.pattern)
    }
}

fn slots_in(pattern: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = pattern;
    while let Some(start) = rest.find('<') {
        let Some(len) = rest[start..].find('>') else { break };
        out.push(&rest[start + 1..start + len]);
        rest = &rest[start + len + 1..];
    }
    out
}

/// Family templates composed from plane and object patterns.
#[derive(Debug, Clone, Default)]
pub struct TemplateBank {
    by_family: BTreeMap<FamilyId, Vec<TextTemplate>>,
}

impl TemplateBank {
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_TEMPLATES).expect("built-in template bank parses")
    }

    pub fn parse(text: &str) -> Result<Self, TextError> {
        let mut planes: BTreeMap<PlaneForm, Vec<String>> = BTreeMap::new();
        let mut objects: BTreeMap<ObjectForm, Vec<String>> = BTreeMap::new();
        let mut extra: Vec<(FamilyId, String, Option<Vec<QuantifierKind>>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| TextError::Parse { line, message };
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = raw.split('\t').collect();
            if !(4..=5).contains(&cols.len()) {
                return Err(err(format!("expected 4 or 5 tab-separated columns, found {}", cols.len())));
            }
            cols[2].parse::<u32>().map_err(|_| err(format!("bad variant `{}`", cols[2])))?;
            let pattern = cols[3].to_string();
            for slot in slots_in(&pattern) {
                if slot != "PLANE" && !SLOTS.contains(&slot) {
                    return Err(err(format!("unknown slot <{slot}>")));
                }
            }
            match cols[0] {
                "plane" => {
                    let form = PlaneForm::from_name(cols[1]).ok_or_else(|| err(format!("unknown plane form `{}`", cols[1])))?;
                    planes.entry(form).or_default().push(pattern);
                }
                "object" => {
                    let form = ObjectForm::from_name(cols[1]).ok_or_else(|| err(format!("unknown object form `{}`", cols[1])))?;
                    if !pattern.contains("<PLANE>") {
                        return Err(err("object pattern lacks <PLANE>".into()));
                    }
                    objects.entry(form).or_default().push(pattern);
                }
                "family" => {
                    let family = FamilyId::parse(cols[1]).ok_or_else(|| err(format!("unknown family `{}`", cols[1])))?;
                    let kinds = match cols.get(4) {
                        None => None,
                        Some(list) => Some(
                            list.split(',')
                                .map(|k| QuantifierKind::from_name(k.trim()).ok_or_else(|| err(format!("unknown kind `{k}`"))))
                                .collect::<Result<Vec<_>, _>>()?,
                        ),
                    };
                    extra.push((family, pattern, kinds));
                }
                other => return Err(err(format!("unknown line kind `{other}`"))),
            }
        }
        let mut by_family: BTreeMap<FamilyId, Vec<TextTemplate>> = BTreeMap::new();
        for family in FamilyId::all() {
            let mut list = Vec::new();
            for plane in planes.get(&family.plane).into_iter().flatten() {
                for object in objects.get(&family.object).into_iter().flatten() {
                    list.push(object.replace("<PLANE>", plane));
                }
            }
            let mut templates: Vec<TextTemplate> = list
                .into_iter()
                .map(|pattern| TextTemplate { family, variant: 0, pattern, kinds: None })
                .collect();
            templates.extend(
                extra
                    .iter()
                    .filter(|e| e.0 == family)
                    .map(|(_, pattern, kinds)| TextTemplate { family, variant: 0, pattern: pattern.clone(), kinds: kinds.clone() }),
            );
            for (i, t) in templates.iter_mut().enumerate() {
                t.variant = i as u32;
            }
            if !templates.is_empty() {
                by_family.insert(family, templates);
            }
        }
        Ok(Self { by_family })
    }

    pub fn for_family(&self, family: FamilyId) -> &[TextTemplate] {
        self.by_family.get(&family).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn families(&self) -> impl Iterator<Item = FamilyId> + '_ {
        self.by_family.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.by_family.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Canonical attribute/relation tokens mapped to their surface forms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymTable {
    forms: BTreeMap<String, Vec<String>>,
}

impl SynonymTable {
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_SYNONYMS).expect("built-in synonym table parses")
    }

    pub fn parse(text: &str) -> Result<Self, TextError> {
        let mut forms = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let (key, list) = raw
                .split_once('\t')
                .ok_or_else(|| TextError::Parse { line: i + 1, message: "expected `token<TAB>forms`".into() })?;
            let list: Vec<String> = list.split('|').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if list.is_empty() {
                return Err(TextError::Parse { line: i + 1, message: format!("no forms for `{key}`") });
            }
            forms.insert(key.trim().to_string(), list);
        }
        Ok(Self { forms })
    }

    pub fn forms(&self, token: &str) -> &[String] {
        self.forms.get(token).map(Vec::as_slice).unwrap_or(&[])
    }

    /// A surface form for `token`; falls back to the token's last segment with spaces.
    pub fn pick(&self, token: &str, rng: &mut Rng) -> String {
        match self.forms(token).choose(rng) {
            Some(s) => s.clone(),
            None => token.rsplit('.').next().unwrap_or(token).replace('_', " "),
        }
    }

    /// The canonical token a surface form came from, within a token prefix such as `shape`.
    pub fn canonical(&self, prefix: &str, surface: &str) -> Option<&str> {
        self.forms
            .iter()
            .filter(|(k, _)| k.split('.').next() == Some(prefix))
            .find(|(_, v)| v.iter().any(|s| s == surface))
            .map(|(k, _)| k.as_str())
    }
}

/// Fills `t`'s slots from `p`. Synonyms and fraction wording are drawn from `rng`.
pub fn realize(p: &QuestionProgram, t: &TextTemplate, syn: &SynonymTable, rng: &mut Rng) -> Result<String, TextError> {
    if t.family != p.family {
        return Err(TextError::NoTemplate(p.family));
    }
    if let Some(kinds) = &t.kinds {
        if !kinds.contains(&p.quantifiers[0].kind) {
            return Err(TextError::NoTemplate(p.family));
        }
    }
    let slots = t.slots();
    let main = &p.quantifiers[0];
    // Negation flags only have a surface form through <NOT>.
    if main.outer_negated || p.quantifiers.iter().skip(1).any(|q| q.outer_negated || q.inner_negated) {
        return Err(TextError::UnboundSlot { slot: "NOT".into(), family: p.family });
    }
    if main.inner_negated && !slots.contains(&"NOT") {
        return Err(TextError::UnboundSlot { slot: "NOT".into(), family: p.family });
    }
    if (p.exception.is_some() || p.restrictor.spatial.is_some()) && !slots.contains(&"QA") && !slots.contains(&"NA") {
        return Err(TextError::UnboundSlot { slot: "QA".into(), family: p.family });
    }
    let mut ctx = phrase::Context::new(p, syn);
    let mut out = String::with_capacity(t.pattern.len() * 2);
    let mut rest = t.pattern.as_str();
    while let Some(start) = rest.find('<') {
        out.push_str(&rest[..start]);
        let len = rest[start..].find('>').expect("slots are closed");
        let slot = &rest[start + 1..start + len];
        let value = ctx
            .bind(slot, rng)
            .ok_or_else(|| TextError::UnboundSlot { slot: slot.to_string(), family: p.family })?;
        out.push_str(&value);
        rest = &rest[start + len + 1..];
    }
    out.push_str(rest);
    Ok(tidy(&out))
}

/// Realizes `p` with a template drawn at random among those of its family that bind.
pub fn realize_any(
    p: &QuestionProgram,
    bank: &TemplateBank,
    syn: &SynonymTable,
    rng: &mut Rng,
) -> Result<(u32, String), TextError> {
    let mut order: Vec<&TextTemplate> = bank.for_family(p.family).iter().collect();
    order.shuffle(rng);
    for t in order {
        if let Ok(text) = realize(p, t, syn, rng) {
            return Ok((t.variant, text));
        }
    }
    Err(TextError::NoTemplate(p.family))
}

/// Collapses whitespace, drops spaces before punctuation and capitalizes the first letter.
fn tidy(s: &str) -> String {
    let mut out = s.split_whitespace().collect::<Vec<_>>().join(" ");
    for p in [" ,", " ?", " ."] {
        out = out.replace(p, &p[1..]);
    }
    let mut chars = out.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => out,
    }
}

/// Dedup key: lowercase with single spaces.
pub fn canonical_form(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Number of whitespace-separated words.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

#[cfg(test)]
mod tests;
