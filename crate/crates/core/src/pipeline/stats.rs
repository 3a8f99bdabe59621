//! Dataset statistics.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{DatasetRecord, Split, SCHEMA_VERSION};
use crate::program::FamilyId;
use crate::text::{canonical_form, word_count};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SplitStats {
    pub scenes: usize,
    pub questions: usize,
    pub unique_questions: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    /// Questions of the held-out split whose canonical text also occurs in the other split.
    pub questions: usize,
    /// Of those, the ones where some occurrence in the other split has the same answer.
    pub same_answer: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyStats {
    pub records: usize,
    pub true_count: usize,
    pub true_rate: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub qlevr_gen_schema: u32,
    pub scenes: usize,
    pub questions: usize,
    pub unique_questions: usize,
    pub uniqueness: f64,
    pub splits: BTreeMap<Split, SplitStats>,
    /// Keyed `"<held-out>-<other>"`, e.g. `val-train`.
    pub overlaps: BTreeMap<String, Overlap>,
    pub quantifier_frequency: BTreeMap<String, usize>,
    pub quantifier_count_histogram: BTreeMap<usize, usize>,
    pub length_histogram: BTreeMap<usize, usize>,
    pub mean_length: f64,
    pub true_rate: f64,
    pub families: BTreeMap<FamilyId, FamilyStats>,
}

pub fn compute_stats(records: &[DatasetRecord]) -> Stats {
    let mut s = Stats { qlevr_gen_schema: SCHEMA_VERSION, questions: records.len(), ..Default::default() };
    let mut scenes: BTreeMap<Split, BTreeSet<u64>> = BTreeMap::new();
    let mut texts: BTreeMap<Split, HashMap<String, BTreeSet<bool>>> = BTreeMap::new();
    let mut all = BTreeSet::new();
    let mut words = 0usize;
    let mut trues = 0usize;
    for r in records {
        let canon = canonical_form(&r.text);
        all.insert(canon.clone());
        scenes.entry(r.split).or_default().insert(r.scene_id);
        texts.entry(r.split).or_default().entry(canon).or_default().insert(r.answer);
        s.splits.entry(r.split).or_default().questions += 1;
        for tag in &r.quantifier_tags {
            *s.quantifier_frequency.entry(tag.name().to_string()).or_default() += 1;
        }
        *s.quantifier_count_histogram.entry(r.num_quantifiers).or_default() += 1;
        let n = word_count(&r.text);
        words += n;
        *s.length_histogram.entry(n).or_default() += 1;
        let f = s.families.entry(r.family_id).or_default();
        f.records += 1;
        if r.answer {
            f.true_count += 1;
            trues += 1;
        }
    }
    for (split, ids) in &scenes {
        let e = s.splits.entry(*split).or_default();
        e.scenes = ids.len();
        e.unique_questions = texts[split].len();
    }
    s.scenes = scenes.values().map(BTreeSet::len).sum();
    s.unique_questions = all.len();
    if !records.is_empty() {
        s.uniqueness = all.len() as f64 / records.len() as f64;
        s.mean_length = words as f64 / records.len() as f64;
        s.true_rate = trues as f64 / records.len() as f64;
    }
    for f in s.families.values_mut() {
        f.true_rate = f.true_count as f64 / f.records as f64;
    }
    let empty = HashMap::new();
    for (held, other) in [(Split::Val, Split::Train), (Split::Test, Split::Train), (Split::Test, Split::Val)] {
        let theirs = texts.get(&other).unwrap_or(&empty);
        let mut o = Overlap::default();
        for r in records.iter().filter(|r| r.split == held) {
            if let Some(answers) = theirs.get(&canonical_form(&r.text)) {
                o.questions += 1;
                if answers.contains(&r.answer) {
                    o.same_answer += 1;
                }
            }
        }
        s.overlaps.insert(format!("{}-{}", held.name(), other.name()), o);
    }
    s
}
