//! Per-family answer balancing by acceptance-rejection.

use std::collections::BTreeMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::DatasetRecord;
use crate::program::FamilyId;
use crate::rng::Rng;

/// Lower clamp on the majority-class acceptance probability.
const MIN_ACCEPT: f64 = 0.05;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCounts {
    pub true_count: u64,
    pub false_count: u64,
    /// Candidates turned away by the acceptance rule.
    pub rejected: u64,
    /// Question slots for which the family had no acceptable candidate.
    pub unreachable: u64,
}

impl FamilyCounts {
    pub fn total(&self) -> u64 {
        self.true_count + self.false_count
    }

    pub fn true_rate(&self) -> Option<f64> {
        (self.total() > 0).then(|| self.true_count as f64 / self.total() as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceState {
    /// Allowed imbalance as a fraction of the family's record count (never below 2 records).
    pub slack: f64,
    pub families: BTreeMap<FamilyId, FamilyCounts>,
}

impl BalanceState {
    pub fn new(slack: f64) -> Self {
        Self { slack, families: BTreeMap::new() }
    }

    pub fn counts(&self, family: FamilyId) -> FamilyCounts {
        self.families.get(&family).copied().unwrap_or_default()
    }

    /// Largest |true − false| tolerated for a family holding `n` records.
    pub fn cap(&self, n: u64) -> u64 {
        ((self.slack * n as f64).floor() as u64).max(2)
    }

    /// Decides whether a candidate with `answer` may join `family`. Does not record it.
    pub fn accept(&self, family: FamilyId, answer: bool, rng: &mut Rng) -> bool {
        let c = self.counts(family);
        let (mine, other) = if answer { (c.true_count, c.false_count) } else { (c.false_count, c.true_count) };
        if mine <= other {
            return true;
        }
        if !self.fits_cap(family, answer) {
            return false;
        }
        let p = ((other + 1) as f64 / (mine + 1) as f64).clamp(MIN_ACCEPT, 1.0);
        rng.gen_bool(p)
    }

    /// Whether one more `answer` keeps the family within the slack cap.
    pub fn fits_cap(&self, family: FamilyId, answer: bool) -> bool {
        let c = self.counts(family);
        let (mine, other) = if answer { (c.true_count, c.false_count) } else { (c.false_count, c.true_count) };
        (mine + 1).saturating_sub(other) <= self.cap(c.total() + 1)
    }

    pub fn record(&mut self, family: FamilyId, answer: bool) {
        let c = self.families.entry(family).or_default();
        if answer {
            c.true_count += 1;
        } else {
            c.false_count += 1;
        }
    }

    pub fn reject(&mut self, family: FamilyId) {
        self.families.entry(family).or_default().rejected += 1;
    }

    pub fn unreachable(&mut self, family: FamilyId) {
        self.families.entry(family).or_default().unreachable += 1;
    }

    /// Families whose imbalance exceeds the cap at their current size.
    pub fn violations(&self) -> Vec<FamilyId> {
        self.families
            .iter()
            .filter(|(_, c)| c.true_count.abs_diff(c.false_count) > self.cap(c.total()))
            .map(|(f, _)| *f)
            .collect()
    }
}

/// The acceptance decision for a finished candidate record.
pub fn balance_accept(candidate: &DatasetRecord, state: &BalanceState, rng: &mut Rng) -> bool {
    state.accept(candidate.family_id, candidate.answer, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::{ObjectForm, PlaneForm};
    use crate::rng;

    fn family() -> FamilyId {
        FamilyId { plane: PlaneForm::Attribute, object: ObjectForm::Existence1 }
    }

    #[test]
    fn empty_state_accepts() {
        let state = BalanceState::new(0.06);
        let mut r = rng::stream(0, &[]);
        for _ in 0..100 {
            assert!(state.accept(family(), true, &mut r));
        }
    }

    #[test]
    fn minority_class_is_accepted() {
        let mut state = BalanceState::new(0.06);
        state.families.insert(family(), FamilyCounts { true_count: 10, false_count: 2, ..Default::default() });
        let mut r = rng::stream(0, &[]);
        for _ in 0..100 {
            assert!(state.accept(family(), false, &mut r));
        }
        // The majority side is over the cap, so it is always refused.
        assert!(!state.accept(family(), true, &mut r));
    }

    #[test]
    fn biased_source_converges_to_half() {
        let mut state = BalanceState::new(0.06);
        let mut r = rng::stream(5, &[1]);
        let mut source = rng::stream(5, &[2]);
        for _ in 0..10_000 {
            let answer = source.gen_bool(0.7);
            if state.accept(family(), answer, &mut r) {
                state.record(family(), answer);
            }
        }
        let rate = state.counts(family()).true_rate().unwrap();
        assert!((rate - 0.5).abs() <= 0.03, "rate {rate}");
        assert!(state.violations().is_empty());
    }
}
