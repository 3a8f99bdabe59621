//! Generalized quantifiers over finite sets and their squares of opposition.
//!
//! A binary quantifier relates a restrictor `A` and a scope `B`, both subsets of a
//! universe `P`. Evaluation works on cardinalities only, so a single [`Tally`] of
//! the sets is enough to decide every kind.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scene::ObjectId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantifierKind {
    Each,
    Total,
    All,
    Most,
    NotAll,
    No,
    Some,
    SomeButNotAll,
    ExactlyN,
    NotExactlyN,
    Between,
    NotBetween,
    AllButAtMostN,
    AllButAtLeastN,
    MoreThanN,
    AtLeastN,
    FewerThanN,
    AtMostN,
    MoreThanF,
    AtLeastF,
    FewerThanF,
    AtMostF,
    EveryExcept,
    NoExcept,
    #[serde(rename = "more_o_than_o")]
    MoreOThanO,
    #[serde(rename = "fewer_o_than_o")]
    FewerOThanO,
    #[serde(rename = "equal_o_and_o")]
    EqualOAndO,
}

/// Which parameters a kind takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    None,
    Count,
    Range,
    Fraction,
    Exception,
}

impl QuantifierKind {
    pub const ALL: [QuantifierKind; 27] = [
        QuantifierKind::Each,
        QuantifierKind::Total,
        QuantifierKind::All,
        QuantifierKind::Most,
        QuantifierKind::NotAll,
        QuantifierKind::No,
        QuantifierKind::Some,
        QuantifierKind::SomeButNotAll,
        QuantifierKind::ExactlyN,
        QuantifierKind::NotExactlyN,
        QuantifierKind::Between,
        QuantifierKind::NotBetween,
        QuantifierKind::AllButAtMostN,
        QuantifierKind::AllButAtLeastN,
        QuantifierKind::MoreThanN,
        QuantifierKind::AtLeastN,
        QuantifierKind::FewerThanN,
        QuantifierKind::AtMostN,
        QuantifierKind::MoreThanF,
        QuantifierKind::AtLeastF,
        QuantifierKind::FewerThanF,
        QuantifierKind::AtMostF,
        QuantifierKind::EveryExcept,
        QuantifierKind::NoExcept,
        QuantifierKind::MoreOThanO,
        QuantifierKind::FewerOThanO,
        QuantifierKind::EqualOAndO,
    ];

    pub fn name(self) -> &'static str {
        use QuantifierKind::*;
        match self {
            Each => "each",
            Total => "total",
            All => "all",
            Most => "most",
            NotAll => "not_all",
            No => "no",
            Some => "some",
            SomeButNotAll => "some_but_not_all",
            ExactlyN => "exactly_n",
            NotExactlyN => "not_exactly_n",
            Between => "between",
            NotBetween => "not_between",
            AllButAtMostN => "all_but_at_most_n",
            AllButAtLeastN => "all_but_at_least_n",
            MoreThanN => "more_than_n",
            AtLeastN => "at_least_n",
            FewerThanN => "fewer_than_n",
            AtMostN => "at_most_n",
            MoreThanF => "more_than_f",
            AtLeastF => "at_least_f",
            FewerThanF => "fewer_than_f",
            AtMostF => "at_most_f",
            EveryExcept => "every_except",
            NoExcept => "no_except",
            MoreOThanO => "more_o_than_o",
            FewerOThanO => "fewer_o_than_o",
            EqualOAndO => "equal_o_and_o",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }

    pub fn arity(self) -> Arity {
        use QuantifierKind::*;
        match self {
            ExactlyN | NotExactlyN | AllButAtMostN | AllButAtLeastN | MoreThanN | AtLeastN | FewerThanN | AtMostN => {
                Arity::Count
            }
            Between | NotBetween => Arity::Range,
            MoreThanF | AtLeastF | FewerThanF | AtMostF => Arity::Fraction,
            EveryExcept | NoExcept => Arity::Exception,
            _ => Arity::None,
        }
    }

    /// `each` and `total` are plane-distribution modes rather than relations between sets.
    pub fn is_binary(self) -> bool {
        !matches!(self, QuantifierKind::Each | QuantifierKind::Total)
    }

    /// Kinds comparing `|A|` with `|B|`.
    pub fn is_comparative(self) -> bool {
        matches!(
            self,
            QuantifierKind::MoreOThanO | QuantifierKind::FewerOThanO | QuantifierKind::EqualOAndO
        )
    }

    /// Kinds whose truth value divides by `|A|` (or compares proportions of `A`).
    pub fn is_proportional(self) -> bool {
        self.arity() == Arity::Fraction || self == QuantifierKind::Most
    }
}

impl fmt::Display for QuantifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u32,
    pub den: u32,
}

impl Fraction {
    pub fn new(num: u32, den: u32) -> Self {
        Self { num, den }
    }

    /// Lowest terms.
    pub fn reduced(self) -> Self {
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.num, self.den).max(1);
        Self::new(self.num / g, self.den / g)
    }

    /// `1 - self`, if it stays positive.
    fn complement(self) -> Option<Self> {
        (self.num < self.den).then(|| Self::new(self.den - self.num, self.den).reduced())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantifierExpr {
    pub kind: QuantifierKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<Fraction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exception: Option<ObjectId>,
    /// `¬Q`: the whole statement is negated.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub outer_negated: bool,
    /// `Q¬`: the scope is complemented within the universe.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inner_negated: bool,
}

impl QuantifierExpr {
    pub fn new(kind: QuantifierKind) -> Self {
        Self {
            kind,
            n: None,
            range: None,
            fraction: None,
            exception: None,
            outer_negated: false,
            inner_negated: false,
        }
    }

    pub fn count(kind: QuantifierKind, n: u32) -> Self {
        Self { n: Some(n), ..Self::new(kind) }
    }

    pub fn between(kind: QuantifierKind, lo: u32, hi: u32) -> Self {
        Self { range: Some((lo, hi)), ..Self::new(kind) }
    }

    pub fn fraction(kind: QuantifierKind, num: u32, den: u32) -> Self {
        Self { fraction: Some(Fraction::new(num, den)), ..Self::new(kind) }
    }

    pub fn except(kind: QuantifierKind, c: ObjectId) -> Self {
        Self { exception: Some(c), ..Self::new(kind) }
    }

    pub fn with_flags(mut self, outer: bool, inner: bool) -> Self {
        self.outer_negated = outer;
        self.inner_negated = inner;
        self
    }

    fn rekind(&self, kind: QuantifierKind) -> Self {
        Self { kind, ..self.clone() }
    }

    fn rekind_n(&self, kind: QuantifierKind, n: u32) -> Self {
        Self { kind, n: Some(n), ..self.clone() }
    }

    fn rekind_fraction(&self, kind: QuantifierKind, f: Fraction) -> Self {
        Self { kind, fraction: Some(f), ..self.clone() }
    }

    /// Checks that exactly the parameters the kind needs are present and well-formed.
    pub fn check_parameters(&self) -> Result<(), QuantifierError> {
        let missing = |param| Err(QuantifierError::MissingParameter { kind: self.kind, param });
        let arity = self.kind.arity();
        let present = [
            (Arity::Count, self.n.is_some(), "n"),
            (Arity::Range, self.range.is_some(), "range"),
            (Arity::Fraction, self.fraction.is_some(), "fraction"),
            (Arity::Exception, self.exception.is_some(), "exception"),
        ];
        for (needed_by, is_present, param) in present {
            if needed_by == arity && !is_present {
                return missing(param);
            }
            if needed_by != arity && is_present {
                return Err(QuantifierError::UnexpectedParameter { kind: self.kind, param });
            }
        }
        if let Some((lo, hi)) = self.range {
            if lo > hi {
                return Err(QuantifierError::InvalidParameter(format!("range {lo}..{hi} is empty")));
            }
        }
        if let Some(f) = self.fraction {
            if f.num == 0 || f.num > f.den {
                return Err(QuantifierError::InvalidParameter(format!("fraction {}/{} outside (0,1]", f.num, f.den)));
            }
        }
        Ok(())
    }

    /// Tag under which this expression is counted: the kind it denotes once negation
    /// flags are absorbed, or its base kind when they cannot be.
    pub fn tag(&self) -> QuantifierKind {
        normalize(self.clone()).kind
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantifierError {
    #[error("{kind} requires parameter `{param}`")]
    MissingParameter { kind: QuantifierKind, param: &'static str },
    #[error("{kind} does not take parameter `{param}`")]
    UnexpectedParameter { kind: QuantifierKind, param: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exception object {0} is not in the universe")]
    ExceptionNotInUniverse(ObjectId),
    #[error("{0} is a plane distribution mode, not a relation between sets")]
    NotBinary(QuantifierKind),
    #[error("restrictor and scope must be subsets of the universe")]
    NotSubsets,
}

/// Truth value of a quantified statement. Proportional kinds over an empty restrictor
/// have no truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds(bool),
    IllPosed,
}

impl Verdict {
    pub fn negate(self) -> Self {
        match self {
            Verdict::Holds(b) => Verdict::Holds(!b),
            Verdict::IllPosed => Verdict::IllPosed,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Holds(b) => Some(b),
            Verdict::IllPosed => None,
        }
    }
}

/// How `exactly n` is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactlyReading {
    /// `|A| = n ∧ A ⊆ B`
    #[default]
    Printed,
    /// `|A ∩ B| = n`
    Intersective,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Semantics {
    pub exactly_n: ExactlyReading,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SetArgs {
    pub universe: BTreeSet<ObjectId>,
    pub restrictor: BTreeSet<ObjectId>,
    pub scope: BTreeSet<ObjectId>,
}

impl SetArgs {
    pub fn new(
        universe: impl IntoIterator<Item = ObjectId>,
        restrictor: impl IntoIterator<Item = ObjectId>,
        scope: impl IntoIterator<Item = ObjectId>,
    ) -> Self {
        Self {
            universe: universe.into_iter().collect(),
            restrictor: restrictor.into_iter().collect(),
            scope: scope.into_iter().collect(),
        }
    }

    /// The same arguments with the scope complemented in the universe.
    pub fn complement_scope(&self) -> Self {
        Self {
            universe: self.universe.clone(),
            restrictor: self.restrictor.clone(),
            scope: self.universe.difference(&self.scope).copied().collect(),
        }
    }

    pub fn tally(&self, exception: Option<ObjectId>) -> Tally {
        let inter = self.restrictor.intersection(&self.scope).count();
        Tally {
            universe: self.universe.len(),
            inter,
            diff: self.restrictor.len() - inter,
            scope: self.scope.len(),
            exception: exception.map(|c| Membership {
                universe: self.universe.contains(&c),
                restrictor: self.restrictor.contains(&c),
                scope: self.scope.contains(&c),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub universe: bool,
    pub restrictor: bool,
    pub scope: bool,
}

/// Cardinalities that decide every binary kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tally {
    pub universe: usize,
    /// `|A ∩ B|`
    pub inter: usize,
    /// `|A − B|`
    pub diff: usize,
    /// `|B|`
    pub scope: usize,
    pub exception: Option<Membership>,
}

impl Tally {
    /// A plane-count check: `A` is `count` objects and the scope is everything.
    pub fn count(count: usize) -> Self {
        Self { universe: count, inter: count, diff: 0, scope: count, exception: None }
    }

    pub fn restrictor(&self) -> usize {
        self.inter + self.diff
    }

    /// Tally of `(P, A, P − B)`.
    pub fn complement_scope(&self) -> Self {
        Self {
            universe: self.universe,
            inter: self.diff,
            diff: self.inter,
            scope: self.universe - self.scope,
            exception: self.exception.map(|m| Membership { scope: m.universe && !m.scope, ..m }),
        }
    }
}

pub fn eval(q: &QuantifierExpr, args: &SetArgs) -> Result<Verdict, QuantifierError> {
    eval_with(q, args, Semantics::default())
}

pub fn eval_with(q: &QuantifierExpr, args: &SetArgs, semantics: Semantics) -> Result<Verdict, QuantifierError> {
    if !args.restrictor.is_subset(&args.universe) || !args.scope.is_subset(&args.universe) {
        return Err(QuantifierError::NotSubsets);
    }
    eval_tally(q, &args.tally(q.exception), semantics)
}

/// Evaluates `q` on precomputed cardinalities.
pub fn eval_tally(q: &QuantifierExpr, tally: &Tally, semantics: Semantics) -> Result<Verdict, QuantifierError> {
    use QuantifierKind::*;
    q.check_parameters()?;
    if !q.kind.is_binary() {
        return Err(QuantifierError::NotBinary(q.kind));
    }
    if let Option::Some(m) = tally.exception {
        if !m.universe {
            return Err(QuantifierError::ExceptionNotInUniverse(q.exception.unwrap_or_default()));
        }
    }
    let t = if q.inner_negated { tally.complement_scope() } else { *tally };
    let (a, r, m) = (t.inter as u64, t.diff as u64, t.restrictor() as u64);
    let n = q.n.unwrap_or(0) as u64;
    let fraction_test = |cmp: fn(u64, u64) -> bool| {
        let f = q.fraction.expect("checked");
        if m == 0 {
            Verdict::IllPosed
        } else {
            Verdict::Holds(cmp(a * f.den as u64, f.num as u64 * m))
        }
    };
    let between = || {
        let (lo, hi) = q.range.expect("checked");
        (lo as u64..=hi as u64).contains(&a)
    };
    let exactly = || match semantics.exactly_n {
        ExactlyReading::Printed => m == n && r == 0,
        ExactlyReading::Intersective => a == n,
    };
    let base = match q.kind {
        All => Verdict::Holds(r == 0),
        Most => Verdict::Holds(a > r),
        NotAll => Verdict::Holds(r > 0),
        No => Verdict::Holds(a == 0),
        Some => Verdict::Holds(a > 0),
        SomeButNotAll => Verdict::Holds(a > 0 && r > 0),
        ExactlyN => Verdict::Holds(exactly()),
        NotExactlyN => Verdict::Holds(!exactly()),
        Between => Verdict::Holds(between()),
        NotBetween => Verdict::Holds(!between()),
        AllButAtMostN => Verdict::Holds(r <= n),
        AllButAtLeastN => Verdict::Holds(r >= n),
        MoreThanN => Verdict::Holds(a > n),
        AtLeastN => Verdict::Holds(a >= n),
        FewerThanN => Verdict::Holds(a < n),
        AtMostN => Verdict::Holds(a <= n),
        MoreThanF => fraction_test(|x, y| x > y),
        AtLeastF => fraction_test(|x, y| x >= y),
        FewerThanF => fraction_test(|x, y| x < y),
        AtMostF => fraction_test(|x, y| x <= y),
        EveryExcept => {
            let c = t.exception.ok_or(QuantifierError::MissingParameter { kind: q.kind, param: "exception" })?;
            Verdict::Holds(r == 1 && c.restrictor && !c.scope)
        }
        NoExcept => {
            let c = t.exception.ok_or(QuantifierError::MissingParameter { kind: q.kind, param: "exception" })?;
            Verdict::Holds(a == 1 && c.restrictor && c.scope)
        }
        MoreOThanO => Verdict::Holds(m > t.scope as u64),
        FewerOThanO => Verdict::Holds(m < (t.scope as u64)),
        EqualOAndO => Verdict::Holds(m == t.scope as u64),
        Each | Total => unreachable!(),
    };
    Ok(if q.outer_negated { base.negate() } else { base })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    OuterNegation,
    InnerNegation,
    Dual,
}

impl Transform {
    pub const ALL: [Transform; 3] = [Transform::OuterNegation, Transform::InnerNegation, Transform::Dual];
}

/// Applies a square-of-opposition transform. The result names a kind from the inventory
/// whenever one expresses it; otherwise the negation stays as a flag on the expression.
pub fn transform(q: &QuantifierExpr, t: Transform) -> QuantifierExpr {
    let mut out = q.clone();
    match t {
        Transform::OuterNegation => out.outer_negated = !out.outer_negated,
        Transform::InnerNegation => out.inner_negated = !out.inner_negated,
        Transform::Dual => {
            out.outer_negated = !out.outer_negated;
            out.inner_negated = !out.inner_negated;
        }
    }
    normalize(out)
}

/// Absorbs negation flags into the kind where the inventory has a counterpart.
pub fn normalize(mut q: QuantifierExpr) -> QuantifierExpr {
    loop {
        if q.inner_negated {
            if let Some(next) = inner_counterpart(&q) {
                q = QuantifierExpr { inner_negated: false, ..next };
                continue;
            }
        }
        if q.outer_negated {
            if let Some(next) = outer_counterpart(&q) {
                q = QuantifierExpr { outer_negated: false, ..next };
                continue;
            }
        }
        return q;
    }
}

/// Kind `Q'` with `Q'(A,B) ⇔ ¬Q(A,B)`.
pub fn outer_counterpart(q: &QuantifierExpr) -> Option<QuantifierExpr> {
    use QuantifierKind::*;
    let n = q.n.unwrap_or(0);
    Option::Some(match q.kind {
        All => q.rekind(NotAll),
        NotAll => q.rekind(All),
        No => q.rekind(Some),
        Some => q.rekind(No),
        ExactlyN => q.rekind(NotExactlyN),
        NotExactlyN => q.rekind(ExactlyN),
        Between => q.rekind(NotBetween),
        NotBetween => q.rekind(Between),
        MoreThanN => q.rekind(AtMostN),
        AtMostN => q.rekind(MoreThanN),
        AtLeastN => q.rekind(FewerThanN),
        FewerThanN => q.rekind(AtLeastN),
        MoreThanF => q.rekind(AtMostF),
        AtMostF => q.rekind(MoreThanF),
        AtLeastF => q.rekind(FewerThanF),
        FewerThanF => q.rekind(AtLeastF),
        AllButAtMostN => q.rekind_n(AllButAtLeastN, n + 1),
        AllButAtLeastN if n >= 1 => q.rekind_n(AllButAtMostN, n - 1),
        _ => return None,
    })
}

/// Kind `Q'` with `Q'(A,B) ⇔ Q(A, P−B)`.
pub fn inner_counterpart(q: &QuantifierExpr) -> Option<QuantifierExpr> {
    use QuantifierKind::*;
    let n = q.n.unwrap_or(0);
    let complement = || q.fraction.and_then(Fraction::complement);
    Option::Some(match q.kind {
        All => q.rekind(No),
        No => q.rekind(All),
        NotAll => q.rekind(Some),
        Some => q.rekind(NotAll),
        SomeButNotAll => q.clone(),
        AllButAtMostN => q.rekind(AtMostN),
        AtMostN => q.rekind(AllButAtMostN),
        AllButAtLeastN => q.rekind(AtLeastN),
        AtLeastN => q.rekind(AllButAtLeastN),
        MoreThanN => q.rekind_n(AllButAtLeastN, n + 1),
        FewerThanN if n >= 1 => q.rekind_n(AllButAtMostN, n - 1),
        MoreThanF => q.rekind_fraction(FewerThanF, complement()?),
        AtLeastF => q.rekind_fraction(AtMostF, complement()?),
        FewerThanF => q.rekind_fraction(MoreThanF, complement()?),
        AtMostF => q.rekind_fraction(AtLeastF, complement()?),
        EveryExcept => q.rekind(NoExcept),
        NoExcept => q.rekind(EveryExcept),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use QuantifierKind::*;

    fn holds(q: QuantifierExpr, args: &SetArgs) -> bool {
        eval(&q, args).unwrap().as_bool().unwrap()
    }

    #[test]
    fn table_examples() {
        let p = 0..6;
        assert!(holds(QuantifierExpr::new(All), &SetArgs::new(p.clone(), [1], [1, 2])));
        assert!(holds(QuantifierExpr::new(All), &SetArgs::new(p.clone(), [], [3])));
        // |A∩B| = 3 = |A−B|
        assert!(!holds(QuantifierExpr::new(Most), &SetArgs::new(p.clone(), [0, 1, 2, 3, 4, 5], [0, 1, 2])));
        assert!(holds(QuantifierExpr::between(Between, 2, 4), &SetArgs::new(p.clone(), [0, 1, 2], [0, 1])));
        assert!(holds(QuantifierExpr::count(AllButAtLeastN, 2), &SetArgs::new(p.clone(), [0, 1, 2], [0])));
        assert!(holds(QuantifierExpr::fraction(AtLeastF, 1, 3), &SetArgs::new(p.clone(), [0, 1, 2], [0])));
        assert!(holds(QuantifierExpr::except(NoExcept, 2), &SetArgs::new(p.clone(), [1, 2], [2, 3])));
        assert!(!holds(QuantifierExpr::except(NoExcept, 2), &SetArgs::new(p.clone(), [1, 2], [1, 2])));
    }

    #[test]
    fn ill_posed_fractions_but_not_most() {
        let empty = SetArgs::new(0..4, [], [1]);
        for kind in [MoreThanF, AtLeastF, FewerThanF, AtMostF] {
            assert_eq!(eval(&QuantifierExpr::fraction(kind, 2, 3), &empty).unwrap(), Verdict::IllPosed);
        }
        assert_eq!(eval(&QuantifierExpr::new(Most), &empty).unwrap(), Verdict::Holds(false));
    }

    #[test]
    fn parameter_errors() {
        let args = SetArgs::new(0..3, [0], [0]);
        assert!(matches!(
            eval(&QuantifierExpr::new(ExactlyN), &args),
            Err(QuantifierError::MissingParameter { param: "n", .. })
        ));
        assert!(matches!(
            eval(&QuantifierExpr::except(EveryExcept, 9), &args),
            Err(QuantifierError::ExceptionNotInUniverse(9))
        ));
        assert!(matches!(eval(&QuantifierExpr::new(Each), &args), Err(QuantifierError::NotBinary(Each))));
        assert!(eval(&QuantifierExpr::fraction(AtMostF, 4, 3), &args).is_err());
        assert!(eval(&QuantifierExpr::between(Between, 3, 2), &args).is_err());
        assert!(matches!(
            eval(&QuantifierExpr::count(All, 1), &args),
            Err(QuantifierError::UnexpectedParameter { .. })
        ));
    }

    #[test]
    fn transform_names() {
        assert_eq!(transform(&QuantifierExpr::new(All), Transform::OuterNegation).kind, NotAll);
        assert_eq!(transform(&QuantifierExpr::new(All), Transform::InnerNegation).kind, No);
        assert_eq!(transform(&QuantifierExpr::new(All), Transform::Dual).kind, Some);
        let most_neg = transform(&QuantifierExpr::new(Most), Transform::OuterNegation);
        assert_eq!((most_neg.kind, most_neg.outer_negated), (Most, true));
        let f = transform(&QuantifierExpr::fraction(AtLeastF, 2, 3), Transform::InnerNegation);
        assert_eq!((f.kind, f.fraction), (AtMostF, Option::Some(Fraction::new(1, 3))));
    }

    #[test]
    fn exactly_readings_differ() {
        let args = SetArgs::new(0..5, [0, 1, 2], [0, 1]);
        let q = QuantifierExpr::count(ExactlyN, 2);
        assert!(!holds(q.clone(), &args));
        let alt = Semantics { exactly_n: ExactlyReading::Intersective };
        assert_eq!(eval_with(&q, &args, alt).unwrap(), Verdict::Holds(true));
    }

    #[test]
    fn tags_absorb_flags() {
        assert_eq!(QuantifierExpr::new(Some).with_flags(false, true).tag(), NotAll);
        assert_eq!(QuantifierExpr::new(All).with_flags(true, true).tag(), Some);
        assert_eq!(QuantifierExpr::new(Most).with_flags(true, false).tag(), Most);
    }
}
