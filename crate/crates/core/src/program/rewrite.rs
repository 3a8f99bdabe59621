use super::QuestionProgram;
use crate::quantifier::{normalize, transform, QuantifierExpr, Transform};

/// Programs equivalent to `p` by the square of opposition on its main quantifier.
///
/// Each rewrite names the counterpart kind and carries the negation flags that undo the
/// transform, so `all(A, B)` yields `no(A, P − B)`, `¬not_all(A, B)` and `¬some(A, P − B)`.
pub fn equivalent_rewrites(p: &QuestionProgram) -> Vec<QuestionProgram> {
    let Some(q) = p.quantifiers.first() else {
        return vec![];
    };
    let base = normalize(q.clone());
    let mut out: Vec<QuantifierExpr> = Vec::new();
    if base != *q {
        out.push(base.clone());
    }
    for t in Transform::ALL {
        let counterpart = transform(&base, t);
        if counterpart.outer_negated || counterpart.inner_negated || counterpart == base {
            continue;
        }
        let (outer, inner) = match t {
            Transform::OuterNegation => (true, false),
            Transform::InnerNegation => (false, true),
            Transform::Dual => (true, true),
        };
        let r = counterpart.with_flags(outer, inner);
        if r != *q && !out.contains(&r) {
            out.push(r);
        }
    }
    out.into_iter().map(|q| rewrite_with(p, q)).collect()
}

/// `p` with its main quantifier replaced.
pub fn rewrite_with(p: &QuestionProgram, q: QuantifierExpr) -> QuestionProgram {
    let mut r = p.clone();
    r.quantifiers[0] = q;
    r
}
