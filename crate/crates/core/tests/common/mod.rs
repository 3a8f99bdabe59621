//! Test oracles written from the set-theoretic definitions, independent of the engine.

#![allow(dead_code)]

use qlevr_gen::quantifier::{QuantifierExpr, QuantifierKind, Verdict};

/// Truth value as the quantifier table defines it; `None` for an undefined fraction.
pub type Truth = Option<bool>;

#[derive(Debug, Clone, Copy)]
pub enum Param {
    None,
    N(u32),
    Range(u32, u32),
    Frac(u32, u32),
    Except(usize),
}

pub fn contains(set: &[usize], x: usize) -> bool {
    set.contains(&x)
}

pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|&x| contains(b, x)).collect()
}

pub fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|&x| !contains(b, x)).collect()
}

pub fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&x| contains(b, x))
}

pub fn is_singleton(set: &[usize], c: usize) -> bool {
    set.len() == 1 && set[0] == c
}

/// Materializes the sets and counts, one formula per kind.
pub fn oracle(kind: QuantifierKind, param: Param, a: &[usize], b: &[usize]) -> Truth {
    use QuantifierKind as K;
    let ab = intersection(a, b);
    let a_b = difference(a, b);
    let n = match param {
        Param::N(n) => n as usize,
        _ => 0,
    };
    let ratio = |cmp: fn(usize, usize) -> bool| match param {
        Param::Frac(num, den) if !a.is_empty() => Some(cmp(ab.len() * den as usize, num as usize * a.len())),
        _ => None,
    };
    let in_range = || match param {
        Param::Range(lo, hi) => lo as usize <= ab.len() && ab.len() <= hi as usize,
        _ => unreachable!(),
    };
    let exactly = || a.len() == n && subset(a, b);
    let except = |set: &[usize]| match param {
        Param::Except(c) => is_singleton(set, c),
        _ => unreachable!(),
    };
    Some(match kind {
        K::All => subset(a, b),
        K::NotAll => !subset(a, b),
        K::Some => !ab.is_empty(),
        K::No => ab.is_empty(),
        K::SomeButNotAll => !ab.is_empty() && !a_b.is_empty(),
        K::Most => ab.len() > a_b.len(),
        K::ExactlyN => exactly(),
        K::NotExactlyN => !exactly(),
        K::Between => in_range(),
        K::NotBetween => !in_range(),
        K::AllButAtLeastN => a_b.len() >= n,
        K::AllButAtMostN => a_b.len() <= n,
        K::MoreThanN => ab.len() > n,
        K::AtLeastN => ab.len() >= n,
        K::FewerThanN => ab.len() < n,
        K::AtMostN => ab.len() <= n,
        K::MoreThanF => return ratio(|x, y| x > y),
        K::AtLeastF => return ratio(|x, y| x >= y),
        K::FewerThanF => return ratio(|x, y| x < y),
        K::AtMostF => return ratio(|x, y| x <= y),
        K::EveryExcept => except(&a_b),
        K::NoExcept => except(&ab),
        K::MoreOThanO => a.len() > b.len(),
        K::FewerOThanO => a.len() < b.len(),
        K::EqualOAndO => a.len() == b.len(),
        K::Each | K::Total => unreachable!("not binary"),
    })
}

pub fn params(kind: QuantifierKind, universe: usize) -> Vec<Param> {
    use qlevr_gen::quantifier::Arity;
    match kind.arity() {
        Arity::Count => (0..=6).map(Param::N).collect(),
        Arity::Range => (0..=6).flat_map(|lo| (lo..=6).map(move |hi| Param::Range(lo, hi))).collect(),
        Arity::Fraction => (1..=6).flat_map(|d| (1..=d).map(move |n| Param::Frac(n, d))).collect(),
        Arity::Exception => (0..universe).map(Param::Except).collect(),
        _ => vec![Param::None],
    }
}

pub fn expr(kind: QuantifierKind, p: Param) -> QuantifierExpr {
    match p {
        Param::None => QuantifierExpr::new(kind),
        Param::N(n) => QuantifierExpr::count(kind, n),
        Param::Range(lo, hi) => QuantifierExpr::between(kind, lo, hi),
        Param::Frac(n, d) => QuantifierExpr::fraction(kind, n, d),
        Param::Except(c) => QuantifierExpr::except(kind, c),
    }
}

pub fn members(mask: u32, k: usize) -> Vec<usize> {
    (0..k).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn truth(v: Verdict) -> Truth {
    v.as_bool()
}

/// Calls `f(P, A, B)` for every pair of subsets of every universe of size 0..=6.
pub fn for_all_sets(mut f: impl FnMut(&[usize], &[usize], &[usize])) {
    for k in 0..=6usize {
        let p: Vec<usize> = (0..k).collect();
        for am in 0..(1u32 << k) {
            let a = members(am, k);
            for bm in 0..(1u32 << k) {
                let b = members(bm, k);
                f(&p, &a, &b);
            }
        }
    }
}

pub fn binary_kinds() -> Vec<QuantifierKind> {
    QuantifierKind::ALL.into_iter().filter(|k| k.is_binary()).collect()
}

