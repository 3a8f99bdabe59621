use rand::Rng as _;

use super::SynonymTable;
use crate::program::{ObjectAttr, ObjectFilter, PlaneAttr, PlaneFilter, QuestionProgram, Scope};
use crate::quantifier::{Arity, Fraction, QuantifierExpr, QuantifierKind};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Number {
    Singular,
    Plural,
}

impl Number {
    fn of(n: u32) -> Self {
        if n == 1 {
            Number::Singular
        } else {
            Number::Plural
        }
    }
}

pub(super) struct Context<'a> {
    p: &'a QuestionProgram,
    syn: &'a SynonymTable,
}

impl<'a> Context<'a> {
    pub(super) fn new(p: &'a QuestionProgram, syn: &'a SynonymTable) -> Self {
        Self { p, syn }
    }

    /// Surface text for one slot, or `None` when the program has nothing to put there.
    pub(super) fn bind(&mut self, slot: &str, rng: &mut Rng) -> Option<String> {
        let p = self.p;
        let sel = &p.plane_selector;
        let main = &p.quantifiers[0];
        let syn = self.syn;
        Some(match slot {
            "PC" => opt(sel.filter.color.map(|c| syn.pick(&format!("plane_color.{}", c.name()), rng))),
            "PM" => opt(sel.filter.material.map(|m| syn.pick(&format!("plane_material.{}", m.name()), rng))),
            "PS" => opt(sel.filter.shape.map(|s| syn.pick(&format!("plane_shape.{}", s.name()), rng))),
            "ps" => if sel.plural { "s" } else { "" }.into(),
            "PBE" => {
                let number = match &sel.count {
                    Some(c) => count_number(&c.quantifier),
                    None if sel.plural => Number::Plural,
                    None => Number::Singular,
                };
                be(number).into()
            }
            "PQ" => {
                let c = sel.count.as_ref()?;
                let total = c.mode == crate::program::CountMode::Total;
                plane_count_phrase(&c.quantifier, &c.objects, total, syn, rng)?
            }
            "PN" => noun_phrase(&sel.count.as_ref()?.objects, Number::Plural, syn, rng),
            "PN1" => sel.count.as_ref()?.quantifier.range?.0.to_string(),
            "PN2" => sel.count.as_ref()?.quantifier.range?.1.to_string(),
            "PREL" => syn.pick(&format!("relation.{}", sel.spatial.as_ref()?.relation.name()), rng),
            "PANCHOR" => format!("the {}", plane_noun_phrase(&sel.spatial.as_ref()?.anchor, syn, rng)),
            "PATTR" => match sel.unique_attribute? {
                PlaneAttr::Shape => "shape".into(),
                PlaneAttr::Color => syn.pick("attribute.color", rng),
                PlaneAttr::Material => "material".into(),
            },

            "OC" => main.n?.to_string(),
            "Z" => opt(p.restrictor.size.map(|v| syn.pick(&format!("size.{}", v.name()), rng))),
            "C" => opt(p.restrictor.color.map(|v| syn.pick(&format!("color.{}", v.name()), rng))),
            "M" => opt(p.restrictor.material.map(|v| syn.pick(&format!("material.{}", v.name()), rng))),
            "S" => match p.restrictor.shape {
                Some(s) => syn.pick(&format!("shape.{}", s.name()), rng),
                None => syn.pick("shape.any", rng),
            },
            "os" => if main.n == Some(1) { "" } else { "s" }.into(),
            "QA" => quantified(main, &p.restrictor, p.exception.as_ref(), syn, rng)?,
            "BE" => be(quantified_number(main)?).into(),
            "DO" => if quantified_number(main)? == Number::Singular { "does" } else { "do" }.into(),
            "HAVE" => if quantified_number(main)? == Number::Singular { "has" } else { "have" }.into(),
            "NOT" => if main.inner_negated { "not" } else { "" }.into(),
            "REL" => match &p.scope {
                Scope::Related { relation, .. } => syn.pick(&format!("relation.{}", relation.name()), rng),
                _ => return None,
            },
            "ANCHOR" => match &p.scope {
                Scope::Related { anchor, .. } => format!("the {}", noun_phrase(anchor, Number::Singular, syn, rng)),
                _ => return None,
            },
            "ATTR" => match &p.scope {
                Scope::SameAttribute { attribute, .. } => syn.pick(&format!("attribute.{}", attr_name(*attribute)), rng),
                _ => return None,
            },
            "QC" => {
                let inner = p.quantifiers.get(1)?;
                let comparison = match &p.scope {
                    Scope::SameAttribute { comparison, .. } | Scope::SizeRelation { comparison, .. } => comparison,
                    _ => return None,
                };
                quantified(inner, comparison, None, syn, rng)?
            }
            "CMP" => match &p.scope {
                Scope::SizeRelation { larger: true, .. } => pick(&["larger", "bigger"], rng),
                Scope::SizeRelation { larger: false, .. } => "smaller".into(),
                _ => return None,
            },
            "COMPARE" => {
                let comparison = compared(p)?;
                let a = noun_phrase(&p.restrictor, Number::Plural, syn, rng);
                let b = noun_phrase(comparison, Number::Plural, syn, rng);
                match main.kind {
                    QuantifierKind::MoreOThanO => format!("more {a} than {b}"),
                    QuantifierKind::FewerOThanO => format!("fewer {a} than {b}"),
                    QuantifierKind::EqualOAndO => format!("as many {a} as {b}"),
                    _ => return None,
                }
            }
            "NA" => {
                compared(p)?;
                noun_phrase(&p.restrictor, Number::Plural, syn, rng)
            }
            "NB" => noun_phrase(compared(p)?, Number::Plural, syn, rng),
            "CMPN" => match main.kind {
                QuantifierKind::MoreOThanO => pick(&["greater than", "larger than"], rng),
                QuantifierKind::FewerOThanO => pick(&["smaller than", "less than"], rng),
                QuantifierKind::EqualOAndO => pick(&["equal to", "the same as"], rng),
                _ => return None,
            },
            _ => return None,
        })
    }
}

fn compared(p: &QuestionProgram) -> Option<&ObjectFilter> {
    match &p.scope {
        Scope::Compared { comparison } if p.quantifiers[0].kind.is_comparative() => Some(comparison),
        _ => None,
    }
}

fn opt(s: Option<String>) -> String {
    s.unwrap_or_default()
}

fn pick(options: &[&str], rng: &mut Rng) -> String {
    options[rng.gen_range(0..options.len())].to_string()
}

fn be(n: Number) -> &'static str {
    match n {
        Number::Singular => "is",
        Number::Plural => "are",
    }
}

fn attr_name(a: ObjectAttr) -> &'static str {
    match a {
        ObjectAttr::Size => "size",
        ObjectAttr::Color => "color",
        ObjectAttr::Material => "material",
        ObjectAttr::Shape => "shape",
    }
}

fn plural(noun: &str) -> String {
    format!("{noun}s")
}

/// "small red rubber cubes to the left of the cyan sphere"
pub(super) fn noun_phrase(f: &ObjectFilter, number: Number, syn: &SynonymTable, rng: &mut Rng) -> String {
    let mut words: Vec<String> = Vec::new();
    if let Some(v) = f.size {
        words.push(syn.pick(&format!("size.{}", v.name()), rng));
    }
    if let Some(v) = f.color {
        words.push(syn.pick(&format!("color.{}", v.name()), rng));
    }
    if let Some(v) = f.material {
        words.push(syn.pick(&format!("material.{}", v.name()), rng));
    }
    let noun = match f.shape {
        Some(s) => syn.pick(&format!("shape.{}", s.name()), rng),
        None => syn.pick("shape.any", rng),
    };
    words.push(match number {
        Number::Singular => noun,
        Number::Plural => plural(&noun),
    });
    if let Some(sp) = &f.spatial {
        words.push(syn.pick(&format!("relation.{}", sp.relation.name()), rng));
        words.push(format!("the {}", noun_phrase(&sp.anchor, Number::Singular, syn, rng)));
    }
    words.join(" ")
}

/// "black wooden triangular plane"
fn plane_noun_phrase(f: &PlaneFilter, syn: &SynonymTable, rng: &mut Rng) -> String {
    let mut words = Vec::new();
    if let Some(c) = f.color {
        words.push(syn.pick(&format!("plane_color.{}", c.name()), rng));
    }
    if let Some(m) = f.material {
        words.push(syn.pick(&format!("plane_material.{}", m.name()), rng));
    }
    if let Some(s) = f.shape {
        words.push(syn.pick(&format!("plane_shape.{}", s.name()), rng));
    }
    words.push("plane".into());
    words.join(" ")
}

/// Grammatical number of the noun phrase a count constraint produces.
fn count_number(q: &QuantifierExpr) -> Number {
    match q.kind.arity() {
        Arity::Count => Number::of(q.n.unwrap_or(0)),
        _ => Number::Plural,
    }
}

/// Grammatical number of a quantified noun phrase.
fn quantified_number(q: &QuantifierExpr) -> Option<Number> {
    use QuantifierKind::*;
    Option::Some(match q.kind {
        ExactlyN | NotExactlyN | MoreThanN | AtLeastN | AtMostN => Number::of(q.n?),
        EveryExcept | NoExcept => Number::Singular,
        MoreOThanO | FewerOThanO | EqualOAndO | Each | Total => return None,
        _ => Number::Plural,
    })
}

fn plane_count_phrase(
    q: &QuantifierExpr,
    objects: &ObjectFilter,
    total: bool,
    syn: &SynonymTable,
    rng: &mut Rng,
) -> Option<String> {
    use QuantifierKind::*;
    let np = |n: u32, rng: &mut Rng| noun_phrase(objects, Number::of(n), syn, rng);
    Option::Some(match q.kind {
        ExactlyN if total => format!("{} {}", q.n?, np(q.n?, rng)),
        ExactlyN => format!("exactly {} {}", q.n?, np(q.n?, rng)),
        NotExactlyN => format!("not exactly {} {}", q.n?, np(q.n?, rng)),
        AtLeastN => format!("at least {} {}", q.n?, np(q.n?, rng)),
        AtMostN => format!("at most {} {}", q.n?, np(q.n?, rng)),
        MoreThanN => format!("more than {} {}", q.n?, np(q.n?, rng)),
        FewerThanN => format!("fewer than {} {}", q.n?, np(2, rng)),
        Between => format!("between {} and {} {}", q.range?.0, q.range?.1, np(2, rng)),
        NotBetween => format!("not {} to {} {}", q.range?.0, q.range?.1, np(2, rng)),
        No => format!("no {}", np(2, rng)),
        _ => return None,
    })
}

/// "most of the red cubes", "every cube except the large metal cube", "at least 2/3 of the balls"
fn quantified(
    q: &QuantifierExpr,
    restrictor: &ObjectFilter,
    exception: Option<&ObjectFilter>,
    syn: &SynonymTable,
    rng: &mut Rng,
) -> Option<String> {
    use QuantifierKind::*;
    let pl = |rng: &mut Rng| noun_phrase(restrictor, Number::Plural, syn, rng);
    let counted = |n: u32, rng: &mut Rng| noun_phrase(restrictor, Number::of(n), syn, rng);
    let the = |rng: &mut Rng| pick(&["the ", "of the "], rng);
    Option::Some(match q.kind {
        All => format!("all {}{}", the(rng), pl(rng)),
        Most => format!("most of the {}", pl(rng)),
        NotAll => format!("not all {}{}", the(rng), pl(rng)),
        No => format!("no {}", pl(rng)),
        Some => format!("some {}", pl(rng)),
        SomeButNotAll => format!("some but not all of the {}", pl(rng)),
        ExactlyN => format!("exactly {} {}", q.n?, counted(q.n?, rng)),
        NotExactlyN => format!("not exactly {} {}", q.n?, counted(q.n?, rng)),
        Between => format!("between {} and {} {}", q.range?.0, q.range?.1, pl(rng)),
        NotBetween => format!("not between {} and {} {}", q.range?.0, q.range?.1, pl(rng)),
        AllButAtMostN => format!("all the {} but at most {}", pl(rng), q.n?),
        AllButAtLeastN => format!("all the {} but at least {}", pl(rng), q.n?),
        MoreThanN => format!("more than {} {}", q.n?, counted(q.n?, rng)),
        AtLeastN => format!("at least {} {}", q.n?, counted(q.n?, rng)),
        FewerThanN => format!("fewer than {} {}", q.n?, pl(rng)),
        AtMostN => format!("at most {} {}", q.n?, counted(q.n?, rng)),
        MoreThanF | AtLeastF | FewerThanF | AtMostF => {
            let head = match q.kind {
                MoreThanF => "more than",
                AtLeastF => "at least",
                FewerThanF => "fewer than",
                _ => "at most",
            };
            let f = fraction_words(q.fraction?, rng.gen_bool(0.5));
            format!("{head} {f} of the {}", pl(rng))
        }
        EveryExcept | NoExcept => {
            let c = exception?;
            let head = if q.kind == EveryExcept { "every" } else { "no" };
            let sg = noun_phrase(restrictor, Number::Singular, syn, rng);
            format!("{head} {sg} except the {}", noun_phrase(c, Number::Singular, syn, rng))
        }
        MoreOThanO | FewerOThanO | EqualOAndO | Each | Total => return None,
    })
}

/// "2/3" when `numeric`, otherwise words: "two thirds", "a half", "three quarters".
pub fn fraction_words(f: Fraction, numeric: bool) -> String {
    if numeric {
        return format!("{}/{}", f.num, f.den);
    }
    const CARDINALS: [&str; 11] = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];
    const ORDINALS: [&str; 11] = ["", "whole", "half", "third", "quarter", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"];
    let (n, d) = (f.num as usize, f.den as usize);
    if d >= ORDINALS.len() || n >= CARDINALS.len() {
        return format!("{n}/{d}");
    }
    if n == d {
        return "all".into();
    }
    if n == 1 {
        return if d == 2 { "a half".into() } else { format!("one {}", ORDINALS[d]) };
    }
    let denom = if d == 2 { "halves".to_string() } else { format!("{}s", ORDINALS[d]) };
    format!("{} {denom}", CARDINALS[n])
}
