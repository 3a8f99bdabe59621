//! Generator for quantificational visual question answering data over 2D scene graphs.
//!
//! The pipeline samples scenes ([`sampler`]), builds question programs whose answers are
//! decided by model checking generalized quantifiers ([`program`], [`quantifier`]),
//! realizes them as English text ([`text`]), balances answers per question family and
//! writes JSON Lines datasets with SVG renders ([`pipeline`], [`render`]).

pub mod geometry;
pub mod pipeline;
pub mod program;
pub mod quantifier;
pub mod render;
pub mod rng;
pub mod sampler;
pub mod scene;
pub mod spatial;
pub mod text;
