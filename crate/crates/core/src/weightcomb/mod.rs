//! Closed-form combinatorics: root data, depth, projective height, blocks,
//! complexity, hearts, Heller orbits and component shapes.
//!
//! SL(2) weights are integers with `α = 2` and `ρ = 1`.

mod blocks;
mod component;
mod formulas;
mod rootdatum;

pub use blocks::{block_members, block_of, classify_block_type, morita_weight_map, BlockId, BlockKind, RepType};
pub use component::{classify_component, ComponentShape, Context, Evidence};
pub use formulas::{
    heart_weights, heller_orbit_verma, simple_complexity, steinberg_ph, ub1_bound_check, verma_period,
    verma_projective_height, ProjectiveHeight, Ub1Report,
};
pub use rootdatum::{valuation, Depth, Root, RootDatum, Weight};

use thiserror::Error;

use crate::algrep::RepError;

/// Hypotheses behind the projective-height and period formulas.
pub const STANDARD_HYPOTHESES: [&str; 3] = ["reductive", "defined-over-Fp", "good-prime"];

#[derive(Debug, Error)]
pub enum CombError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("hypothesis `{name}` fails: {detail}")]
    Hypothesis { name: &'static str, detail: String },
    #[error("module is projective")]
    Projective,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Base-`p` digits of `λ`, least significant first, padded to `r`.
pub fn digits(p: u32, r: u32, lambda: u64) -> Vec<u32> {
    let mut x = lambda;
    (0..r)
        .map(|_| {
            let d = (x % p as u64) as u32;
            x /= p as u64;
            d
        })
        .collect()
}
