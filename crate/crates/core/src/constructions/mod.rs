//! Translations between LP-grammars and linearly-restricted BVASSAM, and
//! the checks that they preserve languages up to Parikh images.

mod harness;
mod to_bvass;
mod to_lp;

pub use harness::{
    check_bvass_to_lp_against, check_lp_to_bvass_against, check_theorem_bvass_to_lp, check_theorem_lp_to_bvass,
    Counterexample, Direction, EquivalenceReport, HarnessConfig, LanguageBound,
};
pub use to_bvass::{
    lbam_construction, lbam_of, postpone_lexicon_rules, types_of_vector, IndexMap, LbamConstruction,
};
pub use to_lp::{g_power, g_times, lpg_construction, lpg_division_only, lpg_of, LpgConstruction, Vocabulary};

use crate::bvassam::{DeriveError, SystemError};
use crate::calculus::{Kind, LType};
use crate::grammar::GrammarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("g^v is undefined for the zero vector")]
    ZeroVector,
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {0} is visible and must be zero")]
    VisibleCoordinate(usize),
    #[error("product outside a denominator in {0}")]
    ProductOutsideDenominator(String),
    #[error("derivation cannot be normalized")]
    Normalization,
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

/// Rewrites `A/(B*C)` to `A/B/C` everywhere, yielding a product-free type
/// equivalent to `t`. Products are only allowed as (parts of) denominators.
pub fn eliminate_products(t: LType) -> Result<LType, ConstructionError> {
    fn factors(t: LType, out: &mut Vec<LType>) {
        match t.kind() {
            Kind::Prod(a, b) => {
                factors(a, out);
                factors(b, out);
            }
            _ => out.push(t),
        }
    }
    fn go(t: LType, whole: LType) -> Result<LType, ConstructionError> {
        match t.kind() {
            Kind::Prim(_) => Ok(t),
            Kind::Prod(..) => Err(ConstructionError::ProductOutsideDenominator(whole.to_string())),
            Kind::Div(a, d) => {
                let mut ds = Vec::new();
                factors(d, &mut ds);
                let mut out = go(a, whole)?;
                for d in ds {
                    out = LType::div(out, go(d, whole)?);
                }
                Ok(out)
            }
        }
    }
    go(t, t)
}
