//! The Lambek calculus with permutation: types, sequents, cut-free proofs.

pub mod enumerate;
mod ops;
mod parse;
mod proof;
mod prover;
mod sequent;
mod types;

pub use ops::{cut, cut_sequents, flatten_products, invert_div_right, invert_prod_left};
pub use parse::{parse_sequent, parse_type, ParseError};
pub use proof::{ProofTree, Rule};
pub use prover::{prove, ProveError, Prover, ProverConfig, DEFAULT_MAX_EXPANSIONS};
pub use sequent::Sequent;
pub use types::{is_identifier, Kind, LType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("a sequent needs a nonempty antecedent")]
    EmptyAntecedent,
    #[error("cut formula {formula} does not occur in the antecedent of {sequent}")]
    CutMismatch { formula: String, sequent: String },
    #[error("{0} is not a product")]
    NotAProduct(String),
    #[error("succedent {0} is not a division")]
    NotADivision(String),
    #[error("{formula} does not occur in the antecedent of {sequent}")]
    NotInAntecedent { formula: String, sequent: String },
    #[error("depth is only defined for product-free types, got {0}")]
    ContainsProduct(String),
    #[error("invalid proof step at {sequent}: {reason}")]
    InvalidProof { sequent: String, reason: String },
}

/// Depth of a product-free type.
pub fn type_depth(t: LType) -> Result<usize, CalculusError> {
    t.depth().ok_or_else(|| CalculusError::ContainsProduct(t.to_string()))
}
