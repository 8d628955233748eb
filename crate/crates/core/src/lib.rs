//! LP-grammars, linearly-restricted branching vector addition systems with
//! states and additional memory (lBVASSAM), and the translations between
//! them.
//!
//! * [`calculus`]: types, sequents and a cut-free prover for the Lambek
//!   calculus with permutation.
//! * [`grammar`]: LP-grammars over multiset words and Parikh vectors.
//! * [`bvassam`]: systems, derivation trees and a size-bounded derivation
//!   engine.
//! * [`constructions`]: the grammar-to-system and system-to-grammar
//!   translations, plus equivalence checks.
//! * [`quadratic`]: a system whose language `{(l, n) : n > 0, l <= n^2}` is
//!   not semilinear.
//! * [`bundled`]: small example systems and grammars.

pub mod calculus;
pub mod constructions;
pub mod bundled;
pub mod bvassam;
pub mod grammar;
pub mod quadratic;
pub mod vector;

pub use vector::Vector;
