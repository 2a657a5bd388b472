//! Exact computational group theory for character degree sums.
//!
//! Finite groups are handled as fully enumerated permutation groups. On top of
//! that the crate computes irreducible character degrees (Dixon's method over a
//! prime field), the exact invariants `T(G)`, `k(G)`, `I(G)` and their ratios,
//! structural predicates (solvable, supersolvable, nilpotent, p-solvable,
//! Fitting height), isoclinism tests, closed-form invariants of several
//! families of simple groups, and an implication checker that runs the degree
//! sum criteria over a corpus of groups.

pub mod analysis;
pub mod builtin;
pub mod chartable;
pub mod error;
pub mod families;
pub mod field;
pub mod group;
pub mod isoclinism;
pub mod metrics;
pub mod modp;
pub mod perm;
pub mod primes;
pub mod quotient;
pub mod structure;
pub mod subgroup;
pub mod verifier;

pub use analysis::{analyze, AnalysisRecord, SCHEMA_VERSION};
pub use chartable::{character_degrees, character_table_mod_p, CharacterData};
pub use error::{Error, Result};
pub use group::{PermutationGroup, DEFAULT_ELEMENT_CAP};
pub use metrics::GroupMetrics;
pub use perm::Perm;
pub use structure::StructuralProfile;
pub use subgroup::Subgroup;

/// Exact rational number used for every ratio (`t`, `d`, `i`) in the crate.
pub type Rational = num_rational::BigRational;
