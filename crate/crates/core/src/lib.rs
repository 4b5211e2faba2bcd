//! Finite-groupoid models of truncation elimination.
//!
//! Groupoids stand in for 1-types, their component sets for 0-truncations
//! and inhabitedness for propositional truncation. On top of that model the
//! crate decides when a functor factors through the component set, builds
//! the factorization, constructs the collapsed higher inductive type of a
//! groupoid together with its descent data, and produces set-based
//! representations of groupoids with abelian loop groups. Each construction
//! ships with an exhaustive brute-force counterpart for cross-checking.

pub mod dsl;
pub mod elim;
pub mod groupoid;
pub mod hit;
pub mod represent;
pub mod trunc;

pub use groupoid::{
    FinGroup, FinGroupoid, GroupoidEquivalence, GroupoidFunctor, MorId, NaturalIso, ObjId,
};
