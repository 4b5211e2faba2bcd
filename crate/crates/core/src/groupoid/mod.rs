//! Finite groups and groupoids with explicit composition tables, functors
//! between them, natural isomorphisms and equivalences.
//!
//! Composition is written `compose(g, f)` and means "g after f": it is
//! defined when `tgt(f) == src(g)` and yields a morphism `src(f) -> tgt(g)`.

mod build;
pub(crate) mod enumerate;
mod functor;
mod group;
mod natural;
mod table;

use std::fmt;

pub use build::{
    codiscrete, coproduct, cyclic, delooping, discrete, discrete_on, disjoint_union,
    full_subgroupoid, product, symmetric,
};
pub use enumerate::{
    enumerate_functors, enumerate_natural_isos, find_equivalence, functor_search_space,
    EnumerationError, DEFAULT_CAP,
};
pub use functor::{FunctorError, GroupoidFunctor};
pub use group::{FinGroup, GroupError};
pub use natural::{EquivalenceError, GroupoidEquivalence, NaturalIso, NaturalityError};
pub use table::{validate_groupoid, FinGroupoid, GroupoidError, RawComposite, RawGroupoid, RawMorphism};

/// Index of an object inside one [`FinGroupoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Index of a morphism inside one [`FinGroupoid`]. Identities come first,
/// in object order, followed by the declared morphisms in input order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

impl ObjId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "obj#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mor#{}", self.0)
    }
}

/// Names are nonempty runs of ASCII letters, digits and underscores.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Name the identity on `object` receives.
pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}
