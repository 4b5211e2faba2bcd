use thiserror::Error;

use super::functor::same_groupoid;
use super::{GroupoidFunctor, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NaturalityError {
    #[error("source and target functors do not share domain and codomain")]
    FunctorMismatch,
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("component at `{object}` does not go from source image to target image")]
    EndpointMismatch { object: String },
    #[error("naturality square for `{morphism}` fails: `{lhs}` != `{rhs}`")]
    SquareFails { morphism: String, lhs: String, rhs: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("{which} functor is not valid: {source}")]
    Functor { which: &'static str, source: super::FunctorError },
    #[error("{which} does not run between the composite and the identity")]
    WrongEndpoints { which: &'static str },
    #[error("{which} is not natural: {source}")]
    Naturality { which: &'static str, source: NaturalityError },
}

/// A family of codomain morphisms `components[a]: source(a) -> target(a)`.
/// Every component is invertible because the codomain is a groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalIso {
    pub source: GroupoidFunctor,
    pub target: GroupoidFunctor,
    pub components: Vec<MorId>,
}

impl NaturalIso {
    pub fn new(source: GroupoidFunctor, target: GroupoidFunctor, components: Vec<MorId>) -> Self {
        Self { source, target, components }
    }

    pub fn identity(f: GroupoidFunctor) -> Self {
        let components = f.dom().objects().map(|a| f.cod().identity(f.obj(a))).collect();
        Self { source: f.clone(), target: f, components }
    }

    pub fn component(&self, a: ObjId) -> MorId {
        self.components[a.0]
    }

    /// Checks endpoints of every component and every naturality square
    /// `nu_b . F(m) == G(m) . nu_a` for `m: a -> b`, reporting the first
    /// failure in morphism order.
    pub fn check(&self) -> Result<(), NaturalityError> {
        let (src, tgt) = (&self.source, &self.target);
        if !same_groupoid(src.dom(), tgt.dom()) || !same_groupoid(src.cod(), tgt.cod()) {
            return Err(NaturalityError::FunctorMismatch);
        }
        let (dom, cod) = (src.dom(), src.cod());
        if self.components.len() != dom.object_count() {
            return Err(NaturalityError::ComponentCount { expected: dom.object_count(), found: self.components.len() });
        }
        for a in dom.objects() {
            let c = self.component(a);
            if c.0 >= cod.morphism_count() || cod.src(c) != src.obj(a) || cod.tgt(c) != tgt.obj(a) {
                return Err(NaturalityError::EndpointMismatch { object: dom.object_name(a).to_string() });
            }
        }
        for m in dom.morphisms() {
            let (a, b) = (dom.src(m), dom.tgt(m));
            let lhs = cod.try_compose(self.component(b), src.mor(m)).expect("endpoints checked");
            let rhs = cod.try_compose(tgt.mor(m), self.component(a)).expect("endpoints checked");
            if lhs != rhs {
                return Err(NaturalityError::SquareFails {
                    morphism: dom.morphism_name(m).to_string(),
                    lhs: cod.morphism_name(lhs).to_string(),
                    rhs: cod.morphism_name(rhs).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }
}

/// `fwd: A -> B`, `bwd: B -> A`, `unit: bwd . fwd => id_A`,
/// `counit: fwd . bwd => id_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidEquivalence {
    pub fwd: GroupoidFunctor,
    pub bwd: GroupoidFunctor,
    pub unit: NaturalIso,
    pub counit: NaturalIso,
}

impl GroupoidEquivalence {
    pub fn check(&self) -> Result<(), EquivalenceError> {
        self.fwd.validate().map_err(|source| EquivalenceError::Functor { which: "forward", source })?;
        self.bwd.validate().map_err(|source| EquivalenceError::Functor { which: "backward", source })?;
        let round = |outer: &GroupoidFunctor, inner: &GroupoidFunctor, which| {
            outer.after(inner).map_err(|source| EquivalenceError::Functor { which, source })
        };
        let there_and_back = round(&self.bwd, &self.fwd, "backward after forward")?;
        let back_and_there = round(&self.fwd, &self.bwd, "forward after backward")?;
        let id_a = GroupoidFunctor::identity(self.fwd.dom().clone());
        let id_b = GroupoidFunctor::identity(self.fwd.cod().clone());
        for (iso, composite, identity, which) in [
            (&self.unit, &there_and_back, &id_a, "unit"),
            (&self.counit, &back_and_there, &id_b, "counit"),
        ] {
            if !iso.source.same_maps(composite) || !iso.target.same_maps(identity) {
                return Err(EquivalenceError::WrongEndpoints { which });
            }
            iso.check().map_err(|source| EquivalenceError::Naturality { which, source })?;
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn identity(g: std::sync::Arc<super::FinGroupoid>) -> Self {
        let id = GroupoidFunctor::identity(g);
        Self {
            fwd: id.clone(),
            bwd: id.clone(),
            unit: NaturalIso::identity(id.clone()),
            counit: NaturalIso::identity(id),
        }
    }
}
