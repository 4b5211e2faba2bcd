use std::sync::Arc;

use thiserror::Error;

use super::{FinGroupoid, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("object map has {found} entries, domain has {expected} objects")]
    ObjectMapShape { expected: usize, found: usize },
    #[error("morphism map has {found} entries, domain has {expected} morphisms")]
    MorphismMapShape { expected: usize, found: usize },
    #[error("image of `{0}` is not an object of the codomain")]
    ObjectOutOfRange(String),
    #[error("image of `{0}` is not a morphism of the codomain")]
    MorphismOutOfRange(String),
    #[error("image of `{morphism}` does not go between the images of its endpoints")]
    BadEndpoints { morphism: String },
    #[error("identity on `{0}` is not sent to an identity")]
    IdentityNotPreserved(String),
    #[error("composite `{g} . {f}` is not preserved")]
    CompositionNotPreserved { f: String, g: String },
    #[error("functors do not compose: codomain of the first is not the domain of the second")]
    DomainMismatch,
}

/// A structure-preserving map between two finite groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFunctor {
    dom: Arc<FinGroupoid>,
    cod: Arc<FinGroupoid>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

pub(crate) fn same_groupoid(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupoidFunctor {
    pub fn new(
        dom: Arc<FinGroupoid>,
        cod: Arc<FinGroupoid>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        let f = Self { dom, cod, obj_map, mor_map };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        dom: Arc<FinGroupoid>,
        cod: Arc<FinGroupoid>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Self {
        debug_assert!(Self { dom: dom.clone(), cod: cod.clone(), obj_map: obj_map.clone(), mor_map: mor_map.clone() }
            .validate()
            .is_ok());
        Self { dom, cod, obj_map, mor_map }
    }

    /// Builds the morphism map from the images of the non-identity
    /// morphisms; identities go to identities.
    pub fn from_non_identity(
        dom: Arc<FinGroupoid>,
        cod: Arc<FinGroupoid>,
        obj_map: Vec<ObjId>,
        non_identity: &[MorId],
    ) -> Result<Self, FunctorError> {
        if obj_map.len() != dom.object_count() {
            return Err(FunctorError::ObjectMapShape { expected: dom.object_count(), found: obj_map.len() });
        }
        if let Some(a) = obj_map.iter().position(|o| o.0 >= cod.object_count()) {
            return Err(FunctorError::ObjectOutOfRange(dom.object_name(ObjId(a)).to_string()));
        }
        let mut mor_map: Vec<MorId> = dom.objects().map(|a| cod.identity(obj_map[a.0])).collect();
        mor_map.extend_from_slice(non_identity);
        Self::new(dom, cod, obj_map, mor_map)
    }

    pub fn identity(g: Arc<FinGroupoid>) -> Self {
        let obj_map = g.objects().collect();
        let mor_map = g.morphisms().collect();
        Self { dom: g.clone(), cod: g, obj_map, mor_map }
    }

    /// The functor collapsing every object of `dom` onto `target` and every
    /// morphism onto its identity.
    pub fn constant(dom: Arc<FinGroupoid>, cod: Arc<FinGroupoid>, target: ObjId) -> Self {
        let obj_map = vec![target; dom.object_count()];
        let mor_map = vec![cod.identity(target); dom.morphism_count()];
        Self { dom, cod, obj_map, mor_map }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GroupoidFunctor) -> Result<GroupoidFunctor, FunctorError> {
        if !same_groupoid(&first.cod, &self.dom) {
            return Err(FunctorError::DomainMismatch);
        }
        Ok(GroupoidFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&a| self.obj_map[a.0]).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor_map[m.0]).collect(),
        })
    }

    pub fn dom(&self) -> &Arc<FinGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinGroupoid> {
        &self.cod
    }

    pub fn obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a.0]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// Equal object and morphism maps between equal groupoids.
    pub fn same_maps(&self, other: &GroupoidFunctor) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_groupoid(&self.dom, &other.dom)
            && same_groupoid(&self.cod, &other.cod)
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        let (dom, cod) = (&*self.dom, &*self.cod);
        if self.obj_map.len() != dom.object_count() {
            return Err(FunctorError::ObjectMapShape { expected: dom.object_count(), found: self.obj_map.len() });
        }
        if self.mor_map.len() != dom.morphism_count() {
            return Err(FunctorError::MorphismMapShape { expected: dom.morphism_count(), found: self.mor_map.len() });
        }
        for a in dom.objects() {
            if self.obj(a).0 >= cod.object_count() {
                return Err(FunctorError::ObjectOutOfRange(dom.object_name(a).to_string()));
            }
        }
        for m in dom.morphisms() {
            if self.mor(m).0 >= cod.morphism_count() {
                return Err(FunctorError::MorphismOutOfRange(dom.morphism_name(m).to_string()));
            }
            let image = self.mor(m);
            if cod.src(image) != self.obj(dom.src(m)) || cod.tgt(image) != self.obj(dom.tgt(m)) {
                return Err(FunctorError::BadEndpoints { morphism: dom.morphism_name(m).to_string() });
            }
        }
        for a in dom.objects() {
            if self.mor(dom.identity(a)) != cod.identity(self.obj(a)) {
                return Err(FunctorError::IdentityNotPreserved(dom.object_name(a).to_string()));
            }
        }
        for f in dom.morphisms() {
            for g in dom.morphisms() {
                let Some(gf) = dom.try_compose(g, f) else { continue };
                if cod.try_compose(self.mor(g), self.mor(f)) != Some(self.mor(gf)) {
                    return Err(FunctorError::CompositionNotPreserved {
                        f: dom.morphism_name(f).to_string(),
                        g: dom.morphism_name(g).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{codiscrete, cyclic, delooping, discrete};

    #[test]
    fn identity_and_composition() {
        let bz2 = Arc::new(delooping(&cyclic(2)).unwrap());
        let id = GroupoidFunctor::identity(bz2.clone());
        assert!(id.validate().is_ok());
        assert!(id.after(&id).unwrap().same_maps(&id));
    }

    #[test]
    fn wrong_endpoint_is_rejected() {
        let c2 = Arc::new(codiscrete(2));
        let d2 = Arc::new(discrete(2));
        // identity on objects cannot send m_x0_x1 anywhere in discrete(2)
        let err = GroupoidFunctor::from_non_identity(c2.clone(), d2, vec![ObjId(0), ObjId(1)], &[MorId(0), MorId(1)])
            .unwrap_err();
        assert!(matches!(err, FunctorError::BadEndpoints { .. }));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let bz3 = Arc::new(delooping(&cyclic(3)).unwrap());
        // g -> g, g2 -> g breaks g.g = g2
        let err = GroupoidFunctor::from_non_identity(bz3.clone(), bz3, vec![ObjId(0)], &[MorId(1), MorId(1)]).unwrap_err();
        assert!(matches!(err, FunctorError::CompositionNotPreserved { .. }));
    }
}
