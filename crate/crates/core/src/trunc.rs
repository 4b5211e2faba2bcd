//! Component sets, inhabitedness, connected components and the
//! decomposition of a groupoid into the coproduct of its components.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::groupoid::{
    coproduct, discrete_on, full_subgroupoid, identity_name, FinGroupoid, GroupoidEquivalence, GroupoidFunctor,
    MorId, NaturalIso, ObjId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruncError {
    #[error("unknown component {0}")]
    UnknownComponent(usize),
}

/// A connected component, numbered in order of its smallest object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub usize);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component#{}", self.0)
    }
}

/// The set of connected components with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi0 {
    reps: Vec<ObjId>,
    proj: Vec<ComponentId>,
    members: Vec<Vec<ObjId>>,
}

impl Pi0 {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn components(&self) -> impl ExactSizeIterator<Item = ComponentId> {
        (0..self.reps.len()).map(ComponentId)
    }

    pub fn proj(&self, a: ObjId) -> ComponentId {
        self.proj[a.0]
    }

    /// Smallest object of the component; the canonical representative.
    pub fn rep(&self, c: ComponentId) -> ObjId {
        self.reps[c.0]
    }

    pub fn members(&self, c: ComponentId) -> &[ObjId] {
        &self.members[c.0]
    }

    pub fn same_component(&self, a: ObjId, b: ObjId) -> bool {
        self.proj(a) == self.proj(b)
    }

    /// Discrete groupoid on the components, each named after its
    /// representative, with the projection functor onto it.
    pub fn as_groupoid(&self, g: &Arc<FinGroupoid>) -> (Arc<FinGroupoid>, GroupoidFunctor) {
        let target = Arc::new(discrete_on(self.reps.iter().map(|&r| g.object_name(r).to_string())));
        let obj_map = self.proj.iter().map(|c| ObjId(c.0)).collect();
        let mor_map = g.morphisms().map(|m| target.identity(ObjId(self.proj(g.src(m)).0))).collect();
        let projection = GroupoidFunctor::new(g.clone(), target.clone(), obj_map, mor_map)
            .expect("projection onto components is a functor");
        (target, projection)
    }
}

/// Connected components via union-find over the morphism graph.
pub fn pi0(g: &FinGroupoid) -> Pi0 {
    let n = g.object_count();
    let mut uf = UnionFind::<usize>::new(n);
    for m in g.non_identity_morphisms() {
        uf.union(g.src(m).0, g.tgt(m).0);
    }
    let mut root_to_component = vec![None; n];
    let mut reps = Vec::new();
    let mut members: Vec<Vec<ObjId>> = Vec::new();
    let mut proj = Vec::with_capacity(n);
    for a in g.objects() {
        let root = uf.find(a.0);
        let c = *root_to_component[root].get_or_insert_with(|| {
            reps.push(a);
            members.push(Vec::new());
            ComponentId(reps.len() - 1)
        });
        members[c.0].push(a);
        proj.push(c);
    }
    Pi0 { reps, proj, members }
}

/// Propositional truncation: only records whether there is an object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropTrunc {
    pub inhabited: bool,
}

pub fn prop_trunc(g: &FinGroupoid) -> PropTrunc {
    PropTrunc { inhabited: g.object_count() > 0 }
}

pub fn is_connected(g: &FinGroupoid) -> bool {
    pi0(g).count() == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: ComponentId,
    pub sub: Arc<FinGroupoid>,
    pub inclusion: GroupoidFunctor,
}

pub fn component_of(g: &Arc<FinGroupoid>, x: ComponentId) -> Result<Component, TruncError> {
    let p = pi0(g);
    component_in(g, &p, x)
}

fn component_in(g: &Arc<FinGroupoid>, p: &Pi0, x: ComponentId) -> Result<Component, TruncError> {
    if x.0 >= p.count() {
        return Err(TruncError::UnknownComponent(x.0));
    }
    let (sub, inclusion) = full_subgroupoid(g, p.members(x));
    debug_assert!(is_connected(&sub));
    Ok(Component { id: x, sub, inclusion })
}

/// A groupoid split into its components, with an equivalence between the
/// groupoid and the coproduct of the components.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub union: Arc<FinGroupoid>,
    pub equivalence: GroupoidEquivalence,
}

pub fn decompose(g: &Arc<FinGroupoid>) -> Decomposition {
    let p = pi0(g);
    let components: Vec<Component> = p
        .components()
        .map(|c| component_in(g, &p, c).expect("listed component"))
        .collect();
    let parts: Vec<&FinGroupoid> = components.iter().map(|c| &*c.sub).collect();
    let union = Arc::new(coproduct(&parts).expect("prefixed names are distinct"));

    let obj_name = |a: ObjId| format!("i{}_{}", p.proj(a).0, g.object_name(a));
    let fwd_obj: Vec<ObjId> = g
        .objects()
        .map(|a| union.find_object(&obj_name(a)).expect("object of its part"))
        .collect();
    let fwd_mor: Vec<MorId> = g
        .morphisms()
        .map(|m| {
            let name = if g.is_identity(m) {
                identity_name(&obj_name(g.src(m)))
            } else {
                format!("i{}_{}", p.proj(g.src(m)).0, g.morphism_name(m))
            };
            union.find_morphism(&name).expect("morphism of its part")
        })
        .collect();

    let mut bwd_obj = vec![ObjId(0); union.object_count()];
    for (a, &x) in fwd_obj.iter().enumerate() {
        bwd_obj[x.0] = ObjId(a);
    }
    let mut bwd_mor = vec![MorId(0); union.morphism_count()];
    for (m, &x) in fwd_mor.iter().enumerate() {
        bwd_mor[x.0] = MorId(m);
    }

    let fwd = GroupoidFunctor::new(g.clone(), union.clone(), fwd_obj, fwd_mor).expect("relabelling is a functor");
    let bwd = GroupoidFunctor::new(union.clone(), g.clone(), bwd_obj, bwd_mor).expect("inverse relabelling");
    let unit_components = g.objects().map(|a| g.identity(a)).collect();
    let counit_components = union.objects().map(|a| union.identity(a)).collect();
    let unit = NaturalIso::new(bwd.after(&fwd).expect("composable"), GroupoidFunctor::identity(g.clone()), unit_components);
    let counit = NaturalIso::new(fwd.after(&bwd).expect("composable"), GroupoidFunctor::identity(union.clone()), counit_components);
    Decomposition { components, union, equivalence: GroupoidEquivalence { fwd, bwd, unit, counit } }
}

/// Order in which a breadth-first search explores outgoing morphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeOrder {
    Forward,
    Reverse,
}

/// Breadth-first spanning forest rooted at the component representatives.
/// `path(a)` is the composite of the tree path from `rep(proj a)` to `a`.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    pi0: Pi0,
    paths: Vec<MorId>,
}

impl SpanningForest {
    pub fn bfs(g: &FinGroupoid, order: TreeOrder) -> Self {
        let p = pi0(g);
        let mut outgoing: Vec<Vec<MorId>> = vec![Vec::new(); g.object_count()];
        for m in g.non_identity_morphisms() {
            outgoing[g.src(m).0].push(m);
        }
        if order == TreeOrder::Reverse {
            outgoing.iter_mut().for_each(|v| v.reverse());
        }
        let mut paths: Vec<Option<MorId>> = vec![None; g.object_count()];
        for c in p.components() {
            let root = p.rep(c);
            paths[root.0] = Some(g.identity(root));
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let to_u = paths[u.0].expect("visited");
                for &m in &outgoing[u.0] {
                    let v = g.tgt(m);
                    if paths[v.0].is_none() {
                        paths[v.0] = Some(g.try_compose(m, to_u).expect("path extends"));
                        queue.push_back(v);
                    }
                }
            }
        }
        let paths = paths.into_iter().map(|p| p.expect("every object is reached")).collect();
        Self { pi0: p, paths }
    }

    pub fn pi0(&self) -> &Pi0 {
        &self.pi0
    }

    pub fn path(&self, a: ObjId) -> MorId {
        self.paths[a.0]
    }
}
