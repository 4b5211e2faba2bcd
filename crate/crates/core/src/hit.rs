//! The higher inductive type built from a groupoid `A`: a point for every
//! object of `A`, a path between any two points whose objects are merely
//! connected, and the identification of that path with `refl` on the
//! diagonal. In the groupoid model this is the groupoid on the objects of
//! `A` with exactly one morphism inside each component and none across.
//!
//! Maps out of it correspond to descent data `(f, e, d)`: a functor
//! `f: A -> B`, a morphism `e(a, b): f(a) -> f(b)` for every connected pair,
//! natural in both arguments, with `e(a, a)` the identity.

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::elim::{hedberg_local, ElimError, HedbergVerdict, PropFamily};
use crate::groupoid::enumerate::{check_cap, saturating_pow};
use crate::groupoid::{
    discrete, discrete_on, enumerate_functors, validate_groupoid, EnumerationError, FinGroupoid,
    GroupoidEquivalence, GroupoidFunctor, MorId, NaturalIso, ObjId, RawGroupoid,
};
use crate::trunc::{pi0, Pi0};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HitError {
    #[error("invalid descent data: {0}")]
    InvalidDescent(String),
    #[error("loop `{loop_name}` at `{object}` is not trivial")]
    NontrivialLoop { object: String, loop_name: String },
    #[error("local Hedberg premises fail at `{basepoint}`: {source}")]
    Hedberg { basepoint: String, source: ElimError },
    #[error("functor does not start at the expected groupoid")]
    DomainMismatch,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitGroupoid {
    pub base: Arc<FinGroupoid>,
    pub carrier: Arc<FinGroupoid>,
    /// Identity on objects, every morphism to the unique one between its endpoints.
    pub eta: GroupoidFunctor,
    pub pi0: Pi0,
}

impl HitGroupoid {
    /// The unique carrier morphism `a -> b`, if `a` and `b` are connected.
    pub fn unique(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.carrier.hom(a, b).first().copied()
    }
}

pub fn build_hit(base: &Arc<FinGroupoid>) -> HitGroupoid {
    let p = pi0(base);
    let name = |a: ObjId| base.object_name(a);
    let arrow = |a: ObjId, b: ObjId| {
        if a == b {
            format!("id_{}", name(a))
        } else {
            format!("e_{}__{}", name(a), name(b))
        }
    };
    let mut raw = RawGroupoid { objects: base.object_names().to_vec(), ..RawGroupoid::default() };
    let connected: Vec<(ObjId, ObjId)> = base
        .objects()
        .cartesian_product(base.objects().collect::<Vec<_>>())
        .filter(|&(a, b)| p.same_component(a, b))
        .collect();
    for &(a, b) in connected.iter().filter(|(a, b)| a != b) {
        raw.morphism(arrow(a, b), name(a), name(b));
    }
    for &(a, b) in &connected {
        for &(b2, c) in connected.iter().filter(|&&(b2, _)| b2 == b) {
            raw.composite(arrow(b2, c), arrow(a, b), arrow(a, c));
        }
    }
    let carrier = Arc::new(validate_groupoid(&raw).expect("collapsed groupoid is valid"));
    let obj_map = base.objects().collect();
    let mor_map = base
        .morphisms()
        .map(|m| carrier.hom(base.src(m), base.tgt(m))[0])
        .collect();
    let eta = GroupoidFunctor::new(base.clone(), carrier.clone(), obj_map, mor_map).expect("eta is a functor");
    HitGroupoid { base: base.clone(), carrier, eta, pi0: p }
}

/// Checks that every loop of the carrier is trivial, and re-derives it at
/// every basepoint `a0` through the local Hedberg argument with the family
/// "`a` is merely connected to `a0`" and `m` given by the unique paths.
pub fn hit_is_truncated(h: &HitGroupoid) -> Result<Vec<HedbergVerdict>, HitError> {
    let carrier = &h.carrier;
    for a in carrier.objects() {
        if let Some(&p) = carrier.loops(a).iter().find(|&&p| p != carrier.identity(a)) {
            return Err(HitError::NontrivialLoop {
                object: carrier.object_name(a).to_string(),
                loop_name: carrier.morphism_name(p).to_string(),
            });
        }
    }
    let mut verdicts = Vec::with_capacity(carrier.object_count());
    for a0 in carrier.objects() {
        let inhabited: Vec<bool> = h.base.objects().map(|a| h.pi0.same_component(a0, a)).collect();
        let m: Vec<Option<MorId>> = carrier.objects().map(|a| h.unique(a0, a)).collect();
        let verdict = hedberg_local(carrier, a0, &PropFamily { inhabited }, &m).map_err(|source| HitError::Hedberg {
            basepoint: carrier.object_name(a0).to_string(),
            source,
        })?;
        verdicts.push(verdict);
    }
    Ok(verdicts)
}

/// Equivalence between the carrier and the discrete groupoid on the
/// components of the base, each component named after its smallest object.
pub fn hit_equiv_pi0(h: &HitGroupoid) -> GroupoidEquivalence {
    let carrier = &h.carrier;
    let p = &h.pi0;
    let comps = Arc::new(discrete_on(p.components().map(|c| h.base.object_name(p.rep(c)).to_string())));
    let fwd_obj: Vec<ObjId> = carrier.objects().map(|a| ObjId(p.proj(a).0)).collect();
    let fwd_mor = carrier.morphisms().map(|m| comps.identity(fwd_obj[carrier.src(m).0])).collect();
    let fwd = GroupoidFunctor::new(carrier.clone(), comps.clone(), fwd_obj, fwd_mor).expect("collapse");
    let bwd_obj: Vec<ObjId> = p.components().map(|c| p.rep(c)).collect();
    let bwd_mor = comps.morphisms().map(|m| carrier.identity(bwd_obj[comps.src(m).0])).collect();
    let bwd = GroupoidFunctor::new(comps.clone(), carrier.clone(), bwd_obj, bwd_mor).expect("pick representatives");
    let unit_components = carrier
        .objects()
        .map(|a| h.unique(p.rep(p.proj(a)), a).expect("connected to its representative"))
        .collect();
    let unit = NaturalIso::new(bwd.after(&fwd).expect("composable"), GroupoidFunctor::identity(carrier.clone()), unit_components);
    let counit_components = comps.objects().map(|c| comps.identity(c)).collect();
    let counit = NaturalIso::new(fwd.after(&bwd).expect("composable"), GroupoidFunctor::identity(comps.clone()), counit_components);
    GroupoidEquivalence { fwd, bwd, unit, counit }
}

/// Descent data for a map out of the carrier into `f.cod()`. `e` is an
/// `n x n` table indexed `a * n + b`, present exactly on connected pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentData {
    pub f: GroupoidFunctor,
    pub e: Vec<Option<MorId>>,
}

impl DescentData {
    pub fn cod(&self) -> &Arc<FinGroupoid> {
        self.f.cod()
    }

    pub fn e(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.e[a.0 * self.f.dom().object_count() + b.0]
    }

    /// Checks support, endpoints, `e(a, a) = id` and naturality
    /// `e(a', b') = f(q) . e(a, b) . f(p)^-1` for all `p: a -> a'`, `q: b -> b'`.
    pub fn validate(&self) -> Result<(), HitError> {
        let a = self.f.dom();
        let b = self.f.cod();
        let p = pi0(a);
        let invalid = |msg: String| Err(HitError::InvalidDescent(msg));
        let n = a.object_count();
        if self.e.len() != n * n {
            return invalid(format!("e has {} entries, expected {}", self.e.len(), n * n));
        }
        for (x, y) in a.objects().cartesian_product(a.objects().collect::<Vec<_>>()) {
            let (xn, yn) = (a.object_name(x), a.object_name(y));
            match (p.same_component(x, y), self.e(x, y)) {
                (true, Some(m)) => {
                    if m.0 >= b.morphism_count() || b.src(m) != self.f.obj(x) || b.tgt(m) != self.f.obj(y) {
                        return invalid(format!("e(`{xn}`, `{yn}`) does not run from f(`{xn}`) to f(`{yn}`)"));
                    }
                }
                (true, None) => return invalid(format!("e(`{xn}`, `{yn}`) is missing")),
                (false, Some(_)) => return invalid(format!("e(`{xn}`, `{yn}`) given across components")),
                (false, None) => {}
            }
        }
        for x in a.objects() {
            let exx = self.e(x, x).expect("diagonal is connected");
            if exx != b.identity(self.f.obj(x)) {
                return invalid(format!(
                    "e(`{0}`, `{0}`) = `{1}` is not the identity",
                    a.object_name(x),
                    b.morphism_name(exx)
                ));
            }
        }
        for (pm, qm) in a.morphisms().cartesian_product(a.morphisms().collect::<Vec<_>>()) {
            let (x, x2, y, y2) = (a.src(pm), a.tgt(pm), a.src(qm), a.tgt(qm));
            let Some(exy) = self.e(x, y) else { continue };
            let expected = b.compose_chain(&[self.f.mor(qm), exy, b.inverse(self.f.mor(pm))]);
            let actual = self.e(x2, y2).expect("connected pair");
            if actual != expected {
                return invalid(format!(
                    "naturality along (`{}`, `{}`) forces e(`{}`, `{}`) = `{}`, found `{}`",
                    a.morphism_name(pm),
                    a.morphism_name(qm),
                    a.object_name(x2),
                    a.object_name(y2),
                    b.morphism_name(expected),
                    b.morphism_name(actual)
                ));
            }
        }
        Ok(())
    }

    /// `e(a, c) = e(b, c) . e(a, b)` on every connected triple.
    pub fn collapse_law_holds(&self) -> bool {
        let a = self.f.dom();
        let b = self.f.cod();
        let objs: Vec<ObjId> = a.objects().collect();
        objs.iter().cartesian_product(&objs).cartesian_product(&objs).all(|((&x, &y), &z)| {
            match (self.e(x, y), self.e(y, z), self.e(x, z)) {
                (Some(exy), Some(eyz), Some(exz)) => b.try_compose(eyz, exy) == Some(exz),
                _ => true,
            }
        })
    }
}

/// Recursion principle: descent data gives a functor out of the carrier.
pub fn descent_to_functor(d: &DescentData, h: &HitGroupoid) -> Result<GroupoidFunctor, HitError> {
    if **d.f.dom() != *h.base {
        return Err(HitError::DomainMismatch);
    }
    d.validate()?;
    let carrier = &h.carrier;
    let obj_map = d.f.obj_map().to_vec();
    let mor_map = carrier
        .morphisms()
        .map(|m| d.e(carrier.src(m), carrier.tgt(m)).expect("connected"))
        .collect();
    GroupoidFunctor::new(carrier.clone(), d.cod().clone(), obj_map, mor_map)
        .map_err(|e| HitError::InvalidDescent(format!("induced map is not a functor: {e}")))
}

/// Composition with the constructors: `f = k . eta`, `e(a, b) = k(unique a b)`.
pub fn functor_to_descent(k: &GroupoidFunctor, h: &HitGroupoid) -> Result<DescentData, HitError> {
    if **k.dom() != *h.carrier {
        return Err(HitError::DomainMismatch);
    }
    let f = k.after(&h.eta).expect("eta lands in the carrier");
    let e = h
        .base
        .objects()
        .cartesian_product(h.base.objects().collect::<Vec<_>>())
        .map(|(a, b)| h.unique(a, b).map(|u| k.mor(u)))
        .collect();
    let d = DescentData { f, e };
    d.validate()?;
    Ok(d)
}

/// Every valid descent datum into `cod`, by backtracking over `e` for each
/// functor `f: A -> cod`.
pub fn enumerate_descent_data(h: &HitGroupoid, cod: &Arc<FinGroupoid>, cap: u64) -> Result<Vec<DescentData>, HitError> {
    let a = &h.base;
    let pairs: Vec<(ObjId, ObjId)> = a
        .objects()
        .cartesian_product(a.objects().collect::<Vec<_>>())
        .filter(|&(x, y)| h.pi0.same_component(x, y))
        .collect();
    let mut out = Vec::new();
    for f in enumerate_functors(a, cod, cap)? {
        let mut e = vec![None; a.object_count() * a.object_count()];
        extend_descent(&f, &pairs, 0, &mut e, &mut out);
    }
    Ok(out)
}

fn extend_descent(
    f: &GroupoidFunctor,
    pairs: &[(ObjId, ObjId)],
    k: usize,
    e: &mut Vec<Option<MorId>>,
    out: &mut Vec<DescentData>,
) {
    if k == pairs.len() {
        let d = DescentData { f: f.clone(), e: e.clone() };
        debug_assert!(d.validate().is_ok());
        out.push(d);
        return;
    }
    let (a, b) = (f.dom(), f.cod());
    let n = a.object_count();
    let (x, y) = pairs[k];
    for &m in b.hom(f.obj(x), f.obj(y)) {
        if x == y && m != b.identity(f.obj(x)) {
            continue;
        }
        e[x.0 * n + y.0] = Some(m);
        // naturality equations between assigned pairs involving (x, y)
        let ok = a.morphisms().cartesian_product(a.morphisms().collect::<Vec<_>>()).all(|(pm, qm)| {
            let (s, t) = ((a.src(pm), a.src(qm)), (a.tgt(pm), a.tgt(qm)));
            if s != (x, y) && t != (x, y) {
                return true;
            }
            match (e[s.0 .0 * n + s.1 .0], e[t.0 .0 * n + t.1 .0]) {
                (Some(es), Some(et)) => b.compose_chain(&[f.mor(qm), es, b.inverse(f.mor(pm))]) == et,
                _ => true,
            }
        });
        if ok {
            extend_descent(f, pairs, k + 1, e, out);
        }
        e[x.0 * n + y.0] = None;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedInductionVerdict {
    pub set_size: usize,
    /// `|functors carrier -> discrete(S)|`.
    pub functors: usize,
    /// `|object maps A -> S constant on components|`.
    pub component_constant_maps: usize,
    /// Precomposition with `eta` is a bijection between the two.
    pub bijective: bool,
}

impl RestrictedInductionVerdict {
    pub fn holds(&self) -> bool {
        self.bijective && self.functors == self.component_constant_maps
    }
}

/// Maps from the carrier into a finite set correspond to object maps of
/// the base that are constant on components, via precomposition with `eta`.
pub fn restricted_induction_check(h: &HitGroupoid, set_size: usize, cap: u64) -> Result<RestrictedInductionVerdict, HitError> {
    let n = h.base.object_count();
    check_cap(saturating_pow(set_size as u64, n), cap)?;
    let target = Arc::new(discrete(set_size));
    let functors = enumerate_functors(&h.carrier, &target, cap)?;

    let all_maps = (0..n).map(|_| 0..set_size).multi_cartesian_product();
    let all_maps: Box<dyn Iterator<Item = Vec<usize>>> =
        if n == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(all_maps) };
    let constant_maps: Vec<Vec<usize>> = all_maps
        .filter(|vals| {
            h.base.morphisms().all(|m| vals[h.base.src(m).0] == vals[h.base.tgt(m).0])
        })
        .collect();

    let mut images: Vec<Vec<usize>> = functors
        .iter()
        .map(|k| {
            let f = k.after(&h.eta).expect("composable");
            f.obj_map().iter().map(|o| o.0).collect()
        })
        .collect();
    images.sort();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    let mut expected = constant_maps.clone();
    expected.sort();
    Ok(RestrictedInductionVerdict {
        set_size,
        functors: functors.len(),
        component_constant_maps: constant_maps.len(),
        bijective: distinct && images == expected,
    })
}
