//! Eliminating out of truncations.
//!
//! A functor `f: A -> B` factors through the component set of `A` exactly
//! when it sends every loop to an identity. [`factor_through_pi0`] builds
//! the factorization component by component from a spanning forest, and
//! [`enumerate_factorizations`] independently lists every factorization and
//! every isomorphism between them, so both directions of the equivalence
//! and the uniqueness of the factorization can be checked by brute force.
//!
//! The propositional case works over plain object maps into a finite set
//! `{0, .., k-1}`: such a map factors through inhabitedness iff it is
//! constant.

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::groupoid::enumerate::{check_cap, saturating_pow};
use crate::groupoid::{EnumerationError, FinGroupoid, GroupoidFunctor, MorId, NaturalIso, ObjId};
use crate::trunc::{pi0, ComponentId, Pi0, SpanningForest, TreeOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error("not null: loop `{loop_name}` at `{object}` is sent to `{image}`, not an identity")]
    NotNull { object: String, loop_name: String, image: String },
    #[error("not constant: `{x}` maps to {fx} but `{y}` maps to {fy}")]
    NotConstant { x: String, y: String, fx: usize, fy: usize },
    #[error("map has {found} entries, expected {expected}")]
    MapShape { expected: usize, found: usize },
    #[error("value for `{0}` is out of range")]
    ValueOutOfRange(String),
    #[error("invalid premise: {0}")]
    InvalidPremise(String),
    #[error("retraction fails at `{object}`")]
    RetractFails { object: String },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Proof that `f` sends every loop to an identity: one checked entry per
/// loop of every object of the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullCertificate {
    pub functor: GroupoidFunctor,
    pub per_loop: Vec<(ObjId, MorId)>,
}

impl NullCertificate {
    /// Re-checks every entry and that every loop is covered.
    pub fn verify(&self) -> bool {
        let (dom, cod) = (self.functor.dom(), self.functor.cod());
        let expected: Vec<(ObjId, MorId)> =
            dom.objects().flat_map(|a| dom.loops(a).iter().map(move |&p| (a, p))).collect();
        self.per_loop == expected
            && self
                .per_loop
                .iter()
                .all(|&(a, p)| self.functor.mor(p) == cod.identity(self.functor.obj(a)))
    }
}

pub fn check_null(f: &GroupoidFunctor) -> Result<NullCertificate, ElimError> {
    let (dom, cod) = (f.dom(), f.cod());
    let mut per_loop = Vec::new();
    for a in dom.objects() {
        for &p in dom.loops(a) {
            let image = f.mor(p);
            if image != cod.identity(f.obj(a)) {
                return Err(ElimError::NotNull {
                    object: dom.object_name(a).to_string(),
                    loop_name: dom.morphism_name(p).to_string(),
                    image: cod.morphism_name(image).to_string(),
                });
            }
            per_loop.push((a, p));
        }
    }
    Ok(NullCertificate { functor: f.clone(), per_loop })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstancyCertificate {
    pub values: Vec<usize>,
    /// The common value, absent for an empty groupoid.
    pub value: Option<usize>,
}

fn check_map_shape(values: &[usize], g: &FinGroupoid) -> Result<(), ElimError> {
    if values.len() != g.object_count() {
        return Err(ElimError::MapShape { expected: g.object_count(), found: values.len() });
    }
    Ok(())
}

/// All objects of `g` take the same value (vacuous when `g` is empty).
pub fn check_weakly_constant(values: &[usize], g: &FinGroupoid) -> Result<ConstancyCertificate, ElimError> {
    check_map_shape(values, g)?;
    for (x, y) in g.objects().tuple_combinations() {
        if values[x.0] != values[y.0] {
            return Err(ElimError::NotConstant {
                x: g.object_name(x).to_string(),
                y: g.object_name(y).to_string(),
                fx: values[x.0],
                fy: values[y.0],
            });
        }
    }
    Ok(ConstancyCertificate { values: values.to_vec(), value: values.first().copied() })
}

/// Result of factoring a set-valued map through inhabitedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropTruncFactor {
    /// The domain is empty, so is its truncation: the empty map.
    Empty,
    /// The single value of the map on the (inhabited) truncation.
    Value(usize),
}

pub fn factor_through_proptrunc(values: &[usize], g: &FinGroupoid) -> Result<PropTruncFactor, ElimError> {
    let cert = check_weakly_constant(values, g)?;
    Ok(match cert.value {
        None => PropTruncFactor::Empty,
        Some(v) => PropTruncFactor::Value(v),
    })
}

/// The canonical functor induced by a choice of object per component:
/// every object goes to the choice for its component, every morphism to
/// the identity there. Comes with its (always valid) null certificate.
pub fn canon(
    choice: &[ObjId],
    a: &Arc<FinGroupoid>,
    b: &Arc<FinGroupoid>,
) -> Result<(GroupoidFunctor, NullCertificate), ElimError> {
    let p = pi0(a);
    canon_over(&p, choice, a, b)
}

fn canon_over(
    p: &Pi0,
    choice: &[ObjId],
    a: &Arc<FinGroupoid>,
    b: &Arc<FinGroupoid>,
) -> Result<(GroupoidFunctor, NullCertificate), ElimError> {
    if choice.len() != p.count() {
        return Err(ElimError::MapShape { expected: p.count(), found: choice.len() });
    }
    if let Some(c) = choice.iter().position(|x| x.0 >= b.object_count()) {
        return Err(ElimError::ValueOutOfRange(a.object_name(p.rep(ComponentId(c))).to_string()));
    }
    let obj_map: Vec<ObjId> = a.objects().map(|x| choice[p.proj(x).0]).collect();
    let mor_map = a.morphisms().map(|m| b.identity(obj_map[a.src(m).0])).collect();
    let f = GroupoidFunctor::new(a.clone(), b.clone(), obj_map, mor_map).expect("constant on components");
    let cert = check_null(&f).expect("canonical functors are null");
    Ok((f, cert))
}

/// `f = f_prime . proj` up to the natural isomorphism `witness`, whose
/// source is the canonical functor of `f_prime` and whose target is `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub through: Pi0,
    pub f_prime: Vec<ObjId>,
    pub witness: NaturalIso,
}

pub fn factor_through_pi0(f: &GroupoidFunctor) -> Result<Factorization, ElimError> {
    factor_through_pi0_along(f, TreeOrder::Forward)
}

/// As [`factor_through_pi0`], with the spanning forest explored in the
/// given order. The witness does not depend on the order.
pub fn factor_through_pi0_along(f: &GroupoidFunctor, order: TreeOrder) -> Result<Factorization, ElimError> {
    check_null(f)?;
    let (a, b) = (f.dom(), f.cod());
    let forest = SpanningForest::bfs(a, order);
    let p = forest.pi0().clone();
    let f_prime: Vec<ObjId> = p.components().map(|c| f.obj(p.rep(c))).collect();
    let (source, _) = canon_over(&p, &f_prime, a, b)?;
    let components = a.objects().map(|x| f.mor(forest.path(x))).collect();
    let witness = NaturalIso::new(source, f.clone(), components);
    witness.check().expect("null functors glue along any spanning forest");
    Ok(Factorization { through: p, f_prime, witness })
}

/// `(null, ap-constant)`: whether every loop goes to an identity, and
/// whether parallel morphisms always have equal images. The two agree.
pub fn null_iff_ap_constant(f: &GroupoidFunctor) -> (bool, bool) {
    let null = check_null(f).is_ok();
    let a = f.dom();
    let ap_constant = a.objects().cartesian_product(a.objects().collect::<Vec<_>>()).all(|(x, y)| {
        a.hom(x, y).iter().tuple_combinations().all(|(&p, &q)| f.mor(p) == f.mor(q))
    });
    (null, ap_constant)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCandidate {
    pub f_prime: Vec<ObjId>,
    /// `witness[a]: f_prime(proj a) -> f(a)`.
    pub witness: Vec<MorId>,
}

/// `family[c]: from.f_prime(c) -> to.f_prime(c)` with
/// `to.witness[a] . family[proj a] == from.witness[a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationMorphism {
    pub from: usize,
    pub to: usize,
    pub family: Vec<MorId>,
}

/// Every factorization of a functor through its domain's component set,
/// and every isomorphism between two of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationGroupoid {
    pub functor: GroupoidFunctor,
    pub through: Pi0,
    pub objects: Vec<FactorizationCandidate>,
    pub morphisms: Vec<FactorizationMorphism>,
}

impl FactorizationGroupoid {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom_count(&self, from: usize, to: usize) -> usize {
        self.morphisms.iter().filter(|m| m.from == from && m.to == to).count()
    }

    /// Nonempty with exactly one morphism between any two objects.
    pub fn is_contractible(&self) -> bool {
        let n = self.objects.len();
        let mut counts = vec![0usize; n * n];
        for m in &self.morphisms {
            counts[m.from * n + m.to] += 1;
        }
        n > 0 && counts.iter().all(|&c| c == 1)
    }

    /// Families compose and invert component-wise within the listed morphisms.
    pub fn is_closed(&self) -> bool {
        let b = self.functor.cod();
        let listed = |from: usize, to: usize, family: &[MorId]| {
            self.morphisms.iter().any(|m| m.from == from && m.to == to && m.family == family)
        };
        self.morphisms.iter().all(|mu| {
            let inverse: Vec<MorId> = mu.family.iter().map(|&x| b.inverse(x)).collect();
            listed(mu.to, mu.from, &inverse)
                && self.morphisms.iter().filter(|nu| nu.from == mu.to).all(|nu| {
                    let composite: Vec<MorId> = nu
                        .family
                        .iter()
                        .zip(&mu.family)
                        .map(|(&g, &f)| b.try_compose(g, f).expect("families compose"))
                        .collect();
                    listed(mu.from, nu.to, &composite)
                })
        })
    }
}

/// Bound used by [`enumerate_factorizations`]:
/// `|Ob(B)|^|components| * |Mor(B)|^|Ob(A)|`.
pub fn factorization_search_space(f: &GroupoidFunctor) -> u64 {
    let (a, b) = (f.dom(), f.cod());
    saturating_pow(b.object_count() as u64, pi0(a).count())
        .saturating_mul(saturating_pow(b.morphism_count() as u64, a.object_count()))
}

/// Brute-force enumeration of all `(f_prime, witness)` pairs with a valid
/// naturality witness, and all connecting families.
pub fn enumerate_factorizations(f: &GroupoidFunctor, cap: u64) -> Result<FactorizationGroupoid, ElimError> {
    check_cap(factorization_search_space(f), cap)?;
    let (a, b) = (f.dom(), f.cod());
    let p = pi0(a);
    let mut objects = Vec::new();
    let choices = (0..p.count()).map(|_| b.objects().collect::<Vec<_>>()).multi_cartesian_product();
    let choices: Box<dyn Iterator<Item = Vec<ObjId>>> =
        if p.count() == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(choices) };
    for f_prime in choices {
        let mut witness = Vec::new();
        collect_witnesses(f, &p, &f_prime, &mut witness, &mut objects);
    }

    let mut morphisms = Vec::new();
    for (i, from) in objects.iter().enumerate() {
        for (j, to) in objects.iter().enumerate() {
            let families = p
                .components()
                .map(|c| b.hom(from.f_prime[c.0], to.f_prime[c.0]).to_vec())
                .multi_cartesian_product();
            let families: Box<dyn Iterator<Item = Vec<MorId>>> =
                if p.count() == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(families) };
            for family in families {
                let ok = a.objects().all(|x| {
                    b.try_compose(to.witness[x.0], family[p.proj(x).0]) == Some(from.witness[x.0])
                });
                if ok {
                    morphisms.push(FactorizationMorphism { from: i, to: j, family });
                }
            }
        }
    }
    Ok(FactorizationGroupoid { functor: f.clone(), through: p, objects, morphisms })
}

fn collect_witnesses(
    f: &GroupoidFunctor,
    p: &Pi0,
    f_prime: &[ObjId],
    witness: &mut Vec<MorId>,
    out: &mut Vec<FactorizationCandidate>,
) {
    let (a, b) = (f.dom(), f.cod());
    let k = witness.len();
    if k == a.object_count() {
        out.push(FactorizationCandidate { f_prime: f_prime.to_vec(), witness: witness.clone() });
        return;
    }
    let x = ObjId(k);
    for &w in b.hom(f_prime[p.proj(x).0], f.obj(x)) {
        witness.push(w);
        // the canonical functor sends every morphism to an identity, so
        // the square for m: s -> t reads witness[t] == f(m) . witness[s]
        let ok = a.morphisms().all(|m| {
            let (s, t) = (a.src(m), a.tgt(m));
            if s.0 > k || t.0 > k || (s.0 != k && t.0 != k) {
                return true;
            }
            b.try_compose(f.mor(m), witness[s.0]) == Some(witness[t.0])
        });
        if ok {
            collect_witnesses(f, p, f_prime, witness, out);
        }
        witness.pop();
    }
}

/// A family over the objects with at most one element each: `P(a)` is a
/// point when `inhabited[a]`, empty otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropFamily {
    pub inhabited: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HedbergVerdict {
    pub basepoint: ObjId,
    /// `|hom(a0, a)|` for every object `a`; each is at most 1.
    pub hom_sizes: Vec<usize>,
    pub loop_group_order: usize,
}

/// Local Hedberg argument: given a pointed proposition-valued family `P`
/// with `p0: P(a0)` and a natural `m: P(a) -> hom(a0, a)`, every
/// `hom(a0, a)` is a retract of `P(a)` via
/// `q |-> transport(q, p0) |-> m_a(..) |-> m_a(..) . m_a0(p0)^-1`,
/// so the loop group at `a0` is trivial.
///
/// `m[a]` is the image of the point of `P(a)`, present iff `P(a)` is.
pub fn hedberg_local(
    g: &FinGroupoid,
    a0: ObjId,
    family: &PropFamily,
    m: &[Option<MorId>],
) -> Result<HedbergVerdict, ElimError> {
    let premise = |msg: String| Err(ElimError::InvalidPremise(msg));
    let name = |a: ObjId| g.object_name(a).to_string();
    if a0.0 >= g.object_count() {
        return premise(format!("basepoint {a0} is not an object"));
    }
    if family.inhabited.len() != g.object_count() || m.len() != g.object_count() {
        return premise("family or map does not cover every object".into());
    }
    if !family.inhabited[a0.0] {
        return premise(format!("P(`{}`) has no point", name(a0)));
    }
    for p in g.morphisms() {
        let (s, t) = (g.src(p), g.tgt(p));
        if family.inhabited[s.0] && !family.inhabited[t.0] {
            return premise(format!(
                "P has no action along `{}`: P(`{}`) is inhabited, P(`{}`) is not",
                g.morphism_name(p),
                name(s),
                name(t)
            ));
        }
    }
    for a in g.objects() {
        match (family.inhabited[a.0], m[a.0]) {
            (true, Some(x)) if x.0 < g.morphism_count() && g.src(x) == a0 && g.tgt(x) == a => {}
            (true, _) => return premise(format!("m at `{}` is not a morphism from `{}`", name(a), name(a0))),
            (false, Some(_)) => return premise(format!("m is given on the empty P(`{}`)", name(a))),
            (false, None) => {}
        }
    }
    for p in g.morphisms() {
        let (s, t) = (g.src(p), g.tgt(p));
        let (Some(ms), Some(mt)) = (m[s.0], m[t.0]) else { continue };
        let transported = g.try_compose(p, ms).expect("composable");
        if transported != mt {
            return premise(format!(
                "m is not natural along `{}`: `{} . {}` = `{}` but m at `{}` is `{}`",
                g.morphism_name(p),
                g.morphism_name(p),
                g.morphism_name(ms),
                g.morphism_name(transported),
                name(t),
                g.morphism_name(mt)
            ));
        }
    }

    let base = m[a0.0].expect("checked");
    let mut hom_sizes = Vec::with_capacity(g.object_count());
    for a in g.objects() {
        let hom = g.hom(a0, a);
        for &q in hom {
            // transport q p0 is the point of P(a); m sends it to m[a]
            let retracted = g.try_compose(m[a.0].expect("inhabited along q"), g.inverse(base)).expect("composable");
            if retracted != q {
                return Err(ElimError::RetractFails { object: name(a) });
            }
        }
        hom_sizes.push(hom.len());
    }
    let loop_group_order = g.loop_group(a0).order();
    debug_assert!(hom_sizes.iter().all(|&s| s <= 1) && loop_group_order == 1);
    Ok(HedbergVerdict { basepoint: a0, hom_sizes, loop_group_order })
}
