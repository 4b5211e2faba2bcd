use std::collections::HashMap;

use thiserror::Error;

use super::{identity_name, is_valid_name, FinGroup, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("`{g} . {f}` is not composable: tgt({f}) != src({g})")]
    NotComposable { f: String, g: String },
    #[error("composite `{g} . {f} = {h}` has the wrong endpoints for `{h}`")]
    BadEndpoints { f: String, g: String, h: String },
    #[error("composite `{g} . {f}` is missing")]
    MissingComposite { f: String, g: String },
    #[error("composite `{g} . {f}` is given as both `{first}` and `{second}`")]
    ConflictingComposite { f: String, g: String, first: String, second: String },
    #[error("identity law fails at `{morphism}`: {detail}")]
    IdentityLaw { morphism: String, detail: String },
    #[error("associativity fails on `{h} . {g} . {f}`")]
    AssocViolation { f: String, g: String, h: String },
    #[error("morphism `{0}` has no inverse")]
    NoInverse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// `after . before = result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawComposite {
    pub after: String,
    pub before: String,
    pub result: String,
}

/// Unvalidated groupoid description. Identities are implicit: every object
/// `x` gets `id_x`, and composites involving an identity are filled in.
/// Listing such composites explicitly is allowed if they agree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGroupoid {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub composites: Vec<RawComposite>,
}

impl RawGroupoid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        self.objects.push(name.into());
        self
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> &mut Self {
        self.morphisms.push(RawMorphism { name: name.into(), src: src.into(), tgt: tgt.into() });
        self
    }

    pub fn composite(&mut self, after: impl Into<String>, before: impl Into<String>, result: impl Into<String>) -> &mut Self {
        self.composites.push(RawComposite {
            after: after.into(),
            before: before.into(),
            result: result.into(),
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Morphism {
    name: String,
    src: ObjId,
    tgt: ObjId,
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    // comp[g * m + f] == Some(g . f) exactly on composable pairs
    comp: Vec<Option<MorId>>,
    inv: Vec<MorId>,
    // homs[a * n + b] lists hom(a, b) in morphism order
    homs: Vec<Vec<MorId>>,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
}

/// Checks every groupoid law and returns the validated structure, or the
/// first violation found in deterministic order.
pub fn validate_groupoid(raw: &RawGroupoid) -> Result<FinGroupoid, GroupoidError> {
    let n = raw.objects.len();
    let mut object_index = HashMap::with_capacity(n);
    for (i, name) in raw.objects.iter().enumerate() {
        if !is_valid_name(name) {
            return Err(GroupoidError::InvalidName(name.clone()));
        }
        if object_index.insert(name.clone(), ObjId(i)).is_some() {
            return Err(GroupoidError::DuplicateName(name.clone()));
        }
    }

    let mut morphisms: Vec<Morphism> = raw
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism { name: identity_name(o), src: ObjId(i), tgt: ObjId(i) })
        .collect();
    for m in &raw.morphisms {
        if !is_valid_name(&m.name) {
            return Err(GroupoidError::InvalidName(m.name.clone()));
        }
        let lookup = |o: &str| object_index.get(o).copied().ok_or_else(|| GroupoidError::UnknownObject(o.to_string()));
        morphisms.push(Morphism { name: m.name.clone(), src: lookup(&m.src)?, tgt: lookup(&m.tgt)? });
    }
    let mut morphism_index = HashMap::with_capacity(morphisms.len());
    for (i, m) in morphisms.iter().enumerate() {
        if morphism_index.insert(m.name.clone(), MorId(i)).is_some() {
            return Err(GroupoidError::DuplicateName(m.name.clone()));
        }
    }

    let m = morphisms.len();
    let identities: Vec<MorId> = (0..n).map(MorId).collect();
    let name = |x: MorId| morphisms[x.0].name.clone();
    let mut comp: Vec<Option<MorId>> = vec![None; m * m];

    for (f, mf) in morphisms.iter().enumerate() {
        comp[identities[mf.tgt.0].0 * m + f] = Some(MorId(f));
        comp[f * m + identities[mf.src.0].0] = Some(MorId(f));
    }

    for c in &raw.composites {
        let lookup = |s: &str| morphism_index.get(s).copied().ok_or_else(|| GroupoidError::UnknownMorphism(s.to_string()));
        let (g, f, h) = (lookup(&c.after)?, lookup(&c.before)?, lookup(&c.result)?);
        let (mg, mf, mh) = (&morphisms[g.0], &morphisms[f.0], &morphisms[h.0]);
        if mf.tgt != mg.src {
            return Err(GroupoidError::NotComposable { f: name(f), g: name(g) });
        }
        if mh.src != mf.src || mh.tgt != mg.tgt {
            return Err(GroupoidError::BadEndpoints { f: name(f), g: name(g), h: name(h) });
        }
        let slot = &mut comp[g.0 * m + f.0];
        match *slot {
            Some(existing) if existing != h => {
                let involves_identity = g.0 < n || f.0 < n;
                return Err(if involves_identity {
                    let non_id = if g.0 < n { f } else { g };
                    GroupoidError::IdentityLaw {
                        morphism: name(non_id),
                        detail: format!("`{} . {}` must be `{}`, not `{}`", name(g), name(f), name(existing), name(h)),
                    }
                } else {
                    GroupoidError::ConflictingComposite { f: name(f), g: name(g), first: name(existing), second: name(h) }
                });
            }
            _ => *slot = Some(h),
        }
    }

    for (f, mf) in morphisms.iter().enumerate() {
        for (g, mg) in morphisms.iter().enumerate() {
            if mf.tgt == mg.src && comp[g * m + f].is_none() {
                return Err(GroupoidError::MissingComposite { f: name(MorId(f)), g: name(MorId(g)) });
            }
        }
    }

    // Idempotents in a groupoid are identities.
    for (e, me) in morphisms.iter().enumerate().skip(n) {
        if me.src == me.tgt && comp[e * m + e] == Some(MorId(e)) {
            return Err(GroupoidError::IdentityLaw {
                morphism: me.name.clone(),
                detail: format!("`{0} . {0} = {0}` makes it an idempotent other than the identity", me.name),
            });
        }
    }

    let at = |g: usize, f: usize| comp[g * m + f];
    for f in 0..m {
        for g in 0..m {
            let Some(gf) = at(g, f) else { continue };
            for h in 0..m {
                let Some(hg) = at(h, g) else { continue };
                if at(h, gf.0) != at(hg.0, f) {
                    return Err(GroupoidError::AssocViolation { f: name(MorId(f)), g: name(MorId(g)), h: name(MorId(h)) });
                }
            }
        }
    }

    let mut inv = Vec::with_capacity(m);
    for (f, mf) in morphisms.iter().enumerate() {
        let found = (0..m).find(|&i| {
            at(f, i) == Some(identities[mf.tgt.0]) && at(i, f) == Some(identities[mf.src.0])
        });
        match found {
            Some(i) => inv.push(MorId(i)),
            None => return Err(GroupoidError::NoInverse(mf.name.clone())),
        }
    }

    let mut homs = vec![Vec::new(); n * n];
    for (i, mor) in morphisms.iter().enumerate() {
        homs[mor.src.0 * n + mor.tgt.0].push(MorId(i));
    }

    Ok(FinGroupoid {
        objects: raw.objects.clone(),
        morphisms,
        identities,
        comp,
        inv,
        homs,
        object_index,
        morphism_index,
    })
}

impl FinGroupoid {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    /// Morphisms that are not identities, in declaration order.
    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = MorId> + Clone + '_ {
        (self.objects.len()..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphism_index.get(name).copied()
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].tgt
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        m.0 < self.objects.len()
    }

    pub fn inverse(&self, m: MorId) -> MorId {
        self.inv[m.0]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn loops(&self, a: ObjId) -> &[MorId] {
        self.hom(a, a)
    }

    /// `g . f` when `tgt(f) == src(g)`.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g.0 * self.morphisms.len() + f.0]
    }

    /// `g . f`, or `NotComposable` naming both morphisms.
    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId, GroupoidError> {
        self.try_compose(g, f).ok_or_else(|| GroupoidError::NotComposable {
            f: self.morphism_name(f).to_string(),
            g: self.morphism_name(g).to_string(),
        })
    }

    /// Composite of a composable chain written right to left: `chain[0]`
    /// is applied last.
    pub(crate) fn compose_chain(&self, chain: &[MorId]) -> MorId {
        let (&first, rest) = chain.split_last().expect("nonempty chain");
        rest.iter().rev().fold(first, |acc, &g| {
            self.try_compose(g, acc).expect("composable chain")
        })
    }

    /// Conjugation of a loop `q` at `src(p)` along `p`: `p . q . p^-1`.
    pub fn conjugate(&self, p: MorId, q: MorId) -> MorId {
        self.compose_chain(&[p, q, self.inverse(p)])
    }

    /// The automorphism group `hom(a, a)`, elements in morphism order (the
    /// identity first), multiplication `r·c = r . c`.
    pub fn loop_group(&self, a: ObjId) -> FinGroup {
        let loops = self.loops(a);
        let pos = |m: MorId| loops.iter().position(|&x| x == m).expect("closed under composition");
        let names = loops.iter().map(|&l| self.morphism_name(l).to_string()).collect();
        let rows = loops
            .iter()
            .map(|&r| loops.iter().map(|&c| pos(self.try_compose(r, c).expect("loops compose"))).collect())
            .collect();
        FinGroup::from_table(names, rows).expect("loop group of a valid groupoid")
    }

    pub fn loop_group_named(&self, object: &str) -> Result<FinGroup, GroupoidError> {
        let a = self.find_object(object).ok_or_else(|| GroupoidError::UnknownObject(object.to_string()))?;
        Ok(self.loop_group(a))
    }

    /// Raw description that validates back to this groupoid: non-identity
    /// morphisms plus every composite of two non-identity morphisms.
    pub fn to_raw(&self) -> RawGroupoid {
        let mut raw = RawGroupoid { objects: self.objects.clone(), ..RawGroupoid::default() };
        for m in self.non_identity_morphisms() {
            raw.morphisms.push(RawMorphism {
                name: self.morphism_name(m).to_string(),
                src: self.object_name(self.src(m)).to_string(),
                tgt: self.object_name(self.tgt(m)).to_string(),
            });
        }
        for g in self.non_identity_morphisms() {
            for f in self.non_identity_morphisms() {
                if let Some(h) = self.try_compose(g, f) {
                    raw.composites.push(RawComposite {
                        after: self.morphism_name(g).to_string(),
                        before: self.morphism_name(f).to_string(),
                        result: self.morphism_name(h).to_string(),
                    });
                }
            }
        }
        raw
    }

    /// Same tables up to names: equal counts, endpoints and composition by index.
    pub fn same_shape(&self, other: &FinGroupoid) -> bool {
        self.objects.len() == other.objects.len()
            && self.morphisms.len() == other.morphisms.len()
            && self.morphisms.iter().zip(&other.morphisms).all(|(x, y)| x.src == y.src && x.tgt == y.tgt)
            && self.comp == other.comp
    }

    /// Full table scan of every groupoid law; true for any value built by
    /// [`validate_groupoid`].
    pub fn satisfies_laws(&self) -> bool {
        let m = self.morphisms.len();
        let composable = |g: MorId, f: MorId| self.src(g) == self.tgt(f);
        for f in self.morphisms() {
            let i = self.inverse(f);
            if self.try_compose(f, i) != Some(self.identity(self.tgt(f)))
                || self.try_compose(i, f) != Some(self.identity(self.src(f)))
            {
                return false;
            }
            if self.try_compose(self.identity(self.tgt(f)), f) != Some(f)
                || self.try_compose(f, self.identity(self.src(f))) != Some(f)
            {
                return false;
            }
            for g in self.morphisms() {
                if composable(g, f) != self.try_compose(g, f).is_some() {
                    return false;
                }
                let Some(gf) = self.try_compose(g, f) else { continue };
                if self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) {
                    return false;
                }
                for h in (0..m).map(MorId) {
                    if let Some(hg) = self.try_compose(h, g) {
                        if self.try_compose(h, gf) != self.try_compose(hg, f) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
