//! Set-based representations: a group per component together with
//! isomorphisms onto every loop group, natural under conjugation
//! `conj_p(q) = p . q . p^-1`. Abelian loop groups make conjugation
//! path-independent, which is what [`represent`] exploits.

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::groupoid::enumerate::check_cap;
use crate::groupoid::{EnumerationError, FinGroup, FinGroupoid, MorId, ObjId};
use crate::trunc::{pi0, Pi0, SpanningForest, TreeOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentError {
    #[error("loops `{p}` and `{q}` at `{object}` do not commute")]
    NonBraided { object: String, p: String, q: String },
    #[error("invalid representation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Succeeds iff all loops at every object commute; otherwise names the
/// first non-commuting pair.
pub fn is_braided(g: &FinGroupoid) -> Result<(), RepresentError> {
    for a in g.objects() {
        let loops = g.loops(a);
        for (&p, &q) in loops.iter().cartesian_product(loops) {
            if g.try_compose(p, q) != g.try_compose(q, p) {
                return Err(RepresentError::NonBraided {
                    object: g.object_name(a).to_string(),
                    p: g.morphism_name(p).to_string(),
                    q: g.morphism_name(q).to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetBasedRepresentation {
    pub base: Arc<FinGroupoid>,
    pub pi0: Pi0,
    /// `family[c]` is the loop group at the representative of `c`.
    pub family: Vec<FinGroup>,
    /// `iso[a][i]` is the loop at `a` that element `i` of
    /// `family[proj a]` corresponds to.
    pub iso: Vec<Vec<MorId>>,
}

impl SetBasedRepresentation {
    pub fn family_of(&self, a: ObjId) -> &FinGroup {
        &self.family[self.pi0.proj(a).0]
    }

    /// Each `iso[a]` is a bijective homomorphism onto `hom(a, a)` and
    /// `conj_p . iso[a] == iso[b]` for every `p: a -> b`.
    pub fn check(&self) -> Result<(), RepresentError> {
        let g = &self.base;
        if self.iso.len() != g.object_count() || self.family.len() != self.pi0.count() {
            return Err(RepresentError::Invalid("family or isomorphisms have the wrong size".into()));
        }
        for a in g.objects() {
            let name = g.object_name(a);
            if !is_loop_isomorphism(g, a, self.family_of(a), &self.iso[a.0]) {
                return Err(RepresentError::Invalid(format!("iso at `{name}` is not a group isomorphism")));
            }
        }
        for p in g.morphisms() {
            let (a, b) = (g.src(p), g.tgt(p));
            for (i, &q) in self.iso[a.0].iter().enumerate() {
                if g.conjugate(p, q) != self.iso[b.0][i] {
                    return Err(RepresentError::Invalid(format!(
                        "not natural along `{}` at element {}",
                        g.morphism_name(p),
                        self.family_of(a).name(i)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of naturality equations `check` verifies.
    pub fn naturality_equations(&self) -> usize {
        self.base.morphisms().map(|p| self.iso[self.base.src(p).0].len()).sum()
    }
}

fn is_loop_isomorphism(g: &FinGroupoid, a: ObjId, group: &FinGroup, images: &[MorId]) -> bool {
    let loops = g.loops(a);
    if images.len() != group.order() || images.len() != loops.len() {
        return false;
    }
    if !images.iter().all(|m| loops.contains(m)) || images.iter().duplicates().next().is_some() {
        return false;
    }
    let n = group.order();
    (0..n)
        .cartesian_product(0..n)
        .all(|(x, y)| g.try_compose(images[x], images[y]) == Some(images[group.mul(x, y)]))
}

pub fn represent(g: &Arc<FinGroupoid>) -> Result<SetBasedRepresentation, RepresentError> {
    represent_along(g, TreeOrder::Forward)
}

/// Builds the representation transporting the representative's loop group
/// along a breadth-first forest explored in the given order.
pub fn represent_along(g: &Arc<FinGroupoid>, order: TreeOrder) -> Result<SetBasedRepresentation, RepresentError> {
    is_braided(g)?;
    let forest = SpanningForest::bfs(g, order);
    let p = forest.pi0().clone();
    let family: Vec<FinGroup> = p.components().map(|c| g.loop_group(p.rep(c))).collect();
    let iso = g
        .objects()
        .map(|a| {
            let rep = p.rep(p.proj(a));
            let path = forest.path(a);
            g.loops(rep).iter().map(|&q| g.conjugate(path, q)).collect()
        })
        .collect();
    let rep = SetBasedRepresentation { base: g.clone(), pi0: p, family, iso };
    rep.check()?;
    Ok(rep)
}

/// `prod_a |family(proj a)|!`, the number of bijections the oracle may try.
pub fn representation_search_space(g: &FinGroupoid) -> u64 {
    let p = pi0(g);
    g.objects()
        .map(|a| {
            let k = g.loops(p.rep(p.proj(a))).len() as u64;
            (1..=k).fold(1u64, |acc, x| acc.saturating_mul(x))
        })
        .fold(1u64, |acc, x| acc.saturating_mul(x))
}

/// Counts every natural family of isomorphisms from the representative
/// loop groups onto the loop groups, by exhausting all bijections.
pub fn enumerate_representations(g: &FinGroupoid, cap: u64) -> Result<u64, RepresentError> {
    check_cap(representation_search_space(g), cap)?;
    let p = pi0(g);
    let family: Vec<FinGroup> = p.components().map(|c| g.loop_group(p.rep(c))).collect();
    let candidates: Vec<Vec<Vec<MorId>>> = g
        .objects()
        .map(|a| {
            let group = &family[p.proj(a).0];
            let loops = g.loops(a);
            loops
                .iter()
                .copied()
                .permutations(loops.len())
                .filter(|images| is_loop_isomorphism(g, a, group, images))
                .collect()
        })
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    Ok(count_natural(g, &candidates, &mut chosen))
}

fn count_natural(g: &FinGroupoid, candidates: &[Vec<Vec<MorId>>], chosen: &mut Vec<usize>) -> u64 {
    let k = chosen.len();
    if k == candidates.len() {
        return 1;
    }
    let mut total = 0;
    for idx in 0..candidates[k].len() {
        chosen.push(idx);
        let iso = |a: ObjId| &candidates[a.0][chosen[a.0]];
        let ok = g.morphisms().all(|p| {
            let (a, b) = (g.src(p), g.tgt(p));
            if a.0 > k || b.0 > k || (a.0 != k && b.0 != k) {
                return true;
            }
            iso(a).iter().zip(iso(b)).all(|(&q, &r)| g.conjugate(p, q) == r)
        });
        if ok {
            total += count_natural(g, candidates, chosen);
        }
        chosen.pop();
    }
    total
}
