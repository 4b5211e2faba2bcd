//! Exhaustive search over functors and natural isomorphisms, used by the
//! brute-force oracles. All output is in a fixed lexicographic order.

use std::sync::Arc;

use thiserror::Error;

use super::{FinGroupoid, GroupoidEquivalence, GroupoidFunctor, MorId, NaturalIso, ObjId};

/// Default bound on the number of candidates any search may visit.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("search space of {estimate} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { estimate: u64, cap: u64 },
}

pub(crate) fn check_cap(estimate: u64, cap: u64) -> Result<(), EnumerationError> {
    if estimate > cap {
        Err(EnumerationError::SearchSpaceTooLarge { estimate, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn saturating_pow(base: u64, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(base))
}

/// Upper bound on the candidates [`enumerate_functors`] visits:
/// `|Ob(B)|^|Ob(A)| * h^k` where `h` is the largest hom-set of `B` and `k`
/// the number of non-identity morphisms of `A`.
pub fn functor_search_space(a: &FinGroupoid, b: &FinGroupoid) -> u64 {
    let max_hom = b
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| b.hom(x, y).len() as u64)
        .max()
        .unwrap_or(0);
    let non_id = a.morphism_count() - a.object_count();
    saturating_pow(b.object_count() as u64, a.object_count()).saturating_mul(saturating_pow(max_hom, non_id))
}

/// All functors `A -> B`, ordered by object map (first object most
/// significant) and then by the images of the non-identity morphisms.
pub fn enumerate_functors(
    a: &Arc<FinGroupoid>,
    b: &Arc<FinGroupoid>,
    cap: u64,
) -> Result<Vec<GroupoidFunctor>, EnumerationError> {
    check_cap(functor_search_space(a, b), cap)?;
    let mut out = Vec::new();
    let n = a.object_count();
    if n > 0 && b.object_count() == 0 {
        return Ok(out);
    }
    let mut obj_map = vec![ObjId(0); n];
    loop {
        let mut mor_map: Vec<MorId> = a.objects().map(|x| b.identity(obj_map[x.0])).collect();
        assign_morphisms(a, b, &obj_map, &mut mor_map, &mut out);
        // odometer, last object fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            obj_map[i].0 += 1;
            if obj_map[i].0 < b.object_count() {
                break;
            }
            obj_map[i].0 = 0;
        }
    }
}

fn assign_morphisms(
    a: &Arc<FinGroupoid>,
    b: &Arc<FinGroupoid>,
    obj_map: &[ObjId],
    mor_map: &mut Vec<MorId>,
    out: &mut Vec<GroupoidFunctor>,
) {
    let k = mor_map.len();
    if k == a.morphism_count() {
        out.push(GroupoidFunctor::new_unchecked(a.clone(), b.clone(), obj_map.to_vec(), mor_map.clone()));
        return;
    }
    let m = MorId(k);
    for &image in b.hom(obj_map[a.src(m).0], obj_map[a.tgt(m).0]) {
        mor_map.push(image);
        if consistent_with_latest(a, b, mor_map) {
            assign_morphisms(a, b, obj_map, mor_map, out);
        }
        mor_map.pop();
    }
}

/// Checks every composite among the assigned prefix that involves the most
/// recently assigned morphism.
fn consistent_with_latest(a: &FinGroupoid, b: &FinGroupoid, mor_map: &[MorId]) -> bool {
    let last = mor_map.len() - 1;
    for f in 0..=last {
        for g in 0..=last {
            let Some(gf) = a.try_compose(MorId(g), MorId(f)) else { continue };
            if gf.0 > last || (f != last && g != last && gf.0 != last) {
                continue;
            }
            if b.try_compose(mor_map[g], mor_map[f]) != Some(mor_map[gf.0]) {
                return false;
            }
        }
    }
    true
}

/// All natural isomorphisms `source => target`, components chosen per
/// object in hom order.
pub fn enumerate_natural_isos(source: &GroupoidFunctor, target: &GroupoidFunctor) -> Vec<NaturalIso> {
    let mut out = Vec::new();
    let mut comps = Vec::new();
    extend_components(source, target, &mut comps, &mut |c| {
        out.push(NaturalIso::new(source.clone(), target.clone(), c.to_vec()));
        true
    });
    out
}

pub(crate) fn first_natural_iso(source: &GroupoidFunctor, target: &GroupoidFunctor) -> Option<NaturalIso> {
    let mut found = None;
    let mut comps = Vec::new();
    extend_components(source, target, &mut comps, &mut |c| {
        found = Some(NaturalIso::new(source.clone(), target.clone(), c.to_vec()));
        false
    });
    found
}

// Returns false once the visitor asks to stop.
fn extend_components(
    source: &GroupoidFunctor,
    target: &GroupoidFunctor,
    comps: &mut Vec<MorId>,
    visit: &mut dyn FnMut(&[MorId]) -> bool,
) -> bool {
    let dom = source.dom();
    let cod = source.cod();
    let k = comps.len();
    if k == dom.object_count() {
        return visit(comps);
    }
    let a = ObjId(k);
    for &c in cod.hom(source.obj(a), target.obj(a)) {
        comps.push(c);
        let ok = dom.morphisms().all(|m| {
            let (x, y) = (dom.src(m), dom.tgt(m));
            if x.0 > k || y.0 > k || (x.0 != k && y.0 != k) {
                return true;
            }
            cod.try_compose(comps[y.0], source.mor(m)) == cod.try_compose(target.mor(m), comps[x.0])
        });
        if ok && !extend_components(source, target, comps, visit) {
            comps.pop();
            return false;
        }
        comps.pop();
    }
    true
}

/// Searches all functor pairs `A -> B`, `B -> A` for an equivalence.
pub fn find_equivalence(
    a: &Arc<FinGroupoid>,
    b: &Arc<FinGroupoid>,
    cap: u64,
) -> Result<Option<GroupoidEquivalence>, EnumerationError> {
    let forwards = enumerate_functors(a, b, cap)?;
    let backwards = enumerate_functors(b, a, cap)?;
    let id_a = GroupoidFunctor::identity(a.clone());
    let id_b = GroupoidFunctor::identity(b.clone());
    for fwd in &forwards {
        for bwd in &backwards {
            let there_and_back = bwd.after(fwd).expect("composable");
            let Some(unit) = first_natural_iso(&there_and_back, &id_a) else { continue };
            let back_and_there = fwd.after(bwd).expect("composable");
            let Some(counit) = first_natural_iso(&back_and_there, &id_b) else { continue };
            return Ok(Some(GroupoidEquivalence { fwd: fwd.clone(), bwd: bwd.clone(), unit, counit }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{codiscrete, cyclic, delooping, discrete};

    #[test]
    fn functor_counts() {
        let d1 = Arc::new(discrete(1));
        let d2 = Arc::new(discrete(2));
        let bz2 = Arc::new(delooping(&cyclic(2)).unwrap());
        assert_eq!(enumerate_functors(&d2, &d2, DEFAULT_CAP).unwrap().len(), 4);
        assert_eq!(enumerate_functors(&d1, &bz2, DEFAULT_CAP).unwrap().len(), 1);
        assert_eq!(enumerate_functors(&bz2, &bz2, DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(enumerate_functors(&d1, &Arc::new(discrete(0)), DEFAULT_CAP).unwrap().len(), 0);
        assert_eq!(enumerate_functors(&Arc::new(discrete(0)), &d1, DEFAULT_CAP).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let c3 = Arc::new(codiscrete(3));
        let err = enumerate_functors(&c3, &c3, 10).unwrap_err();
        assert!(matches!(err, EnumerationError::SearchSpaceTooLarge { cap: 10, .. }));
    }

    #[test]
    fn codiscrete_two_is_equivalent_to_a_point() {
        let c2 = Arc::new(codiscrete(2));
        let d1 = Arc::new(discrete(1));
        let eq = find_equivalence(&c2, &d1, DEFAULT_CAP).unwrap().expect("contractible");
        assert!(eq.is_valid());
    }

    #[test]
    fn bz2_is_not_equivalent_to_a_point() {
        let bz2 = Arc::new(delooping(&cyclic(2)).unwrap());
        let d1 = Arc::new(discrete(1));
        assert!(find_equivalence(&bz2, &d1, DEFAULT_CAP).unwrap().is_none());
    }
}
