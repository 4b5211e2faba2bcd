//! Standard groups and groupoids used to build test corpora.
//!
//! Naming scheme, relied on by the text format round trip:
//! `discrete`/`codiscrete` objects are `x0, x1, ...` and codiscrete arrows
//! are `m_xi_xj`; a delooping has the single object `o` whose identity
//! `id_o` stands for the group identity; coproduct part `k` prefixes every
//! name with `ik_`; product objects and morphisms are `left__right`.

use std::sync::Arc;

use itertools::Itertools;

use super::{
    identity_name, validate_groupoid, FinGroup, FinGroupoid, GroupoidError, GroupoidFunctor, MorId, ObjId,
    RawGroupoid,
};

fn valid(raw: &RawGroupoid) -> FinGroupoid {
    validate_groupoid(raw).expect("constructor output is a groupoid")
}

pub fn discrete(n: usize) -> FinGroupoid {
    discrete_on((0..n).map(|i| format!("x{i}")))
}

/// Discrete groupoid with the given object names.
pub fn discrete_on<S: Into<String>>(names: impl IntoIterator<Item = S>) -> FinGroupoid {
    let raw = RawGroupoid { objects: names.into_iter().map(Into::into).collect(), ..RawGroupoid::default() };
    valid(&raw)
}

pub fn codiscrete(n: usize) -> FinGroupoid {
    let obj = |i: usize| format!("x{i}");
    let arrow = |i: usize, j: usize| {
        if i == j {
            identity_name(&obj(i))
        } else {
            format!("m_{}_{}", obj(i), obj(j))
        }
    };
    let mut raw = RawGroupoid::new();
    for i in 0..n {
        raw.object(obj(i));
    }
    for (i, j) in (0..n).cartesian_product(0..n).filter(|(i, j)| i != j) {
        raw.morphism(arrow(i, j), obj(i), obj(j));
    }
    for ((i, j), k) in (0..n).cartesian_product(0..n).cartesian_product(0..n) {
        raw.composite(arrow(j, k), arrow(i, j), arrow(i, k));
    }
    valid(&raw)
}

/// Cyclic group `e, g, g2, ..., g{n-1}` with `gi·gj = g{(i+j) mod n}`.
pub fn cyclic(n: usize) -> FinGroup {
    assert!(n > 0, "cyclic group of order 0");
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FinGroup::from_table(names, rows).expect("cyclic table")
}

/// Symmetric group on `n` points. Elements are permutations in
/// lexicographic order (identity first), named `e, p1, p2, ...`;
/// `(s·t)(x) = s(t(x))`.
pub fn symmetric(n: usize) -> FinGroup {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let names = (0..perms.len())
        .map(|i| if i == 0 { "e".to_string() } else { format!("p{i}") })
        .collect();
    let rows = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index(&t.iter().map(|&x| s[x]).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    FinGroup::from_table(names, rows).expect("symmetric table")
}

/// One-object groupoid `o` with `hom(o, o) = G`. Fails only when an
/// element name collides with `id_o`.
pub fn delooping(group: &FinGroup) -> Result<FinGroupoid, GroupoidError> {
    let name = |a: usize| if a == group.identity() { identity_name("o") } else { group.name(a).to_string() };
    let mut raw = RawGroupoid::new();
    raw.object("o");
    for a in (0..group.order()).filter(|&a| a != group.identity()) {
        raw.morphism(name(a), "o", "o");
    }
    for (r, c) in (0..group.order()).cartesian_product(0..group.order()) {
        raw.composite(name(r), name(c), name(group.mul(r, c)));
    }
    validate_groupoid(&raw)
}

/// Coproduct of any number of groupoids; part `k` is prefixed with `ik_`.
pub fn coproduct(parts: &[&FinGroupoid]) -> Result<FinGroupoid, GroupoidError> {
    let mut raw = RawGroupoid::new();
    for (k, part) in parts.iter().enumerate() {
        let obj = |a: ObjId| format!("i{k}_{}", part.object_name(a));
        let mor = |m: MorId| {
            if part.is_identity(m) {
                identity_name(&obj(part.src(m)))
            } else {
                format!("i{k}_{}", part.morphism_name(m))
            }
        };
        for a in part.objects() {
            raw.object(obj(a));
        }
        for m in part.non_identity_morphisms() {
            raw.morphism(mor(m), obj(part.src(m)), obj(part.tgt(m)));
        }
        for (g, f) in part.morphisms().cartesian_product(part.morphisms()) {
            if let Some(h) = part.try_compose(g, f) {
                raw.composite(mor(g), mor(f), mor(h));
            }
        }
    }
    validate_groupoid(&raw)
}

pub fn disjoint_union(a: &FinGroupoid, b: &FinGroupoid) -> Result<FinGroupoid, GroupoidError> {
    coproduct(&[a, b])
}

/// Categorical product. Objects are pairs in lexicographic order, and
/// morphisms are pairs `(f, g)` in lexicographic order after the identities.
pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> Result<FinGroupoid, GroupoidError> {
    let obj = |x: ObjId, y: ObjId| format!("{}__{}", a.object_name(x), b.object_name(y));
    let mor = |f: MorId, g: MorId| {
        if a.is_identity(f) && b.is_identity(g) {
            identity_name(&obj(a.src(f), b.src(g)))
        } else {
            format!("{}__{}", a.morphism_name(f), b.morphism_name(g))
        }
    };
    let mut raw = RawGroupoid::new();
    for (x, y) in a.objects().cartesian_product(b.objects().collect::<Vec<_>>()) {
        raw.object(obj(x, y));
    }
    let pairs: Vec<(MorId, MorId)> = a.morphisms().cartesian_product(b.morphisms().collect::<Vec<_>>()).collect();
    for &(f, g) in &pairs {
        if !(a.is_identity(f) && b.is_identity(g)) {
            raw.morphism(mor(f, g), obj(a.src(f), b.src(g)), obj(a.tgt(f), b.tgt(g)));
        }
    }
    for &(f1, g1) in &pairs {
        for &(f2, g2) in &pairs {
            if let (Some(f), Some(g)) = (a.try_compose(f2, f1), b.try_compose(g2, g1)) {
                raw.composite(mor(f2, g2), mor(f1, g1), mor(f, g));
            }
        }
    }
    validate_groupoid(&raw)
}

/// Full subgroupoid on `objects` (kept in ambient order) with its inclusion.
pub fn full_subgroupoid(ambient: &Arc<FinGroupoid>, objects: &[ObjId]) -> (Arc<FinGroupoid>, GroupoidFunctor) {
    let mut objs = objects.to_vec();
    objs.sort();
    objs.dedup();
    let keep = |m: MorId| objs.contains(&ambient.src(m)) && objs.contains(&ambient.tgt(m));
    let mut raw = RawGroupoid::new();
    for &x in &objs {
        raw.object(ambient.object_name(x));
    }
    let kept: Vec<MorId> = ambient.non_identity_morphisms().filter(|&m| keep(m)).collect();
    for &m in &kept {
        raw.morphism(
            ambient.morphism_name(m),
            ambient.object_name(ambient.src(m)),
            ambient.object_name(ambient.tgt(m)),
        );
    }
    for &g in &kept {
        for &f in &kept {
            if let Some(h) = ambient.try_compose(g, f) {
                raw.composite(ambient.morphism_name(g), ambient.morphism_name(f), ambient.morphism_name(h));
            }
        }
    }
    let sub = Arc::new(valid(&raw));
    let obj_map = objs.clone();
    let mor_map = sub
        .morphisms()
        .map(|m| ambient.find_morphism(sub.morphism_name(m)).expect("inherited name"))
        .collect();
    let inclusion = GroupoidFunctor::new_unchecked(sub.clone(), ambient.clone(), obj_map, mor_map);
    (sub, inclusion)
}
