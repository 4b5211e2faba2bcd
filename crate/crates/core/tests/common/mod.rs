//! Shared fixtures and naive reference implementations. The oracles here
//! only read tables (`hom`, `try_compose`, `inverse`, ...) and never call the
//! search or construction routines they are used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use itertools::Itertools;
use trunckit::dsl::{parse, Document};
use trunckit::groupoid::{FinGroupoid, MorId, ObjId};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_document() -> Document {
    let text = fs::read_to_string(corpus_dir().join("corpus.gd")).expect("corpus file");
    parse(&text).expect("corpus parses")
}

/// Names of the corpus groupoids in `corpus.gd`, in a fixed order.
pub const CORPUS: [&str; 10] = ["D1", "D2", "D3", "C2", "C3", "BZ2", "BZ3", "BS3", "A1", "C2xBZ2"];

pub fn corpus() -> Vec<(&'static str, Arc<FinGroupoid>)> {
    let doc = corpus_document();
    CORPUS.iter().map(|&n| (n, doc.groupoid(n).expect("corpus groupoid").clone())).collect()
}

pub fn products<T: Clone>(choices: Vec<Vec<T>>) -> Vec<Vec<T>> {
    if choices.is_empty() {
        return vec![Vec::new()];
    }
    choices.into_iter().multi_cartesian_product().collect()
}

/// Component label per object, by depth-first search on nonempty hom-sets.
pub fn naive_components(g: &FinGroupoid) -> Vec<usize> {
    let n = g.object_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = next;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if label[v] == usize::MAX && !g.hom(ObjId(u), ObjId(v)).is_empty() {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

/// Object and morphism maps of every functor `a -> b`, found by trying
/// every object map and every endpoint-respecting morphism map and then
/// checking identities and composition on the full table.
pub fn naive_functors(a: &FinGroupoid, b: &FinGroupoid) -> Vec<(Vec<ObjId>, Vec<MorId>)> {
    let mut out = Vec::new();
    for obj in products((0..a.object_count()).map(|_| b.objects().collect()).collect()) {
        let options = a.morphisms().map(|m| b.hom(obj[a.src(m).0], obj[a.tgt(m).0]).to_vec()).collect();
        for mor in products(options) {
            let identities = a.objects().all(|x| mor[a.identity(x).0] == b.identity(obj[x.0]));
            let composition = a.morphisms().cartesian_product(a.morphisms().collect::<Vec<_>>()).all(|(g, f)| {
                match a.try_compose(g, f) {
                    Some(gf) => b.try_compose(mor[g.0], mor[f.0]) == Some(mor[gf.0]),
                    None => true,
                }
            });
            if identities && composition {
                out.push((obj.clone(), mor));
            }
        }
    }
    out
}

/// Number of `(f_prime, witness)` pairs: `f_prime` picks an object of `b`
/// per component, `witness[x]` is any morphism of `b`; kept when
/// `witness[x]: f_prime(x) -> f(x)` and `witness[y] = f(m) . witness[x]`
/// for every `m: x -> y`.
pub fn naive_factorization_count(a: &FinGroupoid, b: &FinGroupoid, obj: &[ObjId], mor: &[MorId]) -> usize {
    let label = naive_components(a);
    let comps = label.iter().copied().max().map_or(0, |m| m + 1);
    let mut count = 0;
    for f_prime in products((0..comps).map(|_| b.objects().collect()).collect()) {
        for witness in products((0..a.object_count()).map(|_| b.morphisms().collect()).collect()) {
            let endpoints = a.objects().all(|x| {
                let w = witness[x.0];
                b.src(w) == f_prime[label[x.0]] && b.tgt(w) == obj[x.0]
            });
            let natural = endpoints
                && a.morphisms().all(|m| b.try_compose(mor[m.0], witness[a.src(m).0]) == Some(witness[a.tgt(m).0]));
            if natural {
                count += 1;
            }
        }
    }
    count
}

/// Number of descent data `(f, e)` into `b`: `f` a functor, `e(x, y)` a
/// morphism `f(x) -> f(y)` for each connected pair, identity on the
/// diagonal, with `e(x', y') = f(q) . e(x, y) . f(p)^-1` for `p: x -> x'`
/// and `q: y -> y'`.
pub fn naive_descent_count(a: &FinGroupoid, b: &FinGroupoid) -> usize {
    let label = naive_components(a);
    let pairs: Vec<(usize, usize)> = (0..a.object_count())
        .cartesian_product(0..a.object_count())
        .filter(|&(x, y)| label[x] == label[y])
        .collect();
    let mut count = 0;
    for (obj, mor) in naive_functors(a, b) {
        let options = pairs.iter().map(|&(x, y)| b.hom(obj[x], obj[y]).to_vec()).collect();
        for e in products(options) {
            let at = |x: ObjId, y: ObjId| e[pairs.iter().position(|&p| p == (x.0, y.0)).expect("connected")];
            let diagonal = pairs.iter().zip(&e).all(|(&(x, y), &m)| x != y || m == b.identity(obj[x]));
            let natural = diagonal
                && a.morphisms().cartesian_product(a.morphisms().collect::<Vec<_>>()).all(|(p, q)| {
                    let (x, y, x2, y2) = (a.src(p), a.src(q), a.tgt(p), a.tgt(q));
                    if label[x.0] != label[y.0] {
                        return true;
                    }
                    let moved = b
                        .try_compose(mor[q.0], at(x, y))
                        .and_then(|t| b.try_compose(t, b.inverse(mor[p.0])));
                    moved == Some(at(x2, y2))
                });
            if natural {
                count += 1;
            }
        }
    }
    count
}
