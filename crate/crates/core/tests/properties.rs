mod common;

use std::sync::Arc;

use common::{naive_components, naive_factorization_count};
use proptest::prelude::*;
use proptest::sample::Index;
use trunckit::elim::{
    canon, check_null, check_weakly_constant, enumerate_factorizations, factor_through_pi0, factor_through_pi0_along,
    factor_through_proptrunc, null_iff_ap_constant, PropTruncFactor,
};
use trunckit::groupoid::{
    codiscrete, coproduct, cyclic, delooping, discrete, enumerate_functors, product, symmetric, FinGroup, FinGroupoid,
    GroupoidFunctor, NaturalIso, ObjId, DEFAULT_CAP,
};
use trunckit::hit::{build_hit, hit_equiv_pi0, hit_is_truncated, restricted_induction_check};
use trunckit::represent::{is_braided, represent, represent_along};
use trunckit::trunc::{component_of, decompose, is_connected, pi0, prop_trunc, TreeOrder};

fn part() -> impl Strategy<Value = FinGroupoid> {
    prop_oneof![
        (1usize..3).prop_map(discrete),
        (1usize..4).prop_map(codiscrete),
        (1usize..5).prop_map(|n| delooping(&cyclic(n)).unwrap()),
        Just(delooping(&symmetric(3)).unwrap()),
        (1usize..3, 1usize..3).prop_map(|(a, b)| product(&codiscrete(a), &delooping(&cyclic(b)).unwrap()).unwrap()),
    ]
}

/// Coproducts of up to three small connected or discrete pieces.
fn groupoid() -> impl Strategy<Value = Arc<FinGroupoid>> {
    proptest::collection::vec(part(), 0..4).prop_map(|parts| {
        let refs: Vec<&FinGroupoid> = parts.iter().collect();
        Arc::new(coproduct(&refs).unwrap())
    })
}

/// A functor picked from the full enumeration, when it is small enough.
fn functor() -> impl Strategy<Value = Option<GroupoidFunctor>> {
    (groupoid(), groupoid(), any::<Index>()).prop_map(|(a, b, pick)| {
        let all = enumerate_functors(&a, &b, 20_000).ok()?;
        (!all.is_empty()).then(|| all[pick.index(all.len())].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_groupoids_satisfy_the_laws(g in groupoid()) {
        prop_assert!(g.satisfies_laws());
        for a in g.objects() {
            prop_assert!(g.loop_group(a).satisfies_laws());
        }
    }

    #[test]
    fn random_tables_are_groups_only_if_lawful(n in 1usize..5, entries in proptest::collection::vec(0usize..4, 16)) {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let rows: Vec<Vec<usize>> = (0..n).map(|r| (0..n).map(|c| entries[r * 4 + c] % n).collect()).collect();
        if let Ok(group) = FinGroup::from_table(names, rows) {
            prop_assert!(group.satisfies_laws());
        }
    }

    #[test]
    fn components_match_reachability(g in groupoid()) {
        let p = pi0(&g);
        let labels = naive_components(&g);
        prop_assert_eq!(p.count(), labels.iter().copied().max().map_or(0, |m| m + 1));
        for a in g.objects() {
            for b in g.objects() {
                prop_assert_eq!(p.same_component(a, b), !g.hom(a, b).is_empty());
            }
        }
        prop_assert_eq!(prop_trunc(&g).inhabited, g.object_count() > 0);
        let mut total = 0;
        for c in p.components() {
            let comp = component_of(&g, c).unwrap();
            prop_assert!(is_connected(&comp.sub));
            prop_assert!(comp.inclusion.validate().is_ok());
            total += comp.sub.object_count();
        }
        prop_assert_eq!(total, g.object_count());
        let (set, proj) = p.as_groupoid(&g);
        prop_assert_eq!(pi0(&set).count(), p.count());
        prop_assert!(proj.validate().is_ok());
    }

    #[test]
    fn decomposition_is_an_equivalence(g in groupoid()) {
        let d = decompose(&g);
        prop_assert!(d.equivalence.check().is_ok());
        prop_assert_eq!(d.components.len(), pi0(&g).count());
    }

    #[test]
    fn factorization_theorem(f in functor()) {
        let Some(f) = f else { return Ok(()) };
        let null = check_null(&f).is_ok();
        let factored = factor_through_pi0(&f);
        prop_assert_eq!(factored.is_ok(), null);
        let (n, ap) = null_iff_ap_constant(&f);
        prop_assert_eq!((n, ap), (null, null));
        if let Ok(fg) = enumerate_factorizations(&f, DEFAULT_CAP) {
            prop_assert_eq!(!fg.is_empty(), null);
            prop_assert!(fg.is_empty() || fg.is_contractible());
            prop_assert!(fg.is_closed());
            if fg.objects.len() <= 64 && f.dom().object_count() <= 3 {
                let naive = naive_factorization_count(f.dom(), f.cod(), f.obj_map(), f.mor_map());
                prop_assert_eq!(fg.objects.len(), naive);
            }
        }
        if let Ok(fac) = factored {
            prop_assert!(fac.witness.check().is_ok());
            let other = factor_through_pi0_along(&f, TreeOrder::Reverse).unwrap();
            prop_assert_eq!(&other.witness.components, &fac.witness.components);
            // canon of the factor is isomorphic to f through the witness
            let (k, cert) = canon(&fac.f_prime, f.dom(), f.cod()).unwrap();
            prop_assert!(cert.verify());
            let iso = NaturalIso::new(k, f.clone(), fac.witness.components.clone());
            prop_assert!(iso.check().is_ok());
        }
    }

    #[test]
    fn canon_then_factor_recovers_the_choice(a in groupoid(), b in groupoid(), picks in proptest::collection::vec(any::<Index>(), 12)) {
        prop_assume!(b.object_count() > 0);
        let p = pi0(&a);
        let choice: Vec<ObjId> = (0..p.count()).map(|c| ObjId(picks[c].index(b.object_count()))).collect();
        let (f, cert) = canon(&choice, &a, &b).unwrap();
        prop_assert!(cert.verify());
        let fac = factor_through_pi0(&f).unwrap();
        prop_assert_eq!(fac.f_prime, choice);
        prop_assert!(fac.witness.components.iter().all(|&m| b.is_identity(m)));
    }

    #[test]
    fn propositional_truncation(g in groupoid(), values in proptest::collection::vec(0usize..3, 16)) {
        let values = &values[..g.object_count().min(16)];
        prop_assume!(values.len() == g.object_count());
        let constant = check_weakly_constant(values, &g);
        let factored = factor_through_proptrunc(values, &g);
        prop_assert_eq!(constant.is_ok(), factored.is_ok());
        match factored {
            Ok(PropTruncFactor::Value(v)) => prop_assert!(values.iter().all(|&x| x == v)),
            Ok(PropTruncFactor::Empty) => prop_assert_eq!(g.object_count(), 0),
            Err(_) => prop_assert!(values.windows(2).any(|w| w[0] != w[1])),
        }
    }

    #[test]
    fn hit_is_a_set_equivalent_to_its_components(g in groupoid()) {
        let h = build_hit(&g);
        prop_assert!(h.carrier.satisfies_laws());
        prop_assert!(hit_is_truncated(&h).is_ok());
        for a in h.carrier.objects() {
            prop_assert_eq!(h.carrier.loops(a).len(), 1);
        }
        prop_assert!(hit_equiv_pi0(&h).check().is_ok());
        if g.object_count() <= 6 {
            for s in 1..=3 {
                prop_assert!(restricted_induction_check(&h, s, DEFAULT_CAP).unwrap().holds());
            }
        }
    }

    #[test]
    fn representations_exist_exactly_for_braided_groupoids(g in groupoid()) {
        let braided = is_braided(&g).is_ok();
        let r = represent(&g);
        prop_assert_eq!(r.is_ok(), braided);
        if let Ok(r) = r {
            prop_assert!(r.check().is_ok());
            let other = represent_along(&g, TreeOrder::Reverse).unwrap();
            prop_assert_eq!(other.iso, r.iso);
        }
    }
}
