use mackey_core::exact::AbHom;
use mackey_core::groups::GroupFamily;
use mackey_core::mackey::{
    box_level, catalog, catalog_names, check_cohomological, check_mackey_axioms, classify, from_json_str, to_json_string, Ambient,
    CatalogName, MackeyFunctor,
};
use mackey_core::recover::{bezout_coefficients, recover_top_with, roundtrip_verify, Conjugators, RecoveredTop, SylowData};
use num_bigint::BigInt;
use proptest::prelude::*;

const FAMILIES: [&str; 7] = [
    "cyclic:5",
    "pq-ab:3,5",
    "pq-ab:3,7",
    "pq-nonab:3,7,2",
    "pq-nonab:3,13,3",
    "pq-nonab:5,11,3",
    "a4",
];

/// A family together with one of its catalog names.
fn named() -> impl Strategy<Value = (GroupFamily, CatalogName)> {
    prop::sample::select(FAMILIES.to_vec()).prop_flat_map(|s| {
        let f: GroupFamily = s.parse().unwrap();
        let names = catalog_names(&f);
        (Just(f), prop::sample::select(names))
    })
}

fn build(f: &GroupFamily, name: &CatalogName) -> MackeyFunctor {
    catalog(name, &Ambient::new(f).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn catalog_functors_are_cohomological((f, name) in named()) {
        let m = build(&f, &name);
        let axioms = check_mackey_axioms(&m);
        prop_assert!(axioms.passed(), "{:?}", axioms.violations);
        let coh = check_cohomological(&m);
        prop_assert!(coh.passed(), "{:?}", coh.violations);
    }

    #[test]
    fn classification_inverts_the_catalog((f, name) in named()) {
        prop_assert_eq!(classify(&build(&f, &name)).unwrap(), name);
    }

    #[test]
    fn json_is_canonical((f, name) in named()) {
        let text = to_json_string(&build(&f, &name));
        prop_assert_eq!(to_json_string(&from_json_str(&text).unwrap()), text);
    }

    #[test]
    fn box_levels_are_symmetric(e1 in prop::sample::select(vec![1u64, 2, 4]), e2 in prop::sample::select(vec![1u64, 2, 4])) {
        let f: GroupFamily = "pq-nonab:3,7,2".parse().unwrap();
        let amb = Ambient::new(&f).unwrap();
        let (x, y) = (build(&f, &CatalogName::HatZq { e: e1 }), build(&f, &CatalogName::HatZq { e: e2 }));
        for slot in [amb.top(), amb.slot("Cq").unwrap()] {
            prop_assert!(box_level(&x, &y, slot).unwrap().is_isomorphic(&box_level(&y, &x, slot).unwrap()));
        }
    }
}

fn recoverable() -> impl Strategy<Value = (GroupFamily, CatalogName)> {
    named().prop_filter("the whole group must not be a Sylow subgroup", |(f, _)| {
        !matches!(f, GroupFamily::Cyclic { .. })
    })
}

/// `R^G_{P_i} ∘ Tr^G_{P_j}`, which does not depend on the presentation of the top.
fn composites(rec: &RecoveredTop) -> Vec<AbHom> {
    let n = rec.tr_from_sylow.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| rec.res_to_sylow[i].compose(&rec.tr_from_sylow[j]).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recovery_with_conjugate_sylows((f, name) in recoverable(), xs in prop::collection::vec(0usize..100, 2)) {
        let m = build(&f, &name);
        let g = m.group().clone();
        let sylows = g
            .primes()
            .into_iter()
            .zip(&xs)
            .map(|(p, &x)| g.conjugate(x % g.order(), &g.sylow_subgroup(p).unwrap()))
            .collect();
        let report = roundtrip_verify(&m, Some(sylows)).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn recovery_ignores_bezout_choice((f, name) in recoverable(), shift in -3i64..=3) {
        let m = build(&f, &name);
        let data = SylowData::new(&m).unwrap();
        let g = m.group();
        let indices: Vec<u64> = data.sylows().iter().map(|s| (g.order() / s.order()) as u64).collect();
        let mut other = bezout_coefficients(&indices).unwrap();
        other[0] += BigInt::from(shift * indices[1] as i64);
        other[1] -= BigInt::from(shift * indices[0] as i64);
        let base = recover_top_with(&data, None, Conjugators::Transversal).unwrap();
        let moved = recover_top_with(&data, Some(other), Conjugators::Transversal).unwrap();
        prop_assert!(base.top.is_isomorphic(&moved.top));
        prop_assert_eq!(composites(&base), composites(&moved));
    }

    #[test]
    fn extra_conjugators_change_nothing((f, name) in recoverable()) {
        let data = SylowData::new(&build(&f, &name)).unwrap();
        let few = recover_top_with(&data, None, Conjugators::Transversal).unwrap();
        let all = recover_top_with(&data, None, Conjugators::All).unwrap();
        prop_assert!(few.top.is_isomorphic(&all.top));
        prop_assert_eq!(composites(&few), composites(&all));
    }
}
