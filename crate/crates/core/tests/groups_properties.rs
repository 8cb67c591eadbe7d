use std::collections::BTreeSet;
use std::sync::Arc;

use mackey_core::exact::AbHom;
use mackey_core::gmodules::{conjugation_matrix, fixed_point_basis, permutation_module, restriction_matrix, transfer_matrix, IntGModule};
use mackey_core::groups::{FiniteGroupTable, GroupFamily, Subgroup, SubgroupLattice};
use num_bigint::BigInt;
use proptest::prelude::*;

const FAMILIES: [&str; 12] = [
    "cyclic:1",
    "cyclic:12",
    "cyclic:30",
    "pq-ab:3,5",
    "pq-ab:5,7",
    "pq-nonab:3,7,2",
    "pq-nonab:3,13,3",
    "pq-nonab:5,11,3",
    "pq-nonab:3,19,7",
    "pq-nonab:3,31,5",
    "klein4",
    "a4",
];

fn family() -> impl Strategy<Value = GroupFamily> {
    prop::sample::select(FAMILIES.to_vec()).prop_map(|s| s.parse().unwrap())
}

fn build(f: &GroupFamily) -> (Arc<FiniteGroupTable>, SubgroupLattice) {
    let g = Arc::new(f.build().unwrap());
    let l = SubgroupLattice::new(&g);
    (g, l)
}

fn pick(l: &SubgroupLattice, i: usize) -> &Subgroup {
    &l.all()[i % l.all().len()]
}

/// Number of `H`-orbits on `G/K`, computed on explicit coset sets.
fn orbit_count(g: &FiniteGroupTable, h: &Subgroup, k: &Subgroup) -> usize {
    let coset = |x: usize| k.elements().iter().map(|&y| g.mul(x, y)).min().unwrap();
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for x in g.elements() {
        let c = coset(x);
        if seen.insert(c) {
            orbits += 1;
            for &a in h.elements() {
                seen.insert(coset(g.mul(a, x)));
            }
        }
    }
    orbits
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_are_groups(f in family(), xs in prop::collection::vec(0usize..100, 3)) {
        let (g, l) = build(&f);
        let n = g.order();
        let (a, b, c) = (xs[0] % n, xs[1] % n, xs[2] % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        for s in l.all() {
            prop_assert_eq!(n % s.order(), 0);
            prop_assert!(g.is_subgroup(s.elements()));
        }
    }

    #[test]
    fn nonabelian_lattice_shape(f in family()) {
        if let GroupFamily::PqNonabelian { q, .. } = f {
            let (_, l) = build(&f);
            prop_assert_eq!(l.rep_count(), 4);
            prop_assert_eq!(l.class_size(l.slot_by_name("Cp").unwrap()) as u64, q);
        }
    }

    #[test]
    fn double_coset_counts(f in family()) {
        let (g, _) = build(&f);
        let sylows: Vec<Subgroup> = g.primes().into_iter().map(|p| g.sylow_subgroup(p).unwrap()).collect();
        for pk in &sylows {
            for pi in &sylows {
                let total: usize = g.double_coset_reps(pk, pi).iter().map(|d| pk.order() / d.left.order()).sum();
                prop_assert_eq!(total, g.order() / pi.order());
            }
        }
    }

    #[test]
    fn subconjugators_reverse(f in family(), i in 0usize..1000, j in 0usize..1000) {
        let (g, l) = build(&f);
        let (h, k) = (pick(&l, i), pick(&l, j));
        if h.order() == k.order() {
            if let Some(x) = g.subconjugator(h, k) {
                prop_assert!(g.conjugate(g.inv(x), k).is_subset(h));
            }
        }
    }

    #[test]
    fn permutation_modules(f in family(), i in 0usize..1000, j in 0usize..1000) {
        let (g, l) = build(&f);
        let (h, k) = (pick(&l, i), pick(&l, j));
        let m: IntGModule = permutation_module(&g, k);
        for a in g.elements() {
            for b in g.elements() {
                prop_assert_eq!(m.action(a).mul(&m.action(b)), m.action(g.mul(a, b)));
            }
        }
        prop_assert_eq!(fixed_point_basis(&m, h).rank(), orbit_count(&g, h, k));
    }

    #[test]
    fn transfer_after_restriction_on_trivial_modules(f in family(), i in 0usize..1000, j in 0usize..1000) {
        let (g, l) = build(&f);
        let (a, b) = (pick(&l, i), pick(&l, j));
        let (h, k) = if b.is_subset(a) { (a, b) } else if a.is_subset(b) { (b, a) } else { return Ok(()) };
        let m = IntGModule::trivial(g.clone(), 2);
        let tr_res = transfer_matrix(&m, k, h).unwrap().compose(&restriction_matrix(&m, h, k).unwrap()).unwrap();
        let index = BigInt::from(k.index_in(h));
        prop_assert_eq!(&tr_res, &AbHom::scalar(tr_res.source().clone(), &index));
    }

    #[test]
    fn conjugations_compose(f in family(), i in 0usize..1000, j in 0usize..1000, x in 0usize..100, y in 0usize..100) {
        let (g, l) = build(&f);
        let (h, k) = (pick(&l, i), pick(&l, j));
        let (x, y) = (x % g.order(), y % g.order());
        let m = permutation_module(&g, k);
        let first = conjugation_matrix(&m, h, x).unwrap();
        let second = conjugation_matrix(&m, &g.conjugate(x, h), y).unwrap();
        prop_assert_eq!(second.compose(&first).unwrap(), conjugation_matrix(&m, h, g.mul(y, x)).unwrap());
    }
}
