use std::collections::BTreeSet;
use std::sync::Arc;

use mackey_core::exact::{
    cokernel_presentation, hom_is_isomorphism, quotient_by_relations, smith_normal_form, AbHom, FgAbGroup, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |xs| IntMatrix::from_vec(r, c, xs.into_iter().map(BigInt::from).collect()))
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// `gcd` of all `k × k` minors.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            g = g.gcd(&a.select_rows(&rows).select_columns(&cols).determinant());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_decomposition(a in matrix(8, 100)) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&d.s).mul(&d.v), a.clone());
        prop_assert_eq!(d.e.mul(&a).mul(&d.f), d.s.clone());
        prop_assert!(d.u.determinant().abs().is_one());
        prop_assert!(d.v.determinant().abs().is_one());
        prop_assert!(d.e.mul(&d.u).is_identity());
        prop_assert!(d.v.mul(&d.f).is_identity());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    prop_assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        prop_assert!(diag.iter().take(d.rank).all(|x| x.is_positive()));
        prop_assert!(diag.iter().skip(d.rank).all(Zero::is_zero));
        for w in diag[..d.rank].windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_factors_are_quotients_of_minor_gcds(a in matrix(4, 12)) {
        let d = smith_normal_form(&a);
        let mut product = BigInt::one();
        for (k, x) in d.diagonal().iter().enumerate() {
            product *= x;
            prop_assert_eq!(determinantal_divisor(&a, k + 1), product.clone());
        }
    }

    #[test]
    fn cokernels_follow_the_diagonal(a in matrix(6, 30)) {
        let d = smith_normal_form(&a);
        let (g, _) = cokernel_presentation(&a);
        let nonunits: Vec<BigInt> = d.invariant_factors().into_iter().filter(|x| !x.is_one()).collect();
        prop_assert_eq!(g.torsion(), nonunits.as_slice());
        prop_assert_eq!(g.free_rank(), a.rows() - d.rank);
    }

    #[test]
    fn quotients_by_nothing_and_everything(a in matrix(5, 20)) {
        let (g, _) = cokernel_presentation(&a);
        let (same, _) = quotient_by_relations(&g, &[]);
        prop_assert!(same.is_isomorphic(&g));
        let (none, _) = quotient_by_relations(&g, &g.generators());
        prop_assert!(none.is_trivial());
    }
}

/// `Z/d_1 ⊕ Z/d_2` on two diagonal generators, unreduced.
fn diagonal_group(d: [i64; 2]) -> Arc<FgAbGroup> {
    Arc::new(FgAbGroup::from_relations(IntMatrix::from_rows(&[[d[0], 0], [0, d[1]]])))
}

fn bijective_by_enumeration(f: &AbHom) -> bool {
    let (src, dst) = (f.source(), f.target());
    let elements = src.enumerate().expect("finite");
    if Some(BigInt::from(elements.len())) != dst.order() {
        return false;
    }
    let images: BTreeSet<Vec<BigInt>> = elements.iter().map(|x| dst.normalize(&f.apply(&src.lift(x)))).collect();
    images.len() == elements.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn isomorphism_test_matches_enumeration(
        d in [2i64..=14, 2i64..=14],
        e in [2i64..=14, 2i64..=14],
        raw in prop::collection::vec(-6i64..=6, 4),
    ) {
        let (src, dst) = (diagonal_group(d), diagonal_group(e));
        let mut m = IntMatrix::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let step = e[i] / e[i].gcd(&d[j]);
                m[(i, j)] = BigInt::from(raw[2 * i + j] * step);
            }
        }
        let f = AbHom::new(src, dst, m).unwrap();
        prop_assert_eq!(hom_is_isomorphism(&f), bijective_by_enumeration(&f));
    }
}
