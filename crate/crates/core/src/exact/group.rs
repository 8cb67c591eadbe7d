use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hom::AbHom;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A finitely generated abelian group `Z^n / (column span of relations)`.
///
/// The presentation is kept as given; the invariant-factor decomposition
/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` is computed once at construction.
/// Normal coordinates list the torsion summands first, then the free ones.
#[derive(Clone, PartialEq, Eq)]
pub struct FgAbGroup {
    generator_count: usize,
    relations: IntMatrix,
    torsion: Vec<BigInt>,
    free_rank: usize,
    presentation_to_normal: IntMatrix,
    normal_to_presentation: IntMatrix,
}

impl FgAbGroup {
    /// `Z^generators / span(relations)`; `relations` has one column per relation.
    pub fn from_relations(relations: IntMatrix) -> Self {
        let n = relations.rows();
        let snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut keep = Vec::new();
        for (i, d) in diag.iter().enumerate().take(snf.rank) {
            if !d.is_one() {
                torsion.push(d.clone());
                keep.push(i);
            }
        }
        keep.extend(snf.rank..n);
        let free_rank = n - snf.rank;
        let mut presentation_to_normal = snf.e.select_rows(&keep);
        let mut normal_to_presentation = snf.u.select_columns(&keep);
        // free coordinates read the first presentation generator they see positively
        for i in torsion.len()..keep.len() {
            let first = (0..n).map(|j| presentation_to_normal[(i, j)].clone()).find(|v| !v.is_zero());
            if first.is_some_and(|v| v.is_negative()) {
                for j in 0..n {
                    presentation_to_normal[(i, j)] = -presentation_to_normal[(i, j)].clone();
                    normal_to_presentation[(j, i)] = -normal_to_presentation[(j, i)].clone();
                }
            }
        }
        Self {
            generator_count: n,
            relations,
            torsion,
            free_rank,
            presentation_to_normal,
            normal_to_presentation,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_relations(IntMatrix::zero(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: &BigInt) -> Self {
        Self::from_relations(IntMatrix::from_vec(1, 1, vec![order.clone()]))
    }

    /// The group in normal form: generators are the normal summands themselves.
    pub fn from_invariants(torsion: &[BigInt], free_rank: usize) -> Self {
        let n = torsion.len() + free_rank;
        let mut rel = IntMatrix::zero(n, torsion.len());
        for (i, d) in torsion.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        Self::from_relations(rel)
    }

    pub fn direct_sum(parts: &[&FgAbGroup]) -> Self {
        let blocks: Vec<&IntMatrix> = parts.iter().map(|g| &g.relations).collect();
        Self::from_relations(IntMatrix::block_diagonal(&blocks))
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn normal_len(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn presentation_to_normal(&self) -> &IntMatrix {
        &self.presentation_to_normal
    }

    pub fn normal_to_presentation(&self) -> &IntMatrix {
        &self.normal_to_presentation
    }

    pub fn is_trivial(&self) -> bool {
        self.normal_len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group; `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Z, Z/n or 0.
    pub fn is_cyclic(&self) -> bool {
        self.normal_len() <= 1
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.torsion == other.torsion && self.free_rank == other.free_rank
    }

    /// Normal-form group isomorphic to this one.
    pub fn normal_form(&self) -> Self {
        Self::from_invariants(&self.torsion, self.free_rank)
    }

    pub fn is_normal_presentation(&self) -> bool {
        *self == self.normal_form()
    }

    /// Canonical normal coordinates of an element given on presentation generators.
    pub fn normalize(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.generator_count, "element length mismatch");
        let mut y = self.presentation_to_normal.mul_vec(x);
        for (yi, d) in y.iter_mut().zip(&self.torsion) {
            *yi = yi.mod_floor(d);
        }
        y
    }

    /// Presentation vector representing the element with the given normal coordinates.
    pub fn lift(&self, normal: &[BigInt]) -> Vec<BigInt> {
        self.normal_to_presentation.mul_vec(normal)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.normalize(x).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.normalize(x) == self.normalize(y)
    }

    /// Presentation vectors of the normal generators.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.normal_to_presentation.columns()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.generator_count]
    }

    /// Enumerates all elements (normal coordinates) of a finite group.
    pub fn enumerate(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let mut next = Vec::new();
            for v in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut w: Vec<BigInt> = v.clone();
                    w.push(k.clone());
                    next.push(w);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

/// `G / <rels>` together with the projection from `G`.
///
/// The quotient keeps `G`'s generators; its relations are `G`'s relations
/// followed by `rels`, so the projection is the identity on presentations.
pub fn quotient_by_relations(g: &Arc<FgAbGroup>, rels: &[Vec<BigInt>]) -> (Arc<FgAbGroup>, AbHom) {
    let n = g.generator_count();
    let extra = IntMatrix::from_columns(n, rels);
    let q = Arc::new(FgAbGroup::from_relations(g.relations().hconcat(&extra)));
    let proj = AbHom::new(g.clone(), q.clone(), IntMatrix::identity(n)).expect("projection is well defined");
    (q, proj)
}

/// `Z^rows / column-span(a)` together with the projection from `Z^rows`.
pub fn cokernel_presentation(a: &IntMatrix) -> (Arc<FgAbGroup>, AbHom) {
    let free = Arc::new(FgAbGroup::free(a.rows()));
    quotient_by_relations(&free, &a.columns())
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self} on {} generators)", self.generator_count)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d.abs()));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{big, bigs};

    #[test]
    fn cokernel_of_primitive_column() {
        let (g, proj) = cokernel_presentation(&IntMatrix::from_rows(&[[3], [-7]]));
        assert_eq!(g.free_rank(), 1);
        assert!(g.torsion().is_empty());
        assert_eq!(proj.source().generator_count(), 2);
    }

    #[test]
    fn cyclic_and_empty_cokernels() {
        let (g, _) = cokernel_presentation(&IntMatrix::from_rows(&[[7]]));
        assert_eq!(g.torsion(), &[big(7)]);
        assert_eq!(g.free_rank(), 0);
        let (h, proj) = cokernel_presentation(&IntMatrix::zero(2, 0));
        assert_eq!(h.free_rank(), 2);
        assert!(proj.matrix().is_identity());
    }

    #[test]
    fn quotients() {
        let z2 = Arc::new(FgAbGroup::free(2));
        let (g, _) = quotient_by_relations(&z2, &[bigs(&[3, -7])]);
        assert!(g.is_isomorphic(&FgAbGroup::free(1)));

        let zq = Arc::new(FgAbGroup::cyclic(&big(7)));
        let (g, _) = quotient_by_relations(&zq, &[]);
        assert!(g.is_isomorphic(&zq));

        let zq2 = Arc::new(FgAbGroup::from_invariants(&bigs(&[7, 7]), 0));
        let (g, _) = quotient_by_relations(&zq2, &[bigs(&[1, -1])]);
        assert_eq!(g.torsion(), &[big(7)]);
        assert_eq!(g.free_rank(), 0);

        let all: Vec<Vec<BigInt>> = IntMatrix::identity(2).columns();
        let (g, _) = quotient_by_relations(&zq2, &all);
        assert!(g.is_trivial());
    }

    #[test]
    fn normalization_is_canonical() {
        let g = FgAbGroup::from_relations(IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(g.torsion(), &[big(6)]);
        let x = bigs(&[1, 1]);
        let y = bigs(&[3, 4]);
        assert!(g.elements_equal(&x, &y));
        let n = g.normalize(&x);
        assert!(g.elements_equal(&g.lift(&n), &x));
    }
}
