use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::FgAbGroup;
use super::hnf::{column_hnf, reduce_mod_lattice};
use super::matrix::IntMatrix;
use super::snf::{kernel_basis, smith_normal_form};
use crate::error::{Error, Result};

/// A homomorphism of finitely generated abelian groups, given by an integer
/// matrix on presentation generators.
#[derive(Clone)]
pub struct AbHom {
    source: Arc<FgAbGroup>,
    target: Arc<FgAbGroup>,
    matrix: IntMatrix,
}

impl AbHom {
    /// Fails unless `matrix` sends every source relation into the target's relation lattice.
    pub fn new(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::Parameter(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        let images = matrix.mul(source.relations());
        for (j, col) in images.columns().iter().enumerate() {
            if !target.is_zero_element(col) {
                return Err(Error::IllDefined(format!(
                    "relation {j} of {source} does not map to zero in {target}"
                )));
            }
        }
        Ok(Self { source, target, matrix })
    }

    /// Builds the map from its matrix on normal coordinates.
    pub fn from_normal(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>, normal: &IntMatrix) -> Result<Self> {
        let m = target.normal_to_presentation().mul(normal).mul(source.presentation_to_normal());
        Self::new(source, target, m)
    }

    pub fn zero(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>) -> Self {
        let matrix = IntMatrix::zero(target.generator_count(), source.generator_count());
        Self { source, target, matrix }
    }

    pub fn identity(g: Arc<FgAbGroup>) -> Self {
        let matrix = IntMatrix::identity(g.generator_count());
        Self {
            source: g.clone(),
            target: g,
            matrix,
        }
    }

    /// Multiplication by `c` on `g`.
    pub fn scalar(g: Arc<FgAbGroup>, c: &BigInt) -> Self {
        let matrix = IntMatrix::scalar(g.generator_count(), c);
        Self {
            source: g.clone(),
            target: g,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<FgAbGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FgAbGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of a presentation vector, as a (non-reduced) presentation vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// Matrix in normal coordinates, entries of torsion rows reduced mod `d_i`.
    pub fn normal_matrix(&self) -> IntMatrix {
        let mut n = self
            .target
            .presentation_to_normal()
            .mul(&self.matrix)
            .mul(self.source.normal_to_presentation());
        for (i, d) in self.target.torsion().iter().enumerate() {
            for j in 0..n.cols() {
                let v = n[(i, j)].mod_floor(d);
                n[(i, j)] = v;
            }
        }
        n
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if !same_group(&first.target, &self.source) {
            return Err(Error::Parameter(format!("cannot compose: {} vs {}", first.target, self.source)));
        }
        Ok(AbHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        if !same_group(&self.source, &other.source) || !same_group(&self.target, &other.target) {
            return Err(Error::Parameter("cannot add maps with different source or target".into()));
        }
        Ok(AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AbHom {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> AbHom {
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.normal_matrix().is_zero()
    }

    pub fn is_identity(&self) -> bool {
        same_group(&self.source, &self.target) && *self == AbHom::identity(self.source.clone())
    }

    /// `[M | R_target]`, whose column span is the preimage lattice of the image.
    fn augmented(&self) -> IntMatrix {
        self.matrix.hconcat(self.target.relations())
    }

    /// The cokernel `target / image`.
    pub fn cokernel(&self) -> FgAbGroup {
        FgAbGroup::from_relations(self.augmented())
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Lattice `{x : M·x ∈ span(R_target)}` in Hermite form; it contains the source relations.
    fn kernel_lattice(&self) -> IntMatrix {
        let n = self.source.generator_count();
        let k = kernel_basis(&self.augmented());
        let idx: Vec<usize> = (0..n).collect();
        column_hnf(&k.select_rows(&idx))
    }

    /// Kernel as a subgroup of the source: presentation vectors generating it.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        self.kernel_lattice()
            .columns()
            .into_iter()
            .filter(|v| !self.source.is_zero_element(v))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators().is_empty()
    }

    /// Some `x` with `f(x) = y`, canonical modulo the kernel, or `None`.
    pub fn solve_preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = self.augmented();
        let snf = smith_normal_form(&a);
        let ey = snf.e.mul_vec(y);
        let mut z = vec![BigInt::zero(); a.cols()];
        for (i, v) in ey.iter().enumerate() {
            if i < snf.rank {
                let (q, r) = v.div_rem(&snf.s[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !v.is_zero() {
                return None;
            }
        }
        let w = snf.f.mul_vec(&z);
        let x = &w[..self.source.generator_count()];
        Some(reduce_mod_lattice(&self.kernel_lattice(), x))
    }
}

/// True iff `f` is a bijection.
pub fn hom_is_isomorphism(f: &AbHom) -> bool {
    // finitely generated abelian groups are Hopfian
    f.is_surjective() && f.source().is_isomorphic(f.target())
}

fn same_group(a: &Arc<FgAbGroup>, b: &Arc<FgAbGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for AbHom {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.source, &other.source) && same_group(&self.target, &other.target) && self.normal_matrix() == other.normal_matrix()
    }
}

impl Eq for AbHom {}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({} -> {}, normal {:?})", self.source, self.target, self.normal_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{big, bigs};

    fn z() -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::free(1))
    }

    fn zn(n: i64) -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::cyclic(&big(n)))
    }

    fn mul(src: &Arc<FgAbGroup>, dst: &Arc<FgAbGroup>, c: i64) -> AbHom {
        AbHom::new(src.clone(), dst.clone(), IntMatrix::from_rows(&[[c]])).unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        assert!(hom_is_isomorphism(&mul(&z(), &z(), 1)));
        assert!(!hom_is_isomorphism(&mul(&z(), &z(), 7)));
        assert!(hom_is_isomorphism(&mul(&zn(7), &zn(7), 3)));
        assert!(!hom_is_isomorphism(&mul(&zn(7), &zn(7), 7)));
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        assert!(AbHom::new(zn(7), z(), IntMatrix::from_rows(&[[1]])).is_err());
        assert!(AbHom::new(zn(6), zn(3), IntMatrix::from_rows(&[[1]])).is_ok());
        assert!(AbHom::new(zn(3), zn(6), IntMatrix::from_rows(&[[1]])).is_err());
        assert!(AbHom::new(zn(3), zn(6), IntMatrix::from_rows(&[[2]])).is_ok());
    }

    #[test]
    fn preimages() {
        let id = AbHom::identity(Arc::new(FgAbGroup::free(2)));
        assert_eq!(id.solve_preimage(&bigs(&[5, -3])), Some(bigs(&[5, -3])));
        assert_eq!(mul(&z(), &z(), 2).solve_preimage(&bigs(&[3])), None);
        assert_eq!(mul(&z(), &zn(7), 2).solve_preimage(&bigs(&[1])), Some(bigs(&[4])));
    }

    #[test]
    fn equality_is_modulo_relations() {
        assert_eq!(mul(&zn(7), &zn(7), 3), mul(&zn(7), &zn(7), 10));
        assert_ne!(mul(&zn(7), &zn(7), 3), mul(&zn(7), &zn(7), 4));
        assert!(mul(&zn(7), &zn(7), 7).is_zero());
    }

    #[test]
    fn kernel_and_cokernel() {
        let f = mul(&z(), &zn(7), 1);
        assert!(f.is_surjective());
        assert!(!f.is_injective());
        let g = mul(&z(), &z(), 3);
        assert!(g.is_injective());
        assert_eq!(g.cokernel().torsion(), &[big(3)]);
    }
}
