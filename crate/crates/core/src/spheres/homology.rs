use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::GChainComplex;
use crate::error::{Error, Result};
use crate::exact::{AbHom, ChainComplex, ChainHomology, FgAbGroup, IntMatrix, SparseMatrix};
use crate::gmodules::{conjugation_sparse, fixed_point_basis, restriction_sparse, transfer_sparse, FixedPointData};
use crate::groups::Subgroup;
use crate::mackey::{classify_summands, Ambient, CatalogName, MackeyBuilder, MackeyFunctor};

/// Homology of a complex as a Mackey functor in each degree.
#[derive(Clone, Debug)]
pub struct HomologyTable {
    ambient: Arc<Ambient>,
    degrees: BTreeMap<i64, MackeyFunctor>,
    /// Cycles of the ambient module representing the normal generators,
    /// keyed by degree and level.
    generators: BTreeMap<(i64, usize), Vec<Vec<BigInt>>>,
}

impl HomologyTable {
    /// Zero functors are dropped.
    pub fn new(ambient: Arc<Ambient>, degrees: BTreeMap<i64, MackeyFunctor>) -> Self {
        let degrees = degrees.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Self {
            ambient,
            degrees,
            generators: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn degrees(&self) -> &BTreeMap<i64, MackeyFunctor> {
        &self.degrees
    }

    pub fn functor(&self, n: i64) -> Option<&MackeyFunctor> {
        self.degrees.get(&n)
    }

    /// The level `slot` in degree `n`; trivial outside the table.
    pub fn level(&self, n: i64, slot: usize) -> Arc<FgAbGroup> {
        self.degrees
            .get(&n)
            .and_then(|m| m.level(slot).ok().cloned())
            .unwrap_or_else(|| Arc::new(FgAbGroup::trivial()))
    }

    pub fn generators(&self, n: i64, slot: usize) -> &[Vec<BigInt>] {
        self.generators.get(&(n, slot)).map_or(&[], Vec::as_slice)
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            ambient: self.ambient.clone(),
            degrees: self.degrees.iter().map(|(n, m)| (n + by, m.clone())).collect(),
            generators: self.generators.iter().map(|(&(n, s), g)| ((n + by, s), g.clone())).collect(),
        }
    }

    /// Catalog names of the primary summands in every degree.
    pub fn names(&self) -> Result<BTreeMap<i64, Vec<CatalogName>>> {
        self.degrees
            .iter()
            .map(|(&n, m)| {
                let mut names = classify_summands(m)?;
                names.sort();
                Ok((n, names))
            })
            .collect()
    }
}

/// The fixed-point subcomplex `C^H` with its bases and homology.
pub(crate) struct FixedHomology {
    pub bases: Vec<FixedPointData>,
    pub homology: ChainHomology,
}

impl FixedHomology {
    pub fn basis(&self, lo: i64, n: i64) -> &FixedPointData {
        &self.bases[(n - lo) as usize]
    }
}

fn dense_column(m: &SparseMatrix, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m.rows()];
    for (i, x) in m.column(j) {
        v[*i] = x.clone();
    }
    v
}

pub(crate) fn fixed_homology(c: &GChainComplex, h: &Subgroup) -> Result<FixedHomology> {
    let bases: Vec<FixedPointData> = c.modules().iter().map(|m| fixed_point_basis(m, h)).collect();
    let mut diffs = Vec::with_capacity(c.differentials().len());
    for (i, d) in c.differentials().iter().enumerate() {
        let image = d.mul(&bases[i + 1].basis);
        let cols: Vec<Vec<BigInt>> = (0..image.cols()).map(|j| dense_column(&image, j)).collect();
        diffs.push(bases[i].coords_matrix(&cols)?);
    }
    let dims = bases.iter().map(FixedPointData::rank).collect();
    let homology = ChainHomology::compute(ChainComplex::new(c.lo(), dims, diffs)?);
    Ok(FixedHomology { bases, homology })
}

/// Matrix in normal coordinates of the map `H_n(C^A) → H_n(C^B)` induced by
/// `f`, given on fixed-point coordinates.
fn induced(src: &ChainHomology, dst: &ChainHomology, n: i64, f: &SparseMatrix) -> Result<IntMatrix> {
    let rows = dst.group(n).normal_len();
    let mut cols = Vec::new();
    for z in src.generators(n) {
        let image = f.mul_vec(z);
        cols.push(dst.class_of(n, &image).map_err(|e| match e {
            Error::Internal(m) => Error::Internal(format!("{m}: the differential is not equivariant")),
            other => other,
        })?);
    }
    Ok(IntMatrix::from_columns(rows, &cols))
}

/// Levelwise homology of the fixed-point subcomplexes, with restriction,
/// transfer and Weyl actions induced on representing cycles. `domain`
/// defaults to every conjugacy class of subgroups.
pub fn homology_mackey(c: &GChainComplex, domain: Option<&BTreeSet<usize>>) -> Result<HomologyTable> {
    let ambient = Ambient::from_group(c.group().clone())?;
    let all: BTreeSet<usize> = (0..ambient.slot_count()).collect();
    let domain = domain.unwrap_or(&all).clone();
    if let Some(bad) = domain.iter().find(|&&s| s >= ambient.slot_count()) {
        return Err(Error::Parameter(format!("no subgroup class {bad}")));
    }
    let fixed: BTreeMap<usize, FixedHomology> = domain
        .iter()
        .map(|&s| Ok((s, fixed_homology(c, ambient.rep(s))?)))
        .collect::<Result<_>>()?;
    let pairs = ambient.containments(&domain);

    let mut degrees = BTreeMap::new();
    let mut generators = BTreeMap::new();
    for n in c.lo()..=c.hi() {
        let levels: BTreeMap<usize, FgAbGroup> = fixed.iter().map(|(&s, f)| (s, (*f.homology.group(n)).clone())).collect();
        if levels.values().all(FgAbGroup::is_trivial) {
            continue;
        }
        let module = c.module(n).expect("in range");
        let mut b = MackeyBuilder::new(&ambient, levels);
        for &(h, k) in &pairs {
            let (fh, fk) = (&fixed[&h], &fixed[&k]);
            let (bh, bk) = (fh.basis(c.lo(), n), fk.basis(c.lo(), n));
            let r = induced(&fh.homology, &fk.homology, n, &restriction_sparse(bh, bk)?)?;
            let t = induced(&fk.homology, &fh.homology, n, &transfer_sparse(module, bk, bh)?)?;
            b.res_normal(h, k, &r)?;
            b.tr_normal(h, k, &t)?;
        }
        for (&s, f) in &fixed {
            let basis = f.basis(c.lo(), n);
            for (i, &y) in ambient.weyl(s).coset_representatives.iter().enumerate().skip(1) {
                let w = induced(&f.homology, &f.homology, n, &conjugation_sparse(module, basis, y, basis)?)?;
                let level = b.level(s)?;
                b.set_weyl(s, i, AbHom::from_normal(level.clone(), level, &w)?)?;
            }
            let cycles = f.homology.generators(n).iter().map(|z| basis.vector(z)).collect();
            generators.insert((n, s), cycles);
        }
        degrees.insert(n, b.build()?);
    }
    let mut table = HomologyTable::new(ambient, degrees);
    table.generators = generators.into_iter().filter(|((n, _), _)| table.degrees.contains_key(n)).collect();
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{check_cohomological, check_mackey_axioms, classify};
    use crate::spheres::{cyclic_sphere_complex, dual_complex};

    #[test]
    fn single_rotation_over_c7() {
        let c = cyclic_sphere_complex(7, &[1], 0).unwrap();
        let t = homology_mackey(&c, None).unwrap();
        assert_eq!(t.degrees().keys().copied().collect::<Vec<_>>(), vec![0, 2]);
        let (e, g) = (t.ambient().slot("e").unwrap(), t.ambient().top());
        assert!(t.level(0, g).is_isomorphic(&FgAbGroup::cyclic(&BigInt::from(7))));
        assert!(t.level(0, e).is_trivial());
        assert_eq!(classify(t.functor(0).unwrap()).unwrap(), CatalogName::HatZp);
        assert_eq!(classify(t.functor(2).unwrap()).unwrap(), CatalogName::ConstZ { a: 1, b: 1 });
        for m in t.degrees().values() {
            assert!(check_mackey_axioms(m).passed() && check_cohomological(m).passed());
        }
        assert_eq!(t.generators(2, e).len(), 1);
    }

    #[test]
    fn point_and_dual() {
        let p = cyclic_sphere_complex(7, &[], 0).unwrap();
        let t = homology_mackey(&p, None).unwrap();
        assert_eq!(t.names().unwrap(), BTreeMap::from([(0, vec![CatalogName::ConstZ { a: 1, b: 1 }])]));
        let d = dual_complex(&cyclic_sphere_complex(7, &[1], 0).unwrap());
        let t = homology_mackey(&d, None).unwrap();
        assert_eq!(t.names().unwrap(), BTreeMap::from([(-2, vec![CatalogName::ConstZ { a: 7, b: 1 }])]));
    }

    #[test]
    fn euler_characteristic_at_the_bottom() {
        let c = cyclic_sphere_complex(7, &[1, 3, 2], -1).unwrap();
        let t = homology_mackey(&c, None).unwrap();
        let e = t.ambient().slot("e").unwrap();
        let chi: i64 = t
            .degrees()
            .keys()
            .map(|&n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * t.level(n, e).free_rank() as i64)
            .sum();
        assert_eq!(chi, c.euler_characteristic());
        let names = t.names().unwrap();
        assert_eq!(names[&5], vec![CatalogName::ConstZ { a: 1, b: 1 }]);
        assert_eq!(names.len(), 4);
    }

    #[test]
    fn shifting_moves_every_degree() {
        let c = cyclic_sphere_complex(5, &[1, 2], 0).unwrap();
        let t = homology_mackey(&c, None).unwrap();
        let s = homology_mackey(&c.shift(2), None).unwrap();
        let moved: BTreeMap<i64, Vec<CatalogName>> = t.names().unwrap().into_iter().map(|(n, v)| (n + 2, v)).collect();
        assert_eq!(s.names().unwrap(), moved);
        assert_eq!(t.shift(2).names().unwrap(), moved);
    }
}
