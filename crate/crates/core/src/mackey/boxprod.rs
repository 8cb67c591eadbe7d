use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MackeyBuilder, MackeyFunctor};
use crate::error::{Error, Result};
use crate::exact::{AbHom, FgAbGroup, IntMatrix};
use crate::groups::GroupFamily;

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

/// `A ⊗ B` on the generators `a_i ⊗ b_j` (index `i·|B| + j`).
pub fn tensor_groups(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let (na, nb) = (a.generator_count(), b.generator_count());
    let rels = kron(a.relations(), &IntMatrix::identity(nb)).hconcat(&kron(&IntMatrix::identity(na), b.relations()));
    debug_assert_eq!(rels.rows(), na * nb);
    FgAbGroup::from_relations(rels)
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// The box product of two functors supported on the levels `G/G` and
/// `G/C_q` of the nonabelian group of order `pq`, computed levelwise by
/// Frobenius reciprocity.
pub fn box_functor(p: &MackeyFunctor, q: &MackeyFunctor) -> Result<MackeyFunctor> {
    let amb = p.ambient().clone();
    if !matches!(amb.family(), GroupFamily::PqNonabelian { .. }) || q.ambient().family() != amb.family() {
        return Err(Error::Unsupported(
            "box products are implemented for the nonabelian group of order pq".into(),
        ));
    }
    let (e, cp, cq, top) = (amb.slot("e")?, amb.slot("Cp")?, amb.slot("Cq")?, amb.top());
    for m in [p, q] {
        if m.domain().len() != amb.slot_count() {
            return Err(Error::Unsupported("box product needs functors on the full lattice".into()));
        }
        if !m.level(e)?.is_trivial() || !m.level(cp)?.is_trivial() {
            return Err(Error::Unsupported("box product needs functors supported on G/G and G/Cq".into()));
        }
    }
    let (pg, qg, pc, qc) = (p.level(top)?, q.level(top)?, p.level(cq)?, q.level(cq)?);
    let (n_pg, n_qg, n_pc, n_qc) = (
        pg.generator_count(),
        qg.generator_count(),
        pc.generator_count(),
        qc.generator_count(),
    );
    let low = Arc::new(tensor_groups(pc, qc));
    let upper = tensor_groups(pg, qg);
    let (na, nb) = (n_pg * n_qg, n_pc * n_qc);
    let n = na + nb;
    let weyl: Vec<IntMatrix> = (0..p.weyl(cq).len())
        .map(|i| kron(p.weyl(cq)[i].matrix(), q.weyl(cq)[i].matrix()))
        .collect();

    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    let pad = |front: Vec<BigInt>, back: Vec<BigInt>| -> Vec<BigInt> { front.into_iter().chain(back).collect() };
    for r in upper.relations().columns() {
        rels.push(pad(r, vec![BigInt::zero(); nb]));
    }
    for r in low.relations().columns() {
        rels.push(pad(vec![BigInt::zero(); na], r));
    }
    // Tr(u) = Tr(c_y u)
    for w in &weyl {
        for u in 0..nb {
            let wu = w.column(u);
            let v: Vec<BigInt> = unit(nb, u).iter().zip(&wu).map(|(a, b)| a - b).collect();
            rels.push(pad(vec![BigInt::zero(); na], v));
        }
    }
    // x ⊗ Tr(y) = Tr(R(x) ⊗ y)
    let (rp, tq) = (p.res(top, cq)?, q.tr(top, cq)?);
    for x in 0..n_pg {
        for y in 0..n_qc {
            let mut v = vec![BigInt::zero(); n];
            for j in 0..n_qg {
                v[x * n_qg + j] += &tq.matrix()[(j, y)];
            }
            for i in 0..n_pc {
                v[na + i * n_qc + y] -= &rp.matrix()[(i, x)];
            }
            rels.push(v);
        }
    }
    // Tr(x) ⊗ y = Tr(x ⊗ R(y))
    let (tp, rq) = (p.tr(top, cq)?, q.res(top, cq)?);
    for x in 0..n_pc {
        for y in 0..n_qg {
            let mut v = vec![BigInt::zero(); n];
            for i in 0..n_pg {
                v[i * n_qg + y] += &tp.matrix()[(i, x)];
            }
            for j in 0..n_qc {
                v[na + x * n_qc + j] -= &rq.matrix()[(j, y)];
            }
            rels.push(v);
        }
    }
    let top_group = FgAbGroup::from_relations(IntMatrix::from_columns(n, &rels));

    let mut levels: BTreeMap<usize, FgAbGroup> = (0..amb.slot_count()).map(|s| (s, FgAbGroup::trivial())).collect();
    levels.insert(cq, (*low).clone());
    levels.insert(top, top_group);
    let mut b = MackeyBuilder::new(&amb, levels);
    let (lt, lc) = (b.level(top)?, b.level(cq)?);
    let mut sum = IntMatrix::zero(nb, nb);
    for w in &weyl {
        sum = sum.add(w);
    }
    let res = kron(rp.matrix(), rq.matrix()).hconcat(&sum);
    let tr = IntMatrix::zero(na, nb).vconcat(&IntMatrix::identity(nb));
    b.set_res(top, cq, AbHom::new(lt.clone(), lc.clone(), res)?)?;
    b.set_tr(top, cq, AbHom::new(lc.clone(), lt, tr)?)?;
    for (i, w) in weyl.into_iter().enumerate() {
        b.set_weyl(cq, i, AbHom::new(lc.clone(), lc.clone(), w)?)?;
    }
    b.build()
}

/// One level of [`box_functor`]; `slot` must be `G` or `C_q`.
pub fn box_level(p: &MackeyFunctor, q: &MackeyFunctor, slot: usize) -> Result<Arc<FgAbGroup>> {
    let amb = p.ambient();
    if amb.family().pq().is_some() && slot != amb.top() && slot != amb.slot("Cq")? {
        return Err(Error::Unsupported(format!("box level at {} is not implemented", amb.name(slot))));
    }
    Ok(box_functor(p, q)?.level(slot)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{catalog, check_cohomological, check_mackey_axioms, classify, Ambient, CatalogName};

    #[test]
    fn hat_zq_products() {
        let a = Ambient::new(&"pq-nonab:3,7,2".parse().unwrap()).unwrap();
        let (cq, top) = (a.slot("Cq").unwrap(), a.top());
        let hz = |e| catalog(&CatalogName::HatZq { e }, &a).unwrap();
        let seven = FgAbGroup::cyclic(&BigInt::from(7));
        assert!(box_level(&hz(2), &hz(4), top).unwrap().is_isomorphic(&seven));
        assert!(box_level(&hz(2), &hz(2), top).unwrap().is_trivial());
        assert!(box_level(&hz(1), &hz(1), top).unwrap().is_isomorphic(&seven));
        assert!(box_level(&hz(2), &hz(1), cq).unwrap().is_isomorphic(&seven));
        let f = box_functor(&hz(2), &hz(2)).unwrap();
        assert!(check_mackey_axioms(&f).passed());
        assert!(check_cohomological(&f).passed());
        assert_eq!(classify(&f).unwrap(), CatalogName::HatZq { e: 4 });
        assert!(box_level(&hz(1), &hz(1), a.slot("e").unwrap()).is_err());
        let z = catalog(&CatalogName::ConstZ { a: 1, b: 1 }, &a).unwrap();
        assert!(box_functor(&z, &hz(1)).is_err());
    }

    #[test]
    fn tensor_of_cyclic_groups() {
        let a = FgAbGroup::cyclic(&BigInt::from(6));
        let b = FgAbGroup::cyclic(&BigInt::from(4));
        assert!(tensor_groups(&a, &b).is_isomorphic(&FgAbGroup::cyclic(&BigInt::from(2))));
        assert!(tensor_groups(&a, &FgAbGroup::free(2)).is_isomorphic(&FgAbGroup::direct_sum(&[&a, &a])));
    }
}
