use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::complex::{dual_complex, elementary_complex, tensor_many_with_layout, GChainComplex};
use super::homology::fixed_homology;
use crate::error::{Error, Result};
use crate::exact::SparseMatrix;
use crate::groups::{pow_mod, FiniteGroupTable, GroupFamily};

/// `⊗_{i<p} D_{j·k^i}` over `C_q` (or its dual) with the operator
/// `A = (signed cyclic shift of the factors) ∘ (t^m ↦ t^{km} on each factor)`.
#[derive(Clone, Debug)]
pub struct TwistedOperator {
    p: u64,
    q: u64,
    k: u64,
    sign: i8,
    complex: GChainComplex,
    /// `maps[i]` acts on the module in degree `lo + i`.
    maps: Vec<SparseMatrix>,
}

/// The multiplier by which the operator acts on a cyclic homology group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeAction {
    /// `Z/order` with the generator sent to `multiplier` times itself.
    Torsion { order: u64, multiplier: u64 },
    /// `Z` with the generator sent to `±` itself.
    Free { sign: i64 },
}

impl TwistedOperator {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn complex(&self) -> &GChainComplex {
        &self.complex
    }

    pub fn operator(&self, n: i64) -> Option<&SparseMatrix> {
        let i = n - self.complex.lo();
        (i >= 0).then(|| self.maps.get(i as usize)).flatten()
    }

    /// Chain map, `A ρ(t) = ρ(t^k) A` and `A^p = I`.
    fn verify(&self) -> Result<()> {
        let c = &self.complex;
        let g = c.group();
        let t = g.generator("g")?;
        let tk = g.pow(t, self.k as i64);
        for n in c.lo()..=c.hi() {
            let a = self.operator(n).expect("in range");
            if let Some(d) = c.differential(n) {
                if d.mul(a) != self.operator(n - 1).expect("in range").mul(d) {
                    return Err(Error::IllDefined(format!("operator is not a chain map in degree {n}")));
                }
            }
            let m = c.module(n).expect("in range");
            if a.mul(&m.action(t)) != m.action(tk).mul(a) {
                return Err(Error::IllDefined(format!("operator does not twist the action in degree {n}")));
            }
            let mut power = a.clone();
            for _ in 1..self.p {
                power = a.mul(&power);
            }
            if power != SparseMatrix::identity(m.rank()) {
                return Err(Error::IllDefined(format!("operator does not have order {} in degree {n}", self.p)));
            }
        }
        Ok(())
    }
}

/// The twisted complex for `W_1`; see [`twisted_operator_for`].
pub fn twisted_permutation_operator(p: u64, q: u64, k: u64, sign: i8) -> Result<TwistedOperator> {
    twisted_operator_for(p, q, k, 1, sign)
}

/// The twisted complex modelling `S^{±W_j}` restricted to `C_q`, with the
/// operator through which the generator of `C_p` acts.
pub fn twisted_operator_for(p: u64, q: u64, k: u64, j: u64, sign: i8) -> Result<TwistedOperator> {
    GroupFamily::PqNonabelian { p, q, k }.validate()?;
    if sign != 1 && sign != -1 {
        return Err(Error::Parameter(format!("sign must be ±1, got {sign}")));
    }
    let group: Arc<FiniteGroupTable> = Arc::new(GroupFamily::Cyclic { n: q }.build()?);
    let factors = (0..p)
        .map(|i| elementary_complex(&group, j * pow_mod(k, i, q) % q))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GChainComplex> = factors.iter().collect();
    let (complex, layout) = tensor_many_with_layout(&group, &refs)?;

    let frobenius = |deg: i64, x: usize| if deg == 0 { x } else { (x * k as usize) % q as usize };
    let pu = p as usize;
    let mut maps = Vec::with_capacity(layout.blocks.len());
    for (slot, blocks) in layout.blocks.iter().enumerate() {
        let mut trip = Vec::with_capacity(layout.rank(slot));
        for b in blocks {
            let mut target_deg = vec![b.degrees[pu - 1]];
            target_deg.extend_from_slice(&b.degrees[..pu - 1]);
            let tb = layout.block(&target_deg);
            let rest: i64 = b.degrees[..pu - 1].iter().sum();
            let v = if (b.degrees[pu - 1] * rest).rem_euclid(2) == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            for pos in 0..b.size() {
                let xs = b.digits(pos);
                let mut ys = Vec::with_capacity(pu);
                ys.push(frobenius(b.degrees[pu - 1], xs[pu - 1]));
                ys.extend((0..pu - 1).map(|i| frobenius(b.degrees[i], xs[i])));
                trip.push((tb.position(&ys), b.position(&xs), v.clone()));
            }
        }
        let r = layout.rank(slot);
        maps.push(SparseMatrix::from_triplets(r, r, trip));
    }
    let (complex, maps) = if sign == 1 {
        (complex, maps)
    } else {
        // a signed permutation is orthogonal, so A is its own inverse transpose
        (dual_complex(&complex), maps.into_iter().rev().collect())
    };
    let op = TwistedOperator {
        p,
        q,
        k,
        sign,
        complex,
        maps,
    };
    op.verify()?;
    Ok(op)
}

/// The action of the operator on the homology of the `C_q`-fixed
/// subcomplex, one entry per nonzero degree.
pub fn cp_action_on_homology(op: &TwistedOperator) -> Result<BTreeMap<i64, DegreeAction>> {
    let c = op.complex();
    let fixed = fixed_homology(c, &c.group().whole())?;
    let mut out = BTreeMap::new();
    for n in c.lo()..=c.hi() {
        let h = fixed.homology.group(n);
        if h.is_trivial() {
            continue;
        }
        if h.normal_len() != 1 {
            return Err(Error::Internal(format!("homology in degree {n} is not cyclic: {h}")));
        }
        let basis = fixed.basis(c.lo(), n);
        let z = &fixed.homology.generators(n)[0];
        let image = op.operator(n).expect("in range").mul_vec(&basis.vector(z));
        let coords = basis
            .coords(&image)
            .ok_or_else(|| Error::Internal(format!("operator leaves the fixed points in degree {n}")))?;
        let class = fixed.homology.class_of(n, &coords)?;
        let x = &class[0];
        let action = if h.free_rank() == 1 {
            if !x.abs().is_one() {
                return Err(Error::Internal(format!("operator acts on Z by {x} in degree {n}")));
            }
            DegreeAction::Free {
                sign: x.to_i64().expect("±1"),
            }
        } else {
            let order = &h.torsion()[0];
            let m = x.mod_floor(order);
            if !m.gcd(order).is_one() {
                return Err(Error::Internal(format!("operator acts on {h} by the non-unit {m}")));
            }
            DegreeAction::Torsion {
                order: order.to_u64().expect("small"),
                multiplier: m.to_u64().expect("small"),
            }
        };
        out.insert(n, action);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torsion(multiplier: u64, order: u64) -> DegreeAction {
        DegreeAction::Torsion { order, multiplier }
    }

    #[test]
    fn action_for_w1_over_c7() {
        let op = twisted_permutation_operator(3, 7, 2, 1).unwrap();
        assert_eq!(op.complex().rank(6), 343);
        let a = cp_action_on_homology(&op).unwrap();
        let want = BTreeMap::from([
            (0, torsion(1, 7)),
            (2, torsion(2, 7)),
            (4, torsion(4, 7)),
            (6, DegreeAction::Free { sign: 1 }),
        ]);
        assert_eq!(a, want);
    }

    #[test]
    fn dual_action_for_w1_over_c7() {
        let op = twisted_permutation_operator(3, 7, 2, -1).unwrap();
        let a = cp_action_on_homology(&op).unwrap();
        let want = BTreeMap::from([(-3, torsion(4, 7)), (-5, torsion(2, 7)), (-6, DegreeAction::Free { sign: 1 })]);
        assert_eq!(a, want);
    }

    #[test]
    fn other_orbit_representative() {
        let op = twisted_operator_for(3, 13, 3, 2, 1).unwrap();
        let a = cp_action_on_homology(&op).unwrap();
        assert_eq!(a[&2], torsion(3, 13));
        assert!(twisted_permutation_operator(3, 7, 3, 1).is_err());
    }
}
