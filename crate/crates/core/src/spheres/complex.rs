use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::{ChainComplex, SparseMatrix};
use crate::gmodules::{direct_sum_modules, dual_module, permutation_module, tensor_module, IntGModule};
use crate::groups::{FiniteGroupTable, GroupFamily};

/// A bounded complex `C_lo ← … ← C_hi` of `Z[G]`-lattices.
#[derive(Clone, Debug)]
pub struct GChainComplex {
    group: Arc<FiniteGroupTable>,
    lo: i64,
    modules: Vec<IntGModule>,
    /// `diffs[i] : C_{lo+i+1} → C_{lo+i}`.
    diffs: Vec<SparseMatrix>,
}

impl GChainComplex {
    /// Checks `d∘d = 0` and that every differential commutes with the named
    /// generators of the group.
    pub fn new(group: Arc<FiniteGroupTable>, lo: i64, modules: Vec<IntGModule>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Parameter("a complex needs at least one degree".into()));
        }
        if modules.iter().any(|m| **m.group() != *group) {
            return Err(Error::Parameter("modules over different groups".into()));
        }
        let dims = modules.iter().map(IntGModule::rank).collect();
        ChainComplex::new(lo, dims, diffs.clone())?;
        for &g in group.named_generators().values() {
            for (i, d) in diffs.iter().enumerate() {
                if d.mul(&modules[i + 1].action(g)) != modules[i].action(g).mul(d) {
                    return Err(Error::IllDefined(format!(
                        "differential out of degree {} is not equivariant",
                        lo + i as i64 + 1
                    )));
                }
            }
        }
        Ok(Self { group, lo, modules, diffs })
    }

    /// `Z` with trivial action, concentrated in one degree.
    pub fn point(group: &Arc<FiniteGroupTable>, degree: i64) -> Self {
        Self {
            group: group.clone(),
            lo: degree,
            modules: vec![IntGModule::trivial(group.clone(), 1)],
            diffs: Vec::new(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.group
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn module(&self, n: i64) -> Option<&IntGModule> {
        self.index(n).map(|i| &self.modules[i])
    }

    pub fn modules(&self) -> &[IntGModule] {
        &self.modules
    }

    pub fn rank(&self, n: i64) -> usize {
        self.module(n).map_or(0, IntGModule::rank)
    }

    /// `d_n : C_n → C_{n-1}`, or `None` when either end is zero by range.
    pub fn differential(&self, n: i64) -> Option<&SparseMatrix> {
        let i = self.index(n)?;
        (i >= 1).then(|| &self.diffs[i - 1])
    }

    pub fn differentials(&self) -> &[SparseMatrix] {
        &self.diffs
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            lo: self.lo + by,
            ..self.clone()
        }
    }

    /// The underlying complex of free abelian groups.
    pub fn underlying(&self) -> ChainComplex {
        ChainComplex {
            lo: self.lo,
            dims: self.modules.iter().map(IntGModule::rank).collect(),
            diffs: self.diffs.clone(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.underlying().euler_characteristic()
    }
}

/// `D_j = [Z ←∇ Z[C_n] ←(1-t^j) Z[C_n]]` in degrees `0, 1, 2`, where `t`
/// is the generator `g` of a cyclic group.
pub fn elementary_complex(group: &Arc<FiniteGroupTable>, j: u64) -> Result<GChainComplex> {
    let n = group.order() as u64;
    if !matches!(group.family(), GroupFamily::Cyclic { .. }) || n < 2 {
        return Err(Error::Parameter("elementary complexes live over nontrivial cyclic groups".into()));
    }
    if j.gcd(&n) != 1 {
        return Err(Error::Precondition(format!(
            "rotation number {j} is not coprime to {n}; fold it into the trivial part first"
        )));
    }
    let free = permutation_module(group, &group.trivial_subgroup());
    let one = BigInt::from(1);
    let nabla = SparseMatrix::from_triplets(1, n as usize, (0..n as usize).map(|m| (0, m, one.clone())));
    let t = group.generator("g")?;
    let tj = group.pow(t, j as i64);
    let shift = SparseMatrix::from_triplets(
        n as usize,
        n as usize,
        (0..n as usize).flat_map(|m| [(m, m, one.clone()), (group.mul(tj, m), m, -one.clone())]),
    );
    GChainComplex::new(
        group.clone(),
        0,
        vec![IntGModule::trivial(group.clone(), 1), free.clone(), free],
        vec![nabla, shift],
    )
}

/// Reduced cellular chains of `S^{t + Σ V_j}` over `C_n`: the tensor product
/// of the elementary complexes `D_j`, shifted by `t`.
pub fn cyclic_sphere_complex(n: u64, rotations: &[u64], shift: i64) -> Result<GChainComplex> {
    let group = Arc::new(GroupFamily::Cyclic { n }.build()?);
    cyclic_sphere_complex_over(&group, rotations, shift)
}

pub fn cyclic_sphere_complex_over(group: &Arc<FiniteGroupTable>, rotations: &[u64], shift: i64) -> Result<GChainComplex> {
    let factors = rotations
        .iter()
        .map(|&j| elementary_complex(group, j))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GChainComplex> = factors.iter().collect();
    Ok(tensor_many(group, &refs)?.shift(shift))
}

/// The complex with `D_n = Hom(C_{-n}, Z)` and transposed differentials.
pub fn dual_complex(c: &GChainComplex) -> GChainComplex {
    GChainComplex {
        group: c.group.clone(),
        lo: -c.hi(),
        modules: c.modules.iter().rev().map(dual_module).collect(),
        diffs: c.diffs.iter().rev().map(SparseMatrix::transpose).collect(),
    }
}

/// Total complex of `C ⊗ D` with `d(c ⊗ x) = dc ⊗ x + (-1)^{|c|} c ⊗ dx`.
pub fn tensor_complexes(c: &GChainComplex, d: &GChainComplex) -> Result<GChainComplex> {
    if *c.group != *d.group {
        return Err(Error::Parameter("tensor product of complexes over different groups".into()));
    }
    tensor_many(&c.group, &[c, d])
}

/// One summand `C^0_{a_0} ⊗ … ⊗ C^{m-1}_{a_{m-1}}` of a total degree.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub degrees: Vec<i64>,
    pub ranks: Vec<usize>,
    pub offset: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.ranks.iter().product()
    }

    /// Mixed-radix position of a multi-index, last factor fastest.
    pub fn position(&self, xs: &[usize]) -> usize {
        xs.iter().zip(&self.ranks).fold(0, |acc, (&x, &r)| acc * r + x) + self.offset
    }

    pub fn digits(&self, mut pos: usize) -> Vec<usize> {
        let mut xs = vec![0; self.ranks.len()];
        for (x, &r) in xs.iter_mut().zip(&self.ranks).rev() {
            *x = pos % r;
            pos /= r;
        }
        xs
    }
}

/// Basis bookkeeping for an iterated tensor product: in each total degree
/// the summands are ordered lexicographically by their degree tuples.
#[derive(Clone, Debug)]
pub(crate) struct TensorLayout {
    pub lo: i64,
    pub blocks: Vec<Vec<Block>>,
    lookup: HashMap<Vec<i64>, (usize, usize)>,
}

impl TensorLayout {
    pub fn new(factors: &[&GChainComplex]) -> Self {
        let lo: i64 = factors.iter().map(|c| c.lo()).sum();
        let hi: i64 = factors.iter().map(|c| c.hi()).sum();
        let mut blocks: Vec<Vec<Block>> = vec![Vec::new(); (hi - lo + 1) as usize];
        let mut lookup = HashMap::new();
        let mut tuple: Vec<i64> = factors.iter().map(|c| c.lo()).collect();
        loop {
            let n = tuple.iter().sum::<i64>();
            let slot = (n - lo) as usize;
            let ranks: Vec<usize> = factors.iter().zip(&tuple).map(|(c, &a)| c.rank(a)).collect();
            let offset = blocks[slot].last().map_or(0, |b: &Block| b.offset + b.size());
            lookup.insert(tuple.clone(), (slot, blocks[slot].len()));
            blocks[slot].push(Block {
                degrees: tuple.clone(),
                ranks,
                offset,
            });
            // lexicographic successor
            let mut i = factors.len();
            loop {
                if i == 0 {
                    return Self { lo, blocks, lookup };
                }
                i -= 1;
                if tuple[i] < factors[i].hi() {
                    tuple[i] += 1;
                    for (j, f) in factors.iter().enumerate().skip(i + 1) {
                        tuple[j] = f.lo();
                    }
                    break;
                }
            }
        }
    }

    pub fn block(&self, degrees: &[i64]) -> &Block {
        let (s, b) = self.lookup[degrees];
        &self.blocks[s][b]
    }

    pub fn rank(&self, slot: usize) -> usize {
        self.blocks[slot].last().map_or(0, |b| b.offset + b.size())
    }
}

pub(crate) fn tensor_many_with_layout(group: &Arc<FiniteGroupTable>, factors: &[&GChainComplex]) -> Result<(GChainComplex, TensorLayout)> {
    if factors.is_empty() {
        let point = GChainComplex::point(group, 0);
        let layout = TensorLayout::new(&[&point]);
        return Ok((point, layout));
    }
    let layout = TensorLayout::new(factors);
    let mut modules = Vec::with_capacity(layout.blocks.len());
    for blocks in &layout.blocks {
        let mut parts = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut m = factors[0].module(b.degrees[0]).expect("in range").clone();
            for (f, &a) in factors.iter().zip(&b.degrees).skip(1) {
                m = tensor_module(&m, f.module(a).expect("in range"))?;
            }
            parts.push(m);
        }
        let refs: Vec<&IntGModule> = parts.iter().collect();
        modules.push(direct_sum_modules(group, &refs)?);
    }
    let mut diffs = Vec::with_capacity(layout.blocks.len().saturating_sub(1));
    for slot in 1..layout.blocks.len() {
        let mut t: Vec<(usize, usize, BigInt)> = Vec::new();
        for b in &layout.blocks[slot] {
            for pos in 0..b.size() {
                let xs = b.digits(pos);
                let mut sign_deg = 0i64;
                for (i, f) in factors.iter().enumerate() {
                    let a = b.degrees[i];
                    if let Some(d) = f.differential(a) {
                        let mut target = b.degrees.clone();
                        target[i] -= 1;
                        let tb = layout.block(&target);
                        let negative = sign_deg.rem_euclid(2) == 1;
                        let mut ys = xs.clone();
                        for (y, v) in d.column(xs[i]) {
                            ys[i] = *y;
                            let v = if negative { -v } else { v.clone() };
                            t.push((tb.position(&ys), b.position(&xs), v));
                        }
                    }
                    sign_deg += b.degrees[i];
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(layout.rank(slot - 1), layout.rank(slot), t));
    }
    let complex = GChainComplex::new(group.clone(), layout.lo, modules, diffs)?;
    Ok((complex, layout))
}

/// Total complex of `C^0 ⊗ … ⊗ C^{m-1}` with Koszul signs; `Z` in degree 0
/// for an empty list.
pub fn tensor_many(group: &Arc<FiniteGroupTable>, factors: &[&GChainComplex]) -> Result<GChainComplex> {
    Ok(tensor_many_with_layout(group, factors)?.0)
}

/// Chains of `S^{Σ c_j V_j}` for signed multiplicities: the positive part
/// tensored with the dual of the negative part.
pub fn signed_sphere_complex(group: &Arc<FiniteGroupTable>, rotations: &[(u64, i64)], shift: i64) -> Result<GChainComplex> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for &(j, c) in rotations {
        let list = if c >= 0 { &mut pos } else { &mut neg };
        list.extend(std::iter::repeat_n(j, c.unsigned_abs() as usize));
    }
    let plus = cyclic_sphere_complex_over(group, &pos, 0)?;
    if neg.is_empty() {
        return Ok(plus.shift(shift));
    }
    let minus = dual_complex(&cyclic_sphere_complex_over(group, &neg, 0)?);
    if pos.is_empty() {
        return Ok(minus.shift(shift));
    }
    Ok(tensor_complexes(&plus, &minus)?.shift(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ChainHomology;

    fn c7() -> Arc<FiniteGroupTable> {
        Arc::new(GroupFamily::Cyclic { n: 7 }.build().unwrap())
    }

    #[test]
    fn elementary_complex_shape() {
        let c = cyclic_sphere_complex(7, &[1], 0).unwrap();
        assert_eq!((c.lo(), c.hi()), (0, 2));
        assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (1, 7, 7));
        let h = ChainHomology::compute(c.underlying());
        assert!(h.group(0).is_trivial() && h.group(1).is_trivial());
        assert!(h.group(2).is_isomorphic(&crate::exact::FgAbGroup::free(1)));
        assert!(matches!(cyclic_sphere_complex(6, &[2], 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn two_factor_grid() {
        let c = cyclic_sphere_complex(7, &[1, 2], 0).unwrap();
        assert_eq!((c.lo(), c.hi()), (0, 4));
        assert_eq!(c.rank(2), 7 + 49 + 7);
        let h = ChainHomology::compute(c.underlying());
        for n in 0..4 {
            assert!(h.group(n).is_trivial());
        }
        assert_eq!(h.group(4).free_rank(), 1);
    }

    #[test]
    fn koszul_sign_is_needed() {
        let g = c7();
        let d = elementary_complex(&g, 1).unwrap();
        let layout = TensorLayout::new(&[&d, &d]);
        let (c, _) = tensor_many_with_layout(&g, &[&d, &d]).unwrap();
        assert_eq!(c.rank(1), layout.rank(1));
        // dropping the sign breaks d∘d = 0
        let mut bad = c.differentials().to_vec();
        let unsigned: Vec<(usize, usize, BigInt)> = bad[1].triplets().map(|(i, j, v)| (i, j, num_traits::Signed::abs(v))).collect();
        bad[1] = SparseMatrix::from_triplets(bad[1].rows(), bad[1].cols(), unsigned);
        assert!(GChainComplex::new(g, 0, c.modules().to_vec(), bad).is_err());
    }

    #[test]
    fn points_duals_and_shifts() {
        let g = c7();
        let c = cyclic_sphere_complex(7, &[], 5).unwrap();
        assert_eq!((c.lo(), c.hi(), c.rank(5)), (5, 5, 1));
        let d = cyclic_sphere_complex(7, &[1], 0).unwrap();
        let dd = dual_complex(&d);
        assert_eq!((dd.lo(), dd.hi()), (-2, 0));
        assert_eq!(dd.differential(0).unwrap(), &d.differential(1).unwrap().transpose());
        let back = dual_complex(&dd);
        assert_eq!(back.differentials(), d.differentials());
        assert_eq!(back.lo(), d.lo());
        let p = dual_complex(&GChainComplex::point(&g, 0));
        assert_eq!((p.lo(), p.hi()), (0, 0));

        let with_point = tensor_complexes(&d, &GChainComplex::point(&g, 0)).unwrap();
        assert_eq!(with_point.differentials(), d.differentials());
        let ab = tensor_complexes(&GChainComplex::point(&g, 2), &GChainComplex::point(&g, -5)).unwrap();
        assert_eq!((ab.lo(), ab.hi()), (-3, -3));
    }

    #[test]
    fn mixed_signs_have_the_right_dimension() {
        let g = c7();
        let c = signed_sphere_complex(&g, &[(1, 2), (3, -1)], 1).unwrap();
        let h = ChainHomology::compute(c.underlying());
        let nonzero: Vec<i64> = (c.lo()..=c.hi()).filter(|&n| !h.group(n).is_trivial()).collect();
        assert_eq!(nonzero, vec![1 + 4 - 2]);
        assert_eq!(c.euler_characteristic(), -1);
    }
}
