//! Integral representations of finite groups and their fixed-point calculus.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{column_hnf, kernel_basis, AbHom, FgAbGroup, IntMatrix, SparseMatrix};
use crate::groups::{FiniteGroupTable, Subgroup};

/// A signed permutation: basis vector `i` maps to `sign[i]·e_{target[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    pub target: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        Self {
            target: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let target = other.target.iter().map(|&j| self.target[j]).collect();
        let sign = other.target.iter().zip(&other.sign).map(|(&j, &s)| s * self.sign[j]).collect();
        SignedPerm { target, sign }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut target = vec![0; self.target.len()];
        let mut sign = vec![1; self.target.len()];
        for (i, (&j, &s)) in self.target.iter().zip(&self.sign).enumerate() {
            target[j] = i;
            sign[j] = s;
        }
        SignedPerm { target, sign }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let n = self.target.len();
        SparseMatrix::from_triplets(
            n,
            n,
            self.target
                .iter()
                .zip(&self.sign)
                .enumerate()
                .map(|(i, (&j, &s))| (j, i, BigInt::from(s))),
        )
    }

    /// Recognizes a signed permutation matrix.
    pub fn from_sparse(m: &SparseMatrix) -> Option<SignedPerm> {
        if m.rows() != m.cols() {
            return None;
        }
        let n = m.cols();
        let mut hit = vec![false; n];
        let mut target = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        for j in 0..n {
            let col = m.column(j);
            if col.len() != 1 || hit[col[0].0] {
                return None;
            }
            let s = if col[0].1.is_one() {
                1
            } else if col[0].1 == BigInt::from(-1) {
                -1
            } else {
                return None;
            };
            hit[col[0].0] = true;
            target.push(col[0].0);
            sign.push(s);
        }
        Some(SignedPerm { target, sign })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); x.len()];
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                y[self.target[i]] = if self.sign[i] > 0 { xi.clone() } else { -xi };
            }
        }
        y
    }

    /// Kronecker product; index `(i, k)` is `i·other.len() + k`.
    pub fn kron(&self, other: &SignedPerm) -> SignedPerm {
        let m = other.target.len();
        let mut target = Vec::with_capacity(self.target.len() * m);
        let mut sign = Vec::with_capacity(self.target.len() * m);
        for (&i, &s) in self.target.iter().zip(&self.sign) {
            for (&k, &t) in other.target.iter().zip(&other.sign) {
                target.push(i * m + k);
                sign.push(s * t);
            }
        }
        SignedPerm { target, sign }
    }
}

#[derive(Clone, Debug)]
enum Action {
    Signed(Vec<SignedPerm>),
    General(Vec<SparseMatrix>),
}

/// A free abelian group of finite rank with a left action of a finite group,
/// stored as one matrix per group element.
#[derive(Clone, Debug)]
pub struct IntGModule {
    group: Arc<FiniteGroupTable>,
    rank: usize,
    action: Action,
}

impl IntGModule {
    /// Checks `ρ(e) = I` and `ρ(gh) = ρ(g)ρ(h)` for all pairs.
    pub fn new(group: Arc<FiniteGroupTable>, action: Vec<SparseMatrix>) -> Result<Self> {
        if let Some(perms) = action.iter().map(SignedPerm::from_sparse).collect::<Option<Vec<_>>>() {
            return Self::from_signed(group, perms);
        }
        if action.len() != group.order() {
            return Err(Error::Parameter(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let rank = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(Error::Parameter("action matrices must be square of equal size".into()));
        }
        if action[0] != SparseMatrix::identity(rank) {
            return Err(Error::IllDefined("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(Error::IllDefined(format!("action is not multiplicative at ({g},{h})")));
                }
            }
        }
        Ok(Self {
            group,
            rank,
            action: Action::General(action),
        })
    }

    pub fn from_signed(group: Arc<FiniteGroupTable>, perms: Vec<SignedPerm>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::Parameter(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        let rank = perms.first().map_or(0, |p| p.target.len());
        if perms.iter().any(|p| p.target.len() != rank) {
            return Err(Error::Parameter("permutations of different sizes".into()));
        }
        if perms[0] != SignedPerm::identity(rank) {
            return Err(Error::IllDefined("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if perms[g].compose(&perms[h]) != perms[group.mul(g, h)] {
                    return Err(Error::IllDefined(format!("action is not multiplicative at ({g},{h})")));
                }
            }
        }
        Ok(Self {
            group,
            rank,
            action: Action::Signed(perms),
        })
    }

    /// `Z^rank` with trivial action.
    pub fn trivial(group: Arc<FiniteGroupTable>, rank: usize) -> Self {
        let perms = vec![SignedPerm::identity(rank); group.order()];
        Self {
            group,
            rank,
            action: Action::Signed(perms),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> SparseMatrix {
        match &self.action {
            Action::Signed(p) => p[g].to_sparse(),
            Action::General(m) => m[g].clone(),
        }
    }

    pub fn signed_action(&self, g: usize) -> Option<&SignedPerm> {
        match &self.action {
            Action::Signed(p) => Some(&p[g]),
            Action::General(_) => None,
        }
    }

    pub fn act(&self, g: usize, x: &[BigInt]) -> Vec<BigInt> {
        match &self.action {
            Action::Signed(p) => p[g].apply(x),
            Action::General(m) => m[g].mul_vec(x),
        }
    }

    pub fn is_trivial_action(&self) -> bool {
        match &self.action {
            Action::Signed(p) => p.iter().all(|q| *q == SignedPerm::identity(self.rank)),
            Action::General(m) => m.iter().all(|q| *q == SparseMatrix::identity(self.rank)),
        }
    }

    /// Whether `x` is fixed by every element of `h`.
    pub fn is_fixed(&self, h: &Subgroup, x: &[BigInt]) -> bool {
        h.elements().iter().all(|&g| self.act(g, x) == x)
    }
}

/// `Z[G/H]` on the left cosets `gH`, ordered by their smallest elements.
pub fn permutation_module(group: &Arc<FiniteGroupTable>, h: &Subgroup) -> IntGModule {
    let reps = group.left_coset_reps(&group.whole(), h);
    let mut coset_of = vec![0; group.order()];
    for (c, &r) in reps.iter().enumerate() {
        for &x in h.elements() {
            coset_of[group.mul(r, x)] = c;
        }
    }
    let perms = group
        .elements()
        .map(|g| SignedPerm {
            target: reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect(),
            sign: vec![1; reps.len()],
        })
        .collect();
    IntGModule {
        group: group.clone(),
        rank: reps.len(),
        action: Action::Signed(perms),
    }
}

/// Diagonal action on `M ⊗ N`; basis index `(i, k)` is `i·rank(N) + k`.
pub fn tensor_module(m: &IntGModule, n: &IntGModule) -> Result<IntGModule> {
    if m.group != n.group && *m.group != *n.group {
        return Err(Error::Parameter("tensor product of modules over different groups".into()));
    }
    let action = match (&m.action, &n.action) {
        (Action::Signed(a), Action::Signed(b)) => Action::Signed(a.iter().zip(b).map(|(x, y)| x.kron(y)).collect()),
        _ => Action::General(m.group.elements().map(|g| m.action(g).kron(&n.action(g))).collect()),
    };
    Ok(IntGModule {
        group: m.group.clone(),
        rank: m.rank * n.rank,
        action,
    })
}

/// `g ↦ ρ(g⁻¹)ᵀ`.
pub fn dual_module(m: &IntGModule) -> IntGModule {
    let g = &m.group;
    let action = match &m.action {
        // a signed permutation matrix is orthogonal
        Action::Signed(p) => Action::Signed(g.elements().map(|x| p[x].clone()).collect()),
        Action::General(a) => Action::General(g.elements().map(|x| a[g.inv(x)].transpose()).collect()),
    };
    IntGModule {
        group: g.clone(),
        rank: m.rank,
        action,
    }
}

/// `M_1 ⊕ … ⊕ M_r`, blocks in the given order.
pub fn direct_sum_modules(group: &Arc<FiniteGroupTable>, parts: &[&IntGModule]) -> Result<IntGModule> {
    if parts.iter().any(|m| *m.group != **group) {
        return Err(Error::Parameter("direct sum of modules over different groups".into()));
    }
    let rank = parts.iter().map(|m| m.rank).sum();
    let signed: Option<Vec<&Vec<SignedPerm>>> = parts
        .iter()
        .map(|m| match &m.action {
            Action::Signed(p) => Some(p),
            Action::General(_) => None,
        })
        .collect();
    let action = match signed {
        Some(perms) => Action::Signed(
            group
                .elements()
                .map(|g| {
                    let mut target = Vec::with_capacity(rank);
                    let mut sign = Vec::with_capacity(rank);
                    let mut offset = 0;
                    for (m, p) in parts.iter().zip(&perms) {
                        target.extend(p[g].target.iter().map(|&j| j + offset));
                        sign.extend_from_slice(&p[g].sign);
                        offset += m.rank;
                    }
                    SignedPerm { target, sign }
                })
                .collect(),
        ),
        None => Action::General(
            group
                .elements()
                .map(|g| {
                    let mut t = Vec::new();
                    let mut offset = 0;
                    for m in parts {
                        t.extend(m.action(g).triplets().map(|(i, j, v)| (i + offset, j + offset, v.clone())));
                        offset += m.rank;
                    }
                    SparseMatrix::from_triplets(rank, rank, t)
                })
                .collect(),
        ),
    };
    Ok(IntGModule {
        group: group.clone(),
        rank,
        action,
    })
}

/// A basis of the sublattice `M^H`, in column Hermite form.
#[derive(Clone, Debug)]
pub struct FixedPointData {
    pub subgroup: Subgroup,
    pub basis: SparseMatrix,
    pivots: Vec<usize>,
}

impl FixedPointData {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of a fixed vector; `None` if `x ∉ M^H`.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = x.to_vec();
        let mut out = Vec::with_capacity(self.pivots.len());
        for (j, &p) in self.pivots.iter().enumerate() {
            let col = self.basis.column(j);
            let head = &col.iter().find(|(i, _)| *i == p).expect("pivot entry").1;
            let (q, r) = rest[p].div_rem(head);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, v) in col {
                    rest[*i] -= &q * v;
                }
            }
            out.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(out)
    }

    /// The vector of `M` with the given coordinates.
    pub fn vector(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.basis.mul_vec(coords)
    }

    /// Coordinates of each column of `images` (vectors of `M` known to lie in `M^H`).
    pub fn coords_matrix(&self, images: &[Vec<BigInt>]) -> Result<SparseMatrix> {
        let mut t = Vec::new();
        for (j, v) in images.iter().enumerate() {
            let c = self
                .coords(v)
                .ok_or_else(|| Error::Internal("vector is not fixed by the subgroup".into()))?;
            t.extend(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, j, x)));
        }
        Ok(SparseMatrix::from_triplets(self.rank(), images.len(), t))
    }
}

/// `M^H` with a Hermite-reduced, saturated basis.
pub fn fixed_point_basis(m: &IntGModule, h: &Subgroup) -> FixedPointData {
    let n = m.rank;
    match &m.action {
        Action::Signed(perms) => {
            // signed orbit sums; an orbit whose stabilizer acts by -1 contributes nothing
            let mut seen = vec![false; n];
            let mut cols: Vec<Vec<(usize, BigInt)>> = Vec::new();
            let mut pivots = Vec::new();
            for i0 in 0..n {
                if seen[i0] {
                    continue;
                }
                let mut sign_of: Vec<(usize, i8)> = Vec::new();
                let mut ok = true;
                for &g in h.elements() {
                    let (j, s) = (perms[g].target[i0], perms[g].sign[i0]);
                    match sign_of.iter().find(|(k, _)| *k == j) {
                        Some((_, t)) => ok &= *t == s,
                        None => sign_of.push((j, s)),
                    }
                }
                for (j, _) in &sign_of {
                    seen[*j] = true;
                }
                if ok {
                    sign_of.sort();
                    cols.push(sign_of.into_iter().map(|(j, s)| (j, BigInt::from(s))).collect());
                    pivots.push(i0);
                }
            }
            let basis = SparseMatrix::from_triplets(
                n,
                cols.len(),
                cols.into_iter()
                    .enumerate()
                    .flat_map(|(j, c)| c.into_iter().map(move |(i, v)| (i, j, v))),
            );
            FixedPointData {
                subgroup: h.clone(),
                basis,
                pivots,
            }
        }
        Action::General(_) => {
            let gens = small_generating_set(&m.group, h);
            let mut stacked = IntMatrix::zero(0, n);
            for g in gens {
                let a = m.action(g).to_dense().sub(&IntMatrix::identity(n));
                stacked = stacked.vconcat(&a);
            }
            let k = column_hnf(&kernel_basis(&stacked));
            let pivots = crate::exact::hnf::pivots(&k);
            FixedPointData {
                subgroup: h.clone(),
                basis: SparseMatrix::from_dense(&k),
                pivots,
            }
        }
    }
}

fn small_generating_set(group: &FiniteGroupTable, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = group.trivial_subgroup();
    for &x in h.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = group.generated(&gens);
        }
    }
    gens
}

fn check_le(k: &Subgroup, h: &Subgroup) -> Result<()> {
    if k.is_subset(h) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{k:?} is not contained in {h:?}")))
    }
}

/// Sparse matrix of `Tr^H_K : M^K → M^H`, `x ↦ Σ_{hK ∈ H/K} ρ(h)x`.
pub fn transfer_sparse(m: &IntGModule, fk: &FixedPointData, fh: &FixedPointData) -> Result<SparseMatrix> {
    check_le(&fk.subgroup, &fh.subgroup)?;
    let reps = m.group.left_coset_reps(&fh.subgroup, &fk.subgroup);
    let images: Vec<Vec<BigInt>> = (0..fk.rank())
        .map(|j| {
            let x: Vec<BigInt> = dense_column(&fk.basis, j);
            let mut acc = vec![BigInt::zero(); m.rank];
            for &h in &reps {
                for (a, b) in acc.iter_mut().zip(m.act(h, &x)) {
                    *a += b;
                }
            }
            acc
        })
        .collect();
    fh.coords_matrix(&images)
}

/// Sparse matrix of the inclusion `M^H → M^K`.
pub fn restriction_sparse(fh: &FixedPointData, fk: &FixedPointData) -> Result<SparseMatrix> {
    check_le(&fk.subgroup, &fh.subgroup)?;
    let images: Vec<Vec<BigInt>> = (0..fh.rank()).map(|j| dense_column(&fh.basis, j)).collect();
    fk.coords_matrix(&images)
}

/// Sparse matrix of `ρ(g) : M^H → M^{gHg⁻¹}`.
pub fn conjugation_sparse(m: &IntGModule, fh: &FixedPointData, g: usize, fgh: &FixedPointData) -> Result<SparseMatrix> {
    if m.group.conjugate(g, &fh.subgroup) != fgh.subgroup {
        return Err(Error::Parameter("target is not the conjugate subgroup".into()));
    }
    let images: Vec<Vec<BigInt>> = (0..fh.rank()).map(|j| m.act(g, &dense_column(&fh.basis, j))).collect();
    fgh.coords_matrix(&images)
}

fn dense_column(m: &SparseMatrix, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m.rows()];
    for (i, x) in m.column(j) {
        v[*i] = x.clone();
    }
    v
}

fn free_hom(src: usize, dst: usize, m: &SparseMatrix) -> AbHom {
    AbHom::new(Arc::new(FgAbGroup::free(src)), Arc::new(FgAbGroup::free(dst)), m.to_dense())
        .expect("maps between free groups are well defined")
}

/// `Tr^H_K` between the fixed lattices `M^K → M^H`.
pub fn transfer_matrix(m: &IntGModule, k: &Subgroup, h: &Subgroup) -> Result<AbHom> {
    check_le(k, h)?;
    let (fk, fh) = (fixed_point_basis(m, k), fixed_point_basis(m, h));
    Ok(free_hom(fk.rank(), fh.rank(), &transfer_sparse(m, &fk, &fh)?))
}

/// `R^H_K`, the inclusion `M^H → M^K`.
pub fn restriction_matrix(m: &IntGModule, h: &Subgroup, k: &Subgroup) -> Result<AbHom> {
    check_le(k, h)?;
    let (fh, fk) = (fixed_point_basis(m, h), fixed_point_basis(m, k));
    Ok(free_hom(fh.rank(), fk.rank(), &restriction_sparse(&fh, &fk)?))
}

/// `c_g : M^H → M^{gHg⁻¹}`.
pub fn conjugation_matrix(m: &IntGModule, h: &Subgroup, g: usize) -> Result<AbHom> {
    let gh = m.group.conjugate(g, h);
    let (fh, fgh) = (fixed_point_basis(m, h), fixed_point_basis(m, &gh));
    Ok(free_hom(fh.rank(), fgh.rank(), &conjugation_sparse(m, &fh, g, &fgh)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, bigs};
    use crate::groups::{GroupFamily, SubgroupLattice};

    fn group(s: &str) -> Arc<FiniteGroupTable> {
        Arc::new(s.parse::<GroupFamily>().unwrap().build().unwrap())
    }

    #[test]
    fn permutation_modules() {
        let g = group("cyclic:7");
        let whole = g.whole();
        let triv = permutation_module(&g, &whole);
        assert_eq!(triv.rank(), 1);
        assert!(triv.is_trivial_action());
        let reg = permutation_module(&g, &g.trivial_subgroup());
        assert_eq!(reg.rank(), 7);
        assert_eq!(reg.signed_action(1).unwrap().target, vec![1, 2, 3, 4, 5, 6, 0]);
        let pq = group("pq-nonab:3,7,2");
        let cq = SubgroupLattice::new(&pq).rep(2).clone();
        assert_eq!(permutation_module(&pq, &cq).rank(), 3);
    }

    #[test]
    fn fixed_points() {
        let g = group("cyclic:7");
        let reg = permutation_module(&g, &g.trivial_subgroup());
        let f = fixed_point_basis(&reg, &g.whole());
        assert_eq!(f.basis.to_dense(), IntMatrix::from_rows(&[[1]; 7]));
        let sq = tensor_module(&reg, &reg).unwrap();
        assert_eq!(sq.rank(), 49);
        let f2 = fixed_point_basis(&sq, &g.whole());
        assert_eq!(f2.rank(), 7);
        // Σ_i t_0^i t_1^{i+j} has its pivot at (0, j)
        assert_eq!(f2.pivots(), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn general_and_signed_fixed_points_agree() {
        let g = group("cyclic:3");
        let reg = permutation_module(&g, &g.trivial_subgroup());
        let general = IntGModule {
            group: g.clone(),
            rank: 3,
            action: Action::General(g.elements().map(|x| reg.action(x)).collect()),
        };
        let a = fixed_point_basis(&reg, &g.whole());
        let b = fixed_point_basis(&general, &g.whole());
        assert_eq!(a.basis, b.basis);
    }

    #[test]
    fn transfer_and_restriction() {
        let g = group("cyclic:7");
        let (e, whole) = (g.trivial_subgroup(), g.whole());
        let triv = IntGModule::trivial(g.clone(), 1);
        let tr = transfer_matrix(&triv, &e, &whole).unwrap();
        assert_eq!(tr.matrix(), &IntMatrix::from_rows(&[[7]]));
        let reg = permutation_module(&g, &e);
        let tr = transfer_matrix(&reg, &e, &whole).unwrap();
        assert_eq!(tr.matrix(), &IntMatrix::from_rows(&[[1; 7]]));
        let res = restriction_matrix(&reg, &whole, &e).unwrap();
        assert_eq!(tr.compose(&res).unwrap().matrix(), &IntMatrix::from_rows(&[[7]]));
        assert!(transfer_matrix(&reg, &whole, &e).is_err());
        assert!(restriction_matrix(&reg, &whole, &whole).unwrap().is_identity());
    }

    #[test]
    fn conjugation() {
        let g = group("pq-nonab:3,7,2");
        let l = SubgroupLattice::new(&g);
        let cq = l.rep(2).clone();
        let m = permutation_module(&g, &g.trivial_subgroup());
        let a = g.generator("a").unwrap();
        let c = conjugation_matrix(&m, &cq, a).unwrap();
        assert_eq!(c.source().free_rank(), 3);
        assert!(crate::exact::hom_is_isomorphism(&c));
        assert!(conjugation_matrix(&m, &cq, 0).unwrap().is_identity());
        let b = g.generator("b").unwrap();
        assert!(conjugation_matrix(&m, &cq, b).unwrap().is_identity());
    }

    #[test]
    fn duals() {
        let g = group("cyclic:5");
        let reg = permutation_module(&g, &g.trivial_subgroup());
        let d = dual_module(&reg);
        for x in g.elements() {
            assert_eq!(d.action(x), reg.action(g.inv(x)).transpose());
        }
        let dd = dual_module(&d);
        for x in g.elements() {
            assert_eq!(dd.action(x), reg.action(x));
        }
        let v = bigs(&[1, 0, 0, 0, 0]);
        assert_eq!(reg.act(1, &v)[1], big(1));
    }
}
