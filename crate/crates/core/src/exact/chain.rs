//! Integral homology of bounded chain complexes of free abelian groups.
//!
//! Pairs of basis elements joined by a differential entry `±1` are cancelled
//! first (Gaussian elimination of the complex, which is a chain homotopy
//! equivalence); whatever remains is handled with dense Smith normal forms.
//! The recorded eliminations give explicit maps in both directions, so
//! homology classes can be named by cycles of the original complex and any
//! cycle can be expressed in the chosen generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::FgAbGroup;
use super::hnf::solve_in_hnf;
use super::matrix::IntMatrix;
use super::snf::kernel_basis;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// A bounded complex `C_lo ← … ← C_hi` of free abelian groups.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[i]` is `d_{lo+i+1} : C_{lo+i+1} → C_{lo+i}`.
    pub diffs: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Parameter(format!(
                "{} modules need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::Parameter(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(Error::Precondition(format!("d∘d ≠ 0 out of degree {}", lo + i as i64 + 2)));
            }
        }
        Ok(Self { lo, dims, diffs })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.dims[i])
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    /// `d_n`, or `None` when it is a map to or from the zero group.
    pub fn differential(&self, n: i64) -> Option<&SparseMatrix> {
        let i = self.index(n)?;
        (i >= 1).then(|| &self.diffs[i - 1])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if (self.lo + i as i64).rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }
}

/// One cancelled pair: `b ∈ C_n`, `a ∈ C_{n-1}`, `d_n[a][b] = unit`.
struct Cancellation {
    n: i64,
    b: usize,
    a: usize,
    unit: BigInt,
    /// Column `b` of `d_n` at cancellation time, without `a`.
    col_b: Vec<(usize, BigInt)>,
    /// Row `a` of `d_n` at cancellation time, without `b`.
    row_a: Vec<(usize, BigInt)>,
}

struct Work {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeMap<usize, BigInt>>,
}

impl Work {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut cols = vec![BTreeMap::new(); m.cols()];
        for (i, j, v) in m.triplets() {
            rows[i].insert(j, v.clone());
            cols[j].insert(i, v.clone());
        }
        Self { rows, cols }
    }

    fn remove_row(&mut self, i: usize) {
        for j in std::mem::take(&mut self.rows[i]).into_keys() {
            self.cols[j].remove(&i);
        }
    }

    fn remove_col(&mut self, j: usize) {
        for i in std::mem::take(&mut self.cols[j]).into_keys() {
            self.rows[i].remove(&j);
        }
    }

    fn add(&mut self, i: usize, j: usize, v: &BigInt) {
        let e = self.cols[j].entry(i).or_default();
        *e += v;
        if e.is_zero() {
            self.cols[j].remove(&i);
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, e.clone());
        }
    }

    /// Unit entry of column `j` in the sparsest row; ties go to the smaller row.
    fn unit_in_column(&self, j: usize) -> Option<usize> {
        self.cols[j]
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(i, _)| (self.rows[**i].len(), **i))
            .map(|(i, _)| *i)
    }
}

struct Residual {
    basis: Vec<usize>,
    kernel: IntMatrix,
    /// Presentation on kernel coordinates.
    presentation: FgAbGroup,
    group: Arc<FgAbGroup>,
    generators: Vec<Vec<BigInt>>,
}

/// Homology of a [`ChainComplex`] in every degree, with explicit generators.
pub struct ChainHomology {
    complex: ChainComplex,
    cancellations: Vec<Cancellation>,
    residual: Vec<Residual>,
}

impl ChainHomology {
    pub fn compute(complex: ChainComplex) -> Self {
        let lo = complex.lo;
        let len = complex.dims.len();
        let dims = complex.dims.clone();
        let mut work: Vec<Work> = complex.diffs.iter().map(Work::new).collect();
        let mut alive: Vec<Vec<bool>> = complex.dims.iter().map(|&d| vec![true; d]).collect();
        let mut cancellations = Vec::new();

        for di in 0..work.len() {
            // d at index di maps C_{di+1} → C_{di}
            loop {
                let mut progress = false;
                for b in 0..dims[di + 1] {
                    if !alive[di + 1][b] {
                        continue;
                    }
                    let Some(a) = work[di].unit_in_column(b) else { continue };
                    cancellations.push(cancel(&mut work, di, a, b, lo));
                    alive[di + 1][b] = false;
                    alive[di][a] = false;
                    progress = true;
                }
                if !progress {
                    break;
                }
            }
        }

        let basis: Vec<Vec<usize>> = alive
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect())
            .collect();
        let dense = |di: usize| -> IntMatrix {
            let (rb, cb) = (&basis[di], &basis[di + 1]);
            let mut m = IntMatrix::zero(rb.len(), cb.len());
            let mut pos = vec![usize::MAX; dims[di]];
            for (k, &i) in rb.iter().enumerate() {
                pos[i] = k;
            }
            for (cj, &j) in cb.iter().enumerate() {
                for (i, v) in &work[di].cols[j] {
                    m[(pos[*i], cj)] = v.clone();
                }
            }
            m
        };

        let mut out = ChainHomology {
            complex,
            cancellations,
            residual: Vec::with_capacity(len),
        };
        for (idx, cells) in basis.iter().enumerate() {
            let size = cells.len();
            let kernel = if idx == 0 {
                IntMatrix::identity(size)
            } else {
                kernel_basis(&dense(idx - 1))
            };
            let rels: Vec<Vec<BigInt>> = if idx + 1 < len {
                dense(idx)
                    .columns()
                    .iter()
                    .map(|c| solve_in_hnf(&kernel, c).expect("boundaries are cycles"))
                    .collect()
            } else {
                Vec::new()
            };
            let presentation = FgAbGroup::from_relations(IntMatrix::from_columns(kernel.cols(), &rels));
            let n = lo + idx as i64;
            let generators = presentation
                .generators()
                .iter()
                .map(|u| out.lift(n, &basis[idx], &kernel.mul_vec(u)))
                .collect();
            out.residual.push(Residual {
                basis: basis[idx].clone(),
                kernel,
                group: Arc::new(presentation.normal_form()),
                presentation,
                generators,
            });
        }
        out
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    fn slot(&self, n: i64) -> Option<&Residual> {
        self.complex.index(n).map(|i| &self.residual[i])
    }

    /// `H_n` in normal form (trivial outside the complex).
    pub fn group(&self, n: i64) -> Arc<FgAbGroup> {
        self.slot(n).map_or_else(|| Arc::new(FgAbGroup::trivial()), |r| r.group.clone())
    }

    /// Cycles of `C_n` representing the normal generators of `H_n`.
    pub fn generators(&self, n: i64) -> &[Vec<BigInt>] {
        self.slot(n).map_or(&[], |r| &r.generators)
    }

    /// Normal coordinates of the class of the cycle `z ∈ C_n`.
    pub fn class_of(&self, n: i64, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let Some(r) = self.slot(n) else {
            return Ok(Vec::new());
        };
        if z.len() != self.complex.dim(n) {
            return Err(Error::Parameter(format!(
                "chain has length {}, C_{n} has rank {}",
                z.len(),
                self.complex.dim(n)
            )));
        }
        if let Some(d) = self.complex.differential(n) {
            if d.mul_vec(z).iter().any(|x| !x.is_zero()) {
                return Err(Error::Internal(format!("chain in degree {n} is not a cycle")));
            }
        }
        let mut x = z.to_vec();
        for c in &self.cancellations {
            if c.n == n + 1 && !x[c.a].is_zero() {
                let f = &x[c.a] * &c.unit;
                for (i, v) in &c.col_b {
                    x[*i] -= &f * v;
                }
            }
        }
        let small: Vec<BigInt> = r.basis.iter().map(|&i| x[i].clone()).collect();
        let coords =
            solve_in_hnf(&r.kernel, &small).ok_or_else(|| Error::Internal(format!("reduced chain in degree {n} is not a cycle")))?;
        Ok(r.presentation.normalize(&coords))
    }

    /// Lifts a residual chain (coordinates on `basis`) to `C_n`.
    fn lift(&self, n: i64, basis: &[usize], small: &[BigInt]) -> Vec<BigInt> {
        let mut x = vec![BigInt::zero(); self.complex.dim(n)];
        for (&i, v) in basis.iter().zip(small) {
            x[i] = v.clone();
        }
        for c in self.cancellations.iter().rev() {
            if c.n == n {
                let s: BigInt = c.row_a.iter().map(|(j, v)| v * &x[*j]).sum();
                x[c.b] = -(&c.unit * s);
            }
        }
        x
    }
}

fn cancel(work: &mut [Work], di: usize, a: usize, b: usize, lo: i64) -> Cancellation {
    let d = &mut work[di];
    let unit = d.cols[b][&a].clone();
    let col_b: Vec<(usize, BigInt)> = d.cols[b].iter().filter(|(i, _)| **i != a).map(|(i, v)| (*i, v.clone())).collect();
    let row_a: Vec<(usize, BigInt)> = d.rows[a].iter().filter(|(j, _)| **j != b).map(|(j, v)| (*j, v.clone())).collect();
    for (j, daj) in &row_a {
        let f = -(daj * &unit);
        for (i, v) in &col_b {
            d.add(*i, *j, &(&f * v));
        }
    }
    d.remove_row(a);
    d.remove_col(b);
    if di + 1 < work.len() {
        work[di + 1].remove_row(b);
    }
    if di >= 1 {
        work[di - 1].remove_col(a);
    }
    Cancellation {
        n: lo + di as i64 + 1,
        b,
        a,
        unit,
        col_b,
        row_a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{big, bigs};

    fn sp(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&IntMatrix::from_rows(rows))
    }

    /// Z ← Z[C_n] ← Z[C_n] with the fold map and 1 − t.
    fn cell_complex(n: usize) -> ChainComplex {
        let fold = SparseMatrix::from_triplets(1, n, (0..n).map(|j| (0, j, big(1))));
        let shift = SparseMatrix::from_triplets(n, n, (0..n).flat_map(|j| [(j, j, big(1)), ((j + 1) % n, j, big(-1))]));
        ChainComplex::new(0, vec![1, n, n], vec![fold, shift]).unwrap()
    }

    #[test]
    fn cyclic_cell_complex_is_a_sphere() {
        let h = ChainHomology::compute(cell_complex(7));
        assert!(h.group(0).is_trivial());
        assert!(h.group(1).is_trivial());
        assert!(h.group(2).is_isomorphic(&FgAbGroup::free(1)));
        let gen = &h.generators(2)[0];
        assert!(gen.iter().all(|x| x.abs().is_one()));
        let twice: Vec<BigInt> = gen.iter().map(|x| x * 2).collect();
        assert_eq!(h.class_of(2, &twice).unwrap(), bigs(&[2]));
    }

    #[test]
    fn torsion_and_classes() {
        // Z ←(2,4)─ Z^2 ←(2,-1)ᵀ─ Z
        let c = ChainComplex::new(0, vec![1, 2, 1], vec![sp(&[&[2, 4]]), sp(&[&[2], &[-1]])]).unwrap();
        let h = ChainHomology::compute(c);
        assert_eq!(h.group(0).torsion(), &[big(2)]);
        assert!(h.group(1).is_trivial());
        assert!(h.group(2).is_trivial());
        assert_eq!(h.class_of(0, &bigs(&[3])).unwrap(), bigs(&[1]));
        assert_eq!(h.class_of(0, &bigs(&[4])).unwrap(), bigs(&[0]));
    }

    #[test]
    fn non_cycles_are_rejected() {
        let h = ChainHomology::compute(cell_complex(3));
        assert!(h.class_of(2, &bigs(&[1, 0, 0])).is_err());
    }

    #[test]
    fn bad_complexes_are_rejected() {
        assert!(ChainComplex::new(0, vec![1, 1, 1], vec![sp(&[&[1]]), sp(&[&[1]])]).is_err());
        assert!(ChainComplex::new(0, vec![1, 2], vec![sp(&[&[1]])]).is_err());
    }
}
