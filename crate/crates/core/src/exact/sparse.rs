use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;

/// Column-compressed integer matrix. Each column holds `(row, value)` pairs
/// sorted by row with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for (j, c) in m.columns.iter_mut().enumerate() {
            c.push((j, BigInt::from(1)));
        }
        m
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            *acc[j].entry(i).or_default() += v;
        }
        let columns = acc
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { rows, cols, columns }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut y = vec![BigInt::zero(); self.rows];
        for (c, xj) in self.columns.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (i, v) in c {
                y[*i] += v * xj;
            }
        }
        y
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let columns = rhs
            .columns
            .iter()
            .map(|rc| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, b) in rc {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn scale(&self, c: &BigInt) -> SparseMatrix {
        SparseMatrix::from_triplets(self.rows, self.cols, self.triplets().map(|(i, j, v)| (i, j, v * c)))
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "dimension mismatch in difference");
        let t = self
            .triplets()
            .map(|(i, j, v)| (i, j, v.clone()))
            .chain(rhs.triplets().map(|(i, j, v)| (i, j, -v)));
        SparseMatrix::from_triplets(self.rows, self.cols, t)
    }

    /// Kronecker product `self ⊗ rhs`; row `(i, k)` is `i·rhs.rows + k`.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut t = Vec::with_capacity(self.nnz() * rhs.nnz());
        for (i, j, a) in self.triplets() {
            for (k, l, b) in rhs.triplets() {
                t.push((i * rhs.rows + k, j * rhs.cols + l, a * b));
            }
        }
        SparseMatrix::from_triplets(rows, cols, t)
    }

    /// The submatrix with rows `row_idx` and columns `col_idx`, in the given order.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in row_idx.iter().enumerate() {
            pos[old] = new;
        }
        let t = col_idx.iter().enumerate().flat_map(|(nj, &j)| {
            let pos = &pos;
            self.columns[j]
                .iter()
                .filter(move |(i, _)| pos[*i] != usize::MAX)
                .map(move |(i, v)| (pos[*i], nj, v.clone()))
        });
        SparseMatrix::from_triplets(row_idx.len(), col_idx.len(), t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_roundtrip_and_product() {
        let a = IntMatrix::from_rows(&[[1, 0, 2], [0, -3, 0]]);
        let b = IntMatrix::from_rows(&[[1, 1], [0, 2], [4, 0]]);
        let (sa, sb) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b));
        assert_eq!(sa.to_dense(), a);
        assert_eq!(sa.mul(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        assert_eq!(sa.nnz(), 3);
    }

    #[test]
    fn kronecker_indices() {
        let a = SparseMatrix::from_dense(&IntMatrix::from_rows(&[[1, 2]]));
        let b = SparseMatrix::from_dense(&IntMatrix::from_rows(&[[0], [3]]));
        assert_eq!(a.kron(&b).to_dense(), IntMatrix::from_rows(&[[0, 0], [3, 6]]));
    }
}
