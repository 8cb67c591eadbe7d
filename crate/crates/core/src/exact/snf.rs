use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `A = U·S·V` with `U`, `V` unimodular and `S` diagonal with a divisibility chain.
///
/// The inverse transforms are kept as well: `E·A·F = S` where `E = U⁻¹` and
/// `F = V⁻¹`. `E` changes coordinates of the target lattice into the diagonal
/// basis (used for cokernels), the trailing columns of `F` span the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub e: IntMatrix,
    pub f: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, d_2, …` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().take(self.rank).collect()
    }
}

struct Work {
    a: IntMatrix,
    e: IntMatrix,
    e_inv: IntMatrix,
    f: IntMatrix,
    f_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.e.swap_rows(i, j);
        self.e_inv.swap_columns(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_columns(i, j);
        self.f.swap_columns(i, j);
        self.f_inv.swap_rows(i, j);
    }

    /// row[dst] += c·row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.e.add_row_multiple(dst, src, c);
        self.e_inv.add_column_multiple(src, dst, &-c);
    }

    /// col[dst] += c·col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_column_multiple(dst, src, c);
        self.f.add_column_multiple(dst, src, c);
        self.f_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.e.negate_row(i);
        self.e_inv.negate_column(i);
    }

    /// Smallest nonzero |entry| in the trailing block, scanning columns left to
    /// right and rows top to bottom; ties keep the first one found.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for j in t..self.a.cols() {
            for i in t..self.a.rows() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let done = ax.is_one();
                    best = Some((i, j, ax));
                    if done {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        e: IntMatrix::identity(m),
        e_inv: IntMatrix::identity(m),
        f: IntMatrix::identity(n),
        f_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if w.a[(t, t)].is_negative() {
                w.negate_row(t);
            }
            let p = w.a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&p);
                w.add_row(i, t, &-q);
                dirty |= !w.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&p);
                w.add_col(j, t, &-q);
                dirty |= !w.a[(t, j)].is_zero();
            }
            if dirty {
                // a remainder is now smaller than the pivot; move the smallest
                // entry of row/column t into position
                let (mut bi, mut bj, mut best) = (t, t, p.clone());
                for j in t + 1..n {
                    let x = w.a[(t, j)].abs();
                    if !x.is_zero() && x < best {
                        (bi, bj, best) = (t, j, x);
                    }
                }
                for i in t + 1..m {
                    let x = w.a[(i, t)].abs();
                    if !x.is_zero() && x < best {
                        (bi, bj, best) = (i, t, x);
                    }
                }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // row and column clear; enforce divisibility of the remaining block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        rank += 1;
    }
    let Work { a: s, e, e_inv, f, f_inv } = w;
    SmithDecomposition {
        u: e_inv,
        s,
        v: f_inv,
        e,
        f,
        rank,
    }
}

/// Columns of a unimodular completion spanning `{x : A·x = 0}`, Hermite reduced.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols()).collect();
    let raw = snf.f.select_columns(&idx);
    super::hnf::column_hnf(&raw)
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank
}
