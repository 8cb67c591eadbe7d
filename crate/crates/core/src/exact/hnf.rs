//! Column-style Hermite normal form of integer lattices.
//!
//! A lattice basis is in column Hermite form when the topmost nonzero rows
//! ("pivots") of the columns strictly increase, pivots are positive, and every
//! entry of an earlier column in a later pivot row lies in `[0, pivot)`.
//! Every lattice has exactly one such basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

fn axpy(dst: &mut [BigInt], c: &BigInt, src: &[BigInt]) {
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += c * s;
        }
    }
}

/// Hermite basis of the lattice spanned by the columns of `m` (zero columns dropped).
pub fn column_hnf(m: &IntMatrix) -> IntMatrix {
    let rows = m.rows();
    let basis = hnf_of_vectors(rows, m.columns());
    IntMatrix::from_columns(rows, &basis)
}

/// Hermite basis of the lattice spanned by `vectors`, each of length `dim`.
pub fn hnf_of_vectors(dim: usize, vectors: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut active: Vec<Vec<BigInt>> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    let mut done: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for r in 0..dim {
        loop {
            let mut nz: Vec<usize> = (0..active.len()).filter(|&k| !active[k][r].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            nz.sort_by(|&x, &y| active[x][r].abs().cmp(&active[y][r].abs()).then(x.cmp(&y)));
            let piv = nz[0];
            if nz.len() == 1 {
                let mut col = active.remove(piv);
                if col[r].is_negative() {
                    col.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                let p = col[r].clone();
                for (_, prev) in done.iter_mut() {
                    let q = prev[r].div_floor(&p);
                    axpy(prev, &-q, &col);
                }
                done.push((r, col));
                break;
            }
            let pcol = active[piv].clone();
            let p = pcol[r].clone();
            for &k in &nz[1..] {
                let q = active[k][r].div_floor(&p);
                axpy(&mut active[k], &-q, &pcol);
            }
            active.retain(|v| v.iter().any(|x| !x.is_zero()));
        }
    }
    done.into_iter().map(|(_, v)| v).collect()
}

/// Pivot rows of a column-Hermite basis.
pub fn pivots(h: &IntMatrix) -> Vec<usize> {
    (0..h.cols())
        .map(|j| (0..h.rows()).find(|&i| !h[(i, j)].is_zero()).expect("zero column in Hermite basis"))
        .collect()
}

/// Coordinates `c` with `h·c = v`, or `None` if `v` is outside the lattice.
pub fn solve_in_hnf(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let piv = pivots(h);
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(piv.len());
    for (j, &p) in piv.iter().enumerate() {
        let d = &h[(p, j)];
        let (q, r) = rest[p].div_rem(d);
        if !r.is_zero() {
            return None;
        }
        let col = h.column(j);
        axpy(&mut rest, &-&q, &col);
        coeffs.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Canonical representative of `v` modulo the lattice with Hermite basis `h`.
pub fn reduce_mod_lattice(h: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let piv = pivots(h);
    let mut out = v.to_vec();
    for (j, &p) in piv.iter().enumerate() {
        let q = out[p].div_floor(&h[(p, j)]);
        let col = h.column(j);
        axpy(&mut out, &-q, &col);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::bigs;

    #[test]
    fn hermite_is_canonical() {
        let a = IntMatrix::from_rows(&[[2, 4, 6], [1, 3, 5], [0, 0, 0]]);
        let b = IntMatrix::from_rows(&[[6, 2], [4, 1], [0, 0]]);
        // (6,4) = (2,1) + (4,3) and (4,3) = (6,4) - (2,1)
        assert_eq!(column_hnf(&a), column_hnf(&b));
    }

    #[test]
    fn reduction_and_solving() {
        let h = column_hnf(&IntMatrix::from_rows(&[[7]]));
        assert_eq!(reduce_mod_lattice(&h, &bigs(&[-3])), bigs(&[4]));
        assert_eq!(solve_in_hnf(&h, &bigs(&[14])), Some(bigs(&[2])));
        assert_eq!(solve_in_hnf(&h, &bigs(&[3])), None);
    }
}
