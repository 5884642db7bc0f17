use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Column Hermite normal form `H = A * V` with `V` unimodular.
///
/// The first `rank` columns of `H` are in lower echelon form: each has a
/// positive pivot strictly below the pivot of the previous column, and the
/// entries to the left of a pivot lie in `[0, pivot)`. The remaining columns
/// are zero, so the first `rank` columns of `V` map onto a lattice basis of the
/// column lattice of `A`.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

impl ColumnHermite {
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank).map(|j| self.h.column(j)).collect()
    }

    /// Columns of `V` whose images under `A` are the basis columns.
    pub fn basis_preimages(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank).map(|j| self.v.column(j)).collect()
    }
}

pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    let (m, n) = a.shape();
    let mut h = a.clone();
    let mut v = IntMatrix::identity(n);
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..m {
        if k == n {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for j in k..n {
                let x = &h[(i, j)];
                if !x.is_zero() {
                    let ax = x.abs();
                    if best.as_ref().map_or(true, |(_, b)| ax < *b) {
                        best = Some((j, ax));
                    }
                }
            }
            let Some((j, _)) = best else {
                break;
            };
            h.swap_cols(k, j);
            v.swap_cols(k, j);
            let p = h[(i, k)].clone();
            let mut done = true;
            for j in k + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -h[(i, j)].div_floor(&p);
                h.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            v.negate_col(k);
        }
        let p = h[(i, k)].clone();
        for j in 0..k {
            let q = -h[(i, j)].div_floor(&p);
            if !q.is_zero() {
                h.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
            }
        }
        pivot_rows.push(i);
        k += 1;
    }
    ColumnHermite {
        h,
        v,
        rank: k,
        pivot_rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_shape_and_transform() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![1, 2, 3], vec![5, 8, 5]]);
        let ch = column_hermite(&a);
        assert_eq!(a.mul(&ch.v).unwrap(), ch.h);
        assert_eq!(ch.v.determinant().unwrap().abs(), BigInt::from(1));
        assert_eq!(ch.rank, 2);
        assert_eq!(ch.pivot_rows, vec![0, 1]);
        for j in ch.rank..3 {
            assert!(ch.h.column(j).iter().all(Zero::is_zero));
        }
        assert!(ch.h[(0, 0)] > BigInt::zero());
        assert!(ch.h[(0, 1)].is_zero());
        assert!(ch.h[(1, 0)] >= BigInt::zero() && ch.h[(1, 0)] < ch.h[(1, 1)]);
    }
}
