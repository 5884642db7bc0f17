use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, the nonzero
/// diagonal entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Columns `rank..` of `V`: a lattice basis of the integer kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.v.cols()).map(|j| self.v.column(j)).collect()
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += q * row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        self.d.add_row_multiple(target, source, q);
        self.u.add_row_multiple(target, source, q);
        self.u_inv.add_col_multiple(source, target, &-q);
    }

    /// col[target] += q * col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        self.d.add_col_multiple(target, source, q);
        self.v.add_col_multiple(target, source, q);
        self.v_inv.add_row_multiple(source, target, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest-magnitude nonzero entry of the trailing submatrix; ties go to
    /// the lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form with deterministic pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = r.pivot(t) else {
                break;
            };
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let p = r.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if r.d[(i, t)].is_zero() {
                    continue;
                }
                let q = r.d[(i, t)].div_floor(&p);
                r.add_row(i, t, &-q);
                if !r.d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if r.d[(t, j)].is_zero() {
                    continue;
                }
                let q = r.d[(t, j)].div_floor(&p);
                r.add_col(j, t, &-q);
                if !r.d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !r.d[(i, j)].is_multiple_of(&p))
            });
            match bad_row {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.d[(t, t)].is_zero() {
            break;
        }
        if r.d[(t, t)].is_negative() {
            r.negate_row(t);
        }
        diagonal.push(r.d[(t, t)].clone());
    }
    SmithDecomposition {
        u: r.u,
        u_inv: r.u_inv,
        d: r.d,
        v: r.v,
        v_inv: r.v_inv,
        diagonal,
    }
}
