use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Incrementally maintained row echelon basis over the rationals, kept integral
/// by cross-multiplication and content removal.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    width: usize,
    // (pivot column, row) with row[pivot] > 0 and zero before pivot
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &a - r * &b;
            }
            remove_content(&mut v);
        }
        v
    }

    pub fn is_independent(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Inserts `v`; returns false (and leaves the basis unchanged) if it is
    /// dependent on the rows already present.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if r[p].is_negative() {
            for x in r.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }
}

fn remove_content(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g > BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn rank_of_rows(rows: &[Vec<BigInt>], width: usize) -> usize {
    let mut basis = EchelonBasis::new(width);
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

pub fn rank_of_columns(columns: &[Vec<BigInt>], height: usize) -> usize {
    rank_of_rows(columns, height)
}
