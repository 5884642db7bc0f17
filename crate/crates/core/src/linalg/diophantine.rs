use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

/// Why `A x = b` has no integer solution, read off the Smith form
/// `U A V = D`: with `c = U b`, either some `c_j` is not divisible by `d_j`,
/// or `c_j != 0` on a zero row of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    NotDivisible {
        index: usize,
        value: BigInt,
        divisor: BigInt,
    },
    InconsistentRow {
        index: usize,
        value: BigInt,
    },
}

#[derive(Clone, Debug)]
pub enum DiophantineOutcome {
    Solvable {
        particular: Vec<BigInt>,
        kernel_basis: Vec<Vec<BigInt>>,
    },
    Unsolvable(Infeasibility),
}

impl DiophantineOutcome {
    pub fn particular(&self) -> Option<&[BigInt]> {
        match self {
            DiophantineOutcome::Solvable { particular, .. } => Some(particular),
            DiophantineOutcome::Unsolvable(_) => None,
        }
    }

    pub fn into_particular(self) -> Option<Vec<BigInt>> {
        match self {
            DiophantineOutcome::Solvable { particular, .. } => Some(particular),
            DiophantineOutcome::Unsolvable(_) => None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, DiophantineOutcome::Solvable { .. })
    }
}

/// Solves `A x = b` over the integers.
pub fn solve_diophantine(a: &IntMatrix, b: &[BigInt]) -> Result<DiophantineOutcome> {
    if a.rows() != b.len() {
        return Err(Error::Shape(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    solve_with_smith(&smith_normal_form(a), b)
}

/// Same as [`solve_diophantine`], reusing a precomputed Smith form of `A`.
pub fn solve_with_smith(snf: &SmithDecomposition, b: &[BigInt]) -> Result<DiophantineOutcome> {
    if snf.u.cols() != b.len() {
        return Err(Error::Shape(format!(
            "Smith form with {} rows and right-hand side of length {}",
            snf.u.cols(),
            b.len()
        )));
    }
    let c = snf.u.mul_vec(b)?;
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for (j, d) in snf.diagonal.iter().enumerate() {
        let (q, rem) = c[j].div_rem(d);
        if !rem.is_zero() {
            return Ok(DiophantineOutcome::Unsolvable(Infeasibility::NotDivisible {
                index: j,
                value: c[j].clone(),
                divisor: d.clone(),
            }));
        }
        y[j] = q;
    }
    if let Some(j) = (r..c.len()).find(|&j| !c[j].is_zero()) {
        return Ok(DiophantineOutcome::Unsolvable(Infeasibility::InconsistentRow {
            index: j,
            value: c[j].clone(),
        }));
    }
    Ok(DiophantineOutcome::Solvable {
        particular: snf.v.mul_vec(&y)?,
        kernel_basis: snf.kernel_basis(),
    })
}
