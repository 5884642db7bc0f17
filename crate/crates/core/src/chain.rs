use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::bigjson;

/// An integer vector over the `dim`-faces of a complex, in lex face order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntChain {
    pub dim: i32,
    pub coeffs: Vec<BigInt>,
}

impl IntChain {
    pub fn new(dim: i32, coeffs: Vec<BigInt>) -> Self {
        IntChain { dim, coeffs }
    }

    pub fn zero(dim: i32, len: usize) -> Self {
        IntChain::new(dim, vec![BigInt::zero(); len])
    }

    pub fn unit(dim: i32, len: usize, index: usize) -> Self {
        let mut c = IntChain::zero(dim, len);
        c.coeffs[index] = BigInt::from(1);
        c
    }

    pub fn from_i64(dim: i32, coeffs: &[i64]) -> Self {
        IntChain::new(dim, coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// All coefficients nonnegative.
    pub fn is_effective(&self) -> bool {
        !self.coeffs.iter().any(Signed::is_negative)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| !self.coeffs[j].is_zero()).collect()
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        crate::linalg::dot(&self.coeffs, other)
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scaled(&self, k: &BigInt) -> IntChain {
        IntChain::new(self.dim, self.coeffs.iter().map(|x| x * k).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &IntChain) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    pub fn to_json(&self) -> Value {
        json!({ "dim": self.dim, "coeffs": bigjson::int_vec_to_json(&self.coeffs) })
    }
}

impl Add for &IntChain {
    type Output = IntChain;
    fn add(self, rhs: &IntChain) -> IntChain {
        debug_assert_eq!(self.len(), rhs.len());
        IntChain::new(
            self.dim,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &IntChain {
    type Output = IntChain;
    fn sub(self, rhs: &IntChain) -> IntChain {
        debug_assert_eq!(self.len(), rhs.len());
        IntChain::new(
            self.dim,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &IntChain {
    type Output = IntChain;
    fn neg(self) -> IntChain {
        IntChain::new(self.dim, self.coeffs.iter().map(|a| -a).collect())
    }
}
