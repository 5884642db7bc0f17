//! The nonnegative kernel of a Laplacian, its Hilbert basis, and degrees.

pub mod hilbert;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::bigjson;
use crate::chain::IntChain;
use crate::chain_space::ChainSpace;
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_diophantine, DiophantineOutcome, IntMatrix};
use crate::search::LatticeSearch;

pub use hilbert::{is_extreme_ray, nonneg_kernel_hilbert_basis, sort_canonical};

/// Hilbert basis of the monoid of nonnegative integer kernel elements of
/// `L_i`, ordered by coefficient sum and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasisSet {
    pub dim: i32,
    pub elements: Vec<IntChain>,
    /// Whether each element spans an extreme ray of the real cone.
    pub ray_flags: Vec<bool>,
}

impl HilbertBasisSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.elements.iter().map(|h| h.coeffs.clone()).collect()
    }

    pub fn matrix(&self, width: usize) -> IntMatrix {
        if self.elements.is_empty() {
            return IntMatrix::zeros(0, width);
        }
        IntMatrix::from_rows(&self.rows())
    }

    /// Every element has entries in `{0, 1}`.
    pub fn is_zero_one(&self) -> bool {
        self.elements
            .iter()
            .all(|h| h.coeffs.iter().all(|x| x.is_zero() || x.is_one()))
    }

    pub fn count_non_zero_one(&self) -> usize {
        self.elements
            .iter()
            .filter(|h| h.coeffs.iter().any(|x| !x.is_zero() && !x.is_one()))
            .count()
    }

    /// Dot products with every element, or only with the extreme rays.
    pub fn degree(&self, sigma: &IntChain, rays_only: bool) -> DegreeVector {
        let values = self
            .elements
            .iter()
            .zip(&self.ray_flags)
            .filter(|(_, &ray)| ray || !rays_only)
            .map(|(h, _)| dot(&sigma.coeffs, &h.coeffs))
            .collect();
        DegreeVector { values }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "elements": bigjson::int_rows_to_json(&self.rows()),
            "ray_flags": self.ray_flags,
        })
    }
}

/// The vector of dot products of a chain with the Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector {
    pub values: Vec<BigInt>,
}

impl DegreeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        DegreeVector {
            values: v.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn zero(len: usize) -> Self {
        DegreeVector {
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.values.iter().any(Signed::is_negative)
    }

    /// Index of the first negative coordinate.
    pub fn first_negative(&self) -> Option<usize> {
        self.values.iter().position(Signed::is_negative)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DegreeVector) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn to_json(&self) -> Value {
        bigjson::int_vec_to_json(&self.values)
    }
}

pub(crate) fn hilbert_basis_for(space: &ChainSpace) -> Result<HilbertBasisSet> {
    // L x = 0 exactly when d_{i+1}^t x = 0
    let eqs = space.up_boundary().transpose();
    let rows = nonneg_kernel_hilbert_basis(&eqs)?;
    let ray_flags = rows.iter().map(|h| is_extreme_ray(&eqs, h)).collect();
    Ok(HilbertBasisSet {
        dim: space.dim(),
        elements: rows
            .into_iter()
            .map(|r| IntChain::new(space.dim(), r))
            .collect(),
        ray_flags,
    })
}

pub fn hilbert_basis(space: &ChainSpace) -> Result<&HilbertBasisSet> {
    space.hilbert_basis()
}

pub fn degree(space: &ChainSpace, sigma: &IntChain, rays_only: bool) -> Result<DegreeVector> {
    space.check_chain(sigma)?;
    Ok(space.hilbert_basis()?.degree(sigma, rays_only))
}

/// A strictly positive element of `ker L_i`.
///
/// Starting from zero, the lex-first face `v_0 ... v_i` whose coefficient is
/// not positive is raised to exactly one by adding a multiple of the
/// coboundary of `v_1 ... v_i`. That coboundary lies in the kernel, is `+1` at
/// the chosen face and at every lex-earlier face it touches, so the position
/// of the first nonpositive face strictly increases.
pub fn positive_kernel_element(space: &ChainSpace) -> IntChain {
    let complex = space.complex();
    let i = space.dim();
    let n = space.len();
    let mut tau = vec![BigInt::zero(); n];
    let mut start = 0;
    while let Some(m) = (start..n).find(|&j| !tau[j].is_positive()) {
        let face = &space.faces()[m];
        let lift = BigInt::one() - &tau[m];
        let ridge = &face[1..];
        let star: Vec<(usize, i32)> = if i == 0 {
            (0..n).map(|j| (j, 1)).collect()
        } else {
            coboundary_of(complex, i, ridge)
        };
        for (j, s) in star {
            if s > 0 {
                tau[j] += &lift;
            } else {
                tau[j] -= &lift;
            }
        }
        start = m + 1;
    }
    IntChain::new(i, tau)
}

/// `(index, sign)` for each `i`-face containing the `(i-1)`-face `ridge`.
fn coboundary_of(
    complex: &crate::complex::SimplicialComplex,
    i: i32,
    ridge: &[u32],
) -> Vec<(usize, i32)> {
    let mut out = Vec::new();
    for w in complex.vertices() {
        if ridge.contains(&w) {
            continue;
        }
        let pos = ridge.partition_point(|&v| v < w);
        let mut f = ridge.to_vec();
        f.insert(pos, w);
        if let Some(idx) = complex.face_index(&f) {
            debug_assert_eq!(f.len() as i32, i + 1);
            out.push((idx, if pos % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizeMode {
    /// Any integer chain.
    Any,
    /// A chain with nonnegative coefficients.
    Effective,
}

/// A chain of degree `delta`, if one exists.
pub fn realizable_degree(
    space: &ChainSpace,
    delta: &DegreeVector,
    mode: RealizeMode,
) -> Result<Option<IntChain>> {
    let basis = space.hilbert_basis()?;
    if delta.len() != basis.len() {
        return Err(Error::DegreeLength {
            expected: basis.len(),
            found: delta.len(),
        });
    }
    let h = basis.matrix(space.len());
    let (particular, kernel) = match solve_diophantine(&h, &delta.values)? {
        DiophantineOutcome::Solvable {
            particular,
            kernel_basis,
        } => (particular, kernel_basis),
        DiophantineOutcome::Unsolvable(_) => return Ok(None),
    };
    match mode {
        RealizeMode::Any => Ok(Some(IntChain::new(space.dim(), particular))),
        RealizeMode::Effective => {
            // the kernel of the degree map is the saturation of im L, which
            // meets the orthant only in zero, so the search region is bounded
            let mut search = LatticeSearch::new(&particular, &kernel);
            Ok(search.run()?.map(|z| {
                IntChain::new(
                    space.dim(),
                    crate::search::apply(&particular, &kernel, &z),
                )
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn space(facets: &[&[u32]], i: i32) -> ChainSpace {
        ChainSpace::of(&SimplicialComplex::from_facets(facets).unwrap(), i).unwrap()
    }

    #[test]
    fn positive_kernel_elements() {
        let s = space(&[&[1, 2, 3]], 1);
        let t = positive_kernel_element(&s);
        assert_eq!(t, IntChain::from_i64(1, &[1, 2, 1]));
        let d = space(&[&[1, 2, 3], &[2, 3, 4]], 1);
        let t = positive_kernel_element(&d);
        assert_eq!(t, IntChain::from_i64(1, &[1, 2, 1, 2, 1]));
        assert!(d.laplacian().mul_vec(&t.coeffs).unwrap().iter().all(Zero::is_zero));
        let top = space(&[&[1, 2, 3]], 2);
        assert_eq!(positive_kernel_element(&top), IntChain::from_i64(2, &[1]));
    }

    #[test]
    fn simplex_hilbert_basis_and_degree() {
        let s = space(&[&[1, 2, 3, 4]], 2);
        let hb = s.hilbert_basis().unwrap();
        assert_eq!(
            hb.rows(),
            vec![
                crate::linalg::big_vec(&[0, 0, 1, 1]),
                crate::linalg::big_vec(&[0, 1, 1, 0]),
                crate::linalg::big_vec(&[1, 0, 0, 1]),
                crate::linalg::big_vec(&[1, 1, 0, 0]),
            ]
        );
        let none = realizable_degree(&s, &DegreeVector::from_i64(&[0, 0, 0, 1]), RealizeMode::Any)
            .unwrap();
        assert!(none.is_none());
        let unit = realizable_degree(&s, &DegreeVector::from_i64(&[0, 0, 1, 1]), RealizeMode::Effective)
            .unwrap()
            .unwrap();
        assert_eq!(unit, IntChain::from_i64(2, &[1, 0, 0, 0]));
    }
}
