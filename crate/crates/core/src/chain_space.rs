use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use crate::chain::IntChain;
use crate::complex::{FaceRef, SimplicialComplex};
use crate::cone::{hilbert_basis_for, HilbertBasisSet};
use crate::error::{Error, Result};
use crate::linalg::{
    column_hermite, lattice_quotient, smith_normal_form, ColumnHermite, IntMatrix,
    LatticeQuotient, SmithDecomposition,
};

/// The `i`-chains of a complex together with the maps acting on them.
///
/// Expensive derived data (Smith forms, the Hilbert basis, lattice bases) is
/// computed on first use and shared afterwards.
pub struct ChainSpace {
    complex: Arc<SimplicialComplex>,
    dim: i32,
    boundary: IntMatrix,
    up_boundary: IntMatrix,
    laplacian: IntMatrix,
    boundary_snf: OnceLock<SmithDecomposition>,
    laplacian_snf: OnceLock<SmithDecomposition>,
    critical: OnceLock<LatticeQuotient>,
    image: OnceLock<ColumnHermite>,
    hilbert: OnceLock<HilbertBasisSet>,
}

impl std::fmt::Debug for ChainSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChainSpace")
            .field("complex", &self.complex)
            .field("dim", &self.dim)
            .finish()
    }
}

impl ChainSpace {
    pub fn new(complex: Arc<SimplicialComplex>, dim: i32) -> Result<Self> {
        complex.check_dim(dim, 0, complex.dim())?;
        let boundary = complex.boundary_matrix(dim);
        let up_boundary = complex.boundary_matrix(dim + 1);
        let laplacian = up_boundary.mul(&up_boundary.transpose())?;
        Ok(ChainSpace {
            complex,
            dim,
            boundary,
            up_boundary,
            laplacian,
            boundary_snf: OnceLock::new(),
            laplacian_snf: OnceLock::new(),
            critical: OnceLock::new(),
            image: OnceLock::new(),
            hilbert: OnceLock::new(),
        })
    }

    pub fn of(complex: &SimplicialComplex, dim: i32) -> Result<Self> {
        Self::new(Arc::new(complex.clone()), dim)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn shared_complex(&self) -> Arc<SimplicialComplex> {
        Arc::clone(&self.complex)
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// Number of `i`-faces.
    pub fn len(&self) -> usize {
        self.laplacian.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `d_i`.
    pub fn boundary(&self) -> &IntMatrix {
        &self.boundary
    }

    /// `d_{i+1}`.
    pub fn up_boundary(&self) -> &IntMatrix {
        &self.up_boundary
    }

    pub fn laplacian(&self) -> &IntMatrix {
        &self.laplacian
    }

    pub fn face(&self, index: usize) -> FaceRef {
        self.complex
            .face_ref(self.dim, index)
            .expect("index within the face list")
    }

    pub fn faces(&self) -> &[Vec<u32>] {
        self.complex.faces(self.dim)
    }

    pub fn check_chain(&self, sigma: &IntChain) -> Result<()> {
        if sigma.dim != self.dim {
            return Err(Error::ChainDimension {
                expected: self.dim,
                found: sigma.dim,
            });
        }
        if sigma.len() != self.len() {
            return Err(Error::ChainLength {
                dim: self.dim,
                expected: self.len(),
                found: sigma.len(),
            });
        }
        Ok(())
    }

    pub fn chain(&self, coeffs: Vec<BigInt>) -> Result<IntChain> {
        self.complex.chain(self.dim, coeffs)
    }

    pub fn chain_i64(&self, coeffs: &[i64]) -> Result<IntChain> {
        self.chain(coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero_chain(&self) -> IntChain {
        self.complex.zero_chain(self.dim)
    }

    /// `sigma + L v`.
    pub fn fire(&self, sigma: &IntChain, v: &[BigInt]) -> Result<IntChain> {
        self.check_chain(sigma)?;
        let lv = self.laplacian.mul_vec(v)?;
        Ok(IntChain::new(
            self.dim,
            sigma.coeffs.iter().zip(lv).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `d_i sigma`.
    pub fn boundary_of(&self, sigma: &IntChain) -> Result<Vec<BigInt>> {
        self.check_chain(sigma)?;
        self.boundary.mul_vec(&sigma.coeffs)
    }

    pub fn boundary_snf(&self) -> &SmithDecomposition {
        self.boundary_snf
            .get_or_init(|| smith_normal_form(&self.boundary))
    }

    pub fn laplacian_snf(&self) -> &SmithDecomposition {
        self.laplacian_snf
            .get_or_init(|| smith_normal_form(&self.laplacian))
    }

    /// Lattice basis of the integer cycles `ker d_i`.
    pub fn cycle_basis(&self) -> Vec<Vec<BigInt>> {
        self.boundary_snf().kernel_basis()
    }

    /// `ker d_i / im L_i`.
    pub fn critical_quotient(&self) -> &LatticeQuotient {
        self.critical.get_or_init(|| {
            lattice_quotient(self.len(), &self.cycle_basis(), &self.laplacian.columns())
                .expect("im L lies in the cycle lattice")
        })
    }

    /// Column Hermite form of `L_i`; its basis spans `im L_i`.
    pub fn image_hermite(&self) -> &ColumnHermite {
        self.image.get_or_init(|| column_hermite(&self.laplacian))
    }

    /// Hilbert basis of the nonnegative kernel of `L_i`.
    pub fn hilbert_basis(&self) -> Result<&HilbertBasisSet> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h);
        }
        let h = hilbert_basis_for(self)?;
        let _ = self.hilbert.set(h);
        Ok(self.hilbert.get().expect("just set"))
    }
}
