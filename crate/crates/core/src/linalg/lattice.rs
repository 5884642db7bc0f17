use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k` with
/// `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        AbelianGroupStructure {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (ones are dropped) into
    /// invariant-factor form.
    pub fn from_cyclic(free_rank: usize, orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            diag[(i, i)] = o.abs();
        }
        let snf = smith_normal_form(&diag);
        let zeros = orders.iter().filter(|o| o.is_zero()).count();
        AbelianGroupStructure {
            free_rank: free_rank + zeros,
            torsion: snf
                .diagonal
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroupStructure) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The quotient `(Z-span K) / (Z-span M)` together with the data needed to
/// name classes and lift torsion elements back to ambient coordinates.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    ambient_dim: usize,
    basis: IntMatrix,
    basis_snf: SmithDecomposition,
    coords: IntMatrix,
    coords_snf: SmithDecomposition,
    structure: AbelianGroupStructure,
    // index into the coordinate Smith diagonal of the first nontrivial factor
    first_torsion: usize,
}

impl LatticeQuotient {
    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Coordinates of `x` with respect to the basis of `K`.
    pub fn basis_coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        coordinates_in(&self.basis_snf, self.basis.cols(), x)
    }

    /// Ambient lifts of the generators of the cyclic torsion factors, in the
    /// order of `structure().torsion`.
    pub fn torsion_generators(&self) -> Vec<Vec<BigInt>> {
        let u_inv = &self.coords_snf.u_inv;
        (self.first_torsion..self.coords_snf.rank())
            .map(|j| {
                let c = u_inv.column(j);
                self.basis.mul_vec(&c).expect("shape")
            })
            .collect()
    }

    /// Components of the class of `x` (an element of `K`): torsion components
    /// reduced into `[0, t_j)` followed by the free components.
    pub fn class_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.basis_coordinates(x)?;
        let y = self.coords_snf.u.mul_vec(&c)?;
        let r = self.coords_snf.rank();
        let mut out = Vec::new();
        for j in self.first_torsion..r {
            out.push(y[j].mod_floor(&self.coords_snf.diagonal[j]));
        }
        out.extend(y[r..].iter().cloned());
        Ok(out)
    }

    /// Whether `x` (an element of `K`) lies in the span of `M`.
    pub fn is_zero_class(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.class_of(x)?.iter().all(Zero::is_zero))
    }

    /// One representative per torsion element, `sum c_j g_j` with
    /// `0 <= c_j < t_j`, in lexicographic order of the coefficient tuple.
    pub fn torsion_representatives(&self, limit: u128) -> Result<Vec<Vec<BigInt>>> {
        let order = self.structure.torsion_order();
        if order.to_u128().map_or(true, |o| o > limit) {
            return Err(Error::EnumerationLimit {
                what: "torsion representatives",
                limit,
            });
        }
        let gens = self.torsion_generators();
        let orders = &self.structure.torsion;
        let mut reps = Vec::new();
        let mut coeffs = vec![BigInt::zero(); gens.len()];
        loop {
            let mut v = vec![BigInt::zero(); self.ambient_dim];
            for (c, g) in coeffs.iter().zip(&gens) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(g) {
                    *x += c * y;
                }
            }
            reps.push(v);
            // odometer, last coordinate fastest
            let mut k = gens.len();
            loop {
                if k == 0 {
                    return Ok(reps);
                }
                k -= 1;
                coeffs[k] += 1;
                if coeffs[k] < orders[k] {
                    break;
                }
                coeffs[k] = BigInt::zero();
            }
        }
    }
}

fn coordinates_in(snf: &SmithDecomposition, k: usize, x: &[BigInt]) -> Result<Vec<BigInt>> {
    let c = snf.u.mul_vec(x)?;
    let mut y = vec![BigInt::zero(); k];
    for (j, d) in snf.diagonal.iter().enumerate() {
        let (q, r) = c[j].div_rem(d);
        if !r.is_zero() {
            return Err(Error::NotInLattice);
        }
        y[j] = q;
    }
    if c[snf.rank()..].iter().any(|v| !v.is_zero()) {
        return Err(Error::NotInLattice);
    }
    snf.v.mul_vec(&y)
}

/// Structure of `(Z-span K) / (Z-span M)`. `K` must be linearly independent
/// and every generator of `M` must lie in the lattice spanned by `K`.
pub fn lattice_quotient(
    ambient_dim: usize,
    k_basis: &[Vec<BigInt>],
    m_generators: &[Vec<BigInt>],
) -> Result<LatticeQuotient> {
    for v in k_basis.iter().chain(m_generators) {
        if v.len() != ambient_dim {
            return Err(Error::Shape(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
    }
    let basis = IntMatrix::from_columns(ambient_dim, k_basis);
    let basis_snf = smith_normal_form(&basis);
    if basis_snf.rank() != k_basis.len() {
        return Err(Error::Shape("lattice basis is not linearly independent".into()));
    }
    let k = k_basis.len();
    let coord_cols = m_generators
        .iter()
        .map(|m| coordinates_in(&basis_snf, k, m))
        .collect::<Result<Vec<_>>>()?;
    let coords = IntMatrix::from_columns(k, &coord_cols);
    let coords_snf = smith_normal_form(&coords);
    let first_torsion = coords_snf
        .diagonal
        .iter()
        .position(|d| !d.is_one())
        .unwrap_or(coords_snf.rank());
    let structure = AbelianGroupStructure {
        free_rank: k - coords_snf.rank(),
        torsion: coords_snf.diagonal[first_torsion..].to_vec(),
    };
    Ok(LatticeQuotient {
        ambient_dim,
        basis,
        basis_snf,
        coords,
        coords_snf,
        structure,
        first_torsion,
    })
}

impl LatticeQuotient {
    /// Matrix of the `M` generators in `K` coordinates.
    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.coords
    }
}
