//! Spanning forests, forest numbers, and reduced Laplacians.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::bigjson;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{group_json, homology, HomologyVariant};
use crate::linalg::{smith_normal_form, AbelianGroupStructure, EchelonBasis, IntMatrix};

/// Default cap on the binomial bound for enumerating every forest.
pub const FOREST_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestMode {
    /// Greedy scan in lex order.
    First,
    All,
    /// Validate the given `i`-faces.
    Check(Vec<Face>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCertificate {
    pub dim: i32,
    pub face_subset: Vec<usize>,
    /// `[no i-homology, same (i-1)-Betti number, right face count]`.
    pub checks: [bool; 3],
    /// Order of the torsion of reduced `(i-1)`-homology of the forest.
    pub torsion_order: BigInt,
}

impl ForestCertificate {
    pub fn is_forest(&self) -> bool {
        self.checks.iter().all(|&c| c)
    }

    pub fn to_json(&self, delta: &SimplicialComplex) -> Value {
        json!({
            "dim": self.dim,
            "faces": self.face_subset.iter().map(|&j| &delta.faces(self.dim)[j]).collect::<Vec<_>>(),
            "checks": self.checks,
            "torsion_order": bigjson::int_to_json(&self.torsion_order),
        })
    }
}

/// Reduced `(i-1)`-homology of the `(i-1)`-skeleton plus the chosen faces.
fn subset_homology(delta: &SimplicialComplex, i: i32, subset: &[usize]) -> AbelianGroupStructure {
    let rows = delta.f(i - 1);
    let below = delta.boundary_matrix(i - 1).rank();
    let d = delta.boundary_matrix(i).select_columns(subset);
    let snf = smith_normal_form(&d);
    AbelianGroupStructure {
        free_rank: rows - below - snf.rank(),
        torsion: snf.diagonal.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

fn certify(delta: &SimplicialComplex, i: i32, subset: Vec<usize>, full_rank: usize) -> ForestCertificate {
    let d = delta.boundary_matrix(i).select_columns(&subset);
    let snf = smith_normal_form(&d);
    let rank = snf.rank();
    let torsion_order = snf.diagonal.iter().fold(BigInt::one(), |acc, x| acc * x);
    let checks = [
        rank == subset.len(),
        rank == full_rank,
        subset.len() == full_rank,
    ];
    ForestCertificate {
        dim: i,
        face_subset: subset,
        checks,
        torsion_order,
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    acc
}

pub fn spanning_forests(
    delta: &SimplicialComplex,
    i: i32,
    mode: &ForestMode,
    limit: u128,
) -> Result<Vec<ForestCertificate>> {
    delta.check_dim(i, 0, delta.dim())?;
    let bd = delta.boundary_matrix(i);
    let columns = bd.columns();
    let full_rank = bd.rank();
    match mode {
        ForestMode::Check(faces) => {
            let mut subset = faces
                .iter()
                .map(|f| {
                    let r = delta.lookup(f)?;
                    if r.dim != i {
                        return Err(Error::UnknownFace(f.clone()));
                    }
                    Ok(r.index)
                })
                .collect::<Result<Vec<_>>>()?;
            subset.sort_unstable();
            subset.dedup();
            Ok(vec![certify(delta, i, subset, full_rank)])
        }
        ForestMode::First => {
            let mut basis = EchelonBasis::new(bd.rows());
            let subset = (0..columns.len())
                .filter(|&j| basis.insert(&columns[j]))
                .collect();
            Ok(vec![certify(delta, i, subset, full_rank)])
        }
        ForestMode::All => {
            let bound = binomial(columns.len(), full_rank);
            if bound > limit {
                return Err(Error::EnumerationLimit {
                    what: "spanning forests",
                    limit,
                });
            }
            let mut found = Vec::new();
            let mut chosen = Vec::new();
            bases(&columns, full_rank, 0, EchelonBasis::new(bd.rows()), &mut chosen, &mut found);
            Ok(found
                .into_iter()
                .map(|s| certify(delta, i, s, full_rank))
                .collect())
        }
    }
}

/// Column bases in lex order by backtracking.
fn bases(
    columns: &[Vec<BigInt>],
    rank: usize,
    next: usize,
    basis: EchelonBasis,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == rank {
        found.push(chosen.clone());
        return;
    }
    let need = rank - chosen.len();
    for j in next..columns.len() {
        if columns.len() - j < need {
            break;
        }
        let mut b = basis.clone();
        if b.insert(&columns[j]) {
            chosen.push(j);
            bases(columns, rank, j + 1, b, chosen, found);
            chosen.pop();
        }
    }
}

/// Sum over spanning forests of the squared torsion orders.
pub fn forest_number(delta: &SimplicialComplex, i: i32, limit: u128) -> Result<BigInt> {
    Ok(spanning_forests(delta, i, &ForestMode::All, limit)?
        .iter()
        .map(|c| &c.torsion_order * &c.torsion_order)
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedLaplacianResult {
    pub dim: i32,
    /// Faces outside the forest, as indices.
    pub theta: Vec<usize>,
    pub matrix: IntMatrix,
    /// Whether the forest and the complex have the same `(i-1)`-homology.
    pub hypothesis_ok: bool,
    pub cokernel: AbelianGroupStructure,
}

impl ReducedLaplacianResult {
    pub fn to_json(&self, delta: &SimplicialComplex) -> Value {
        json!({
            "dim": self.dim,
            "theta": self.theta.iter().map(|&j| &delta.faces(self.dim)[j]).collect::<Vec<_>>(),
            "matrix": bigjson::int_rows_to_json(&self.matrix.to_rows()),
            "hypothesis_ok": self.hypothesis_ok,
            "cokernel": group_json(&self.cokernel),
        })
    }
}

pub fn cokernel(m: &IntMatrix) -> AbelianGroupStructure {
    let snf = smith_normal_form(m);
    AbelianGroupStructure {
        free_rank: m.rows() - snf.rank(),
        torsion: snf.diagonal.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// The Laplacian with the forest's rows and columns removed, and its cokernel.
pub fn reduced_laplacian_group(
    delta: &SimplicialComplex,
    i: i32,
    forest: &[Face],
) -> Result<ReducedLaplacianResult> {
    let cert = spanning_forests(delta, i, &ForestMode::Check(forest.to_vec()), 0)?
        .pop()
        .expect("one certificate");
    if !cert.is_forest() {
        return Err(Error::NotSpanningForest(format!("checks {:?}", cert.checks)));
    }
    let theta: Vec<usize> = (0..delta.f(i))
        .filter(|j| cert.face_subset.binary_search(j).is_err())
        .collect();
    let matrix = delta.laplacian(i)?.submatrix(&theta, &theta);
    let mine = subset_homology(delta, i, &cert.face_subset);
    let whole = homology(delta, i - 1, &HomologyVariant::Reduced)?.group;
    Ok(ReducedLaplacianResult {
        dim: i,
        theta,
        cokernel: cokernel(&matrix),
        matrix,
        hypothesis_ok: mine == whole,
    })
}

/// Whether the whole `i`-skeleton is a spanning forest.
pub fn skeleton_is_forest(delta: &SimplicialComplex, i: i32) -> Result<bool> {
    delta.check_dim(i, 0, delta.dim())?;
    let bd = delta.boundary_matrix(i);
    Ok(bd.rank() == bd.cols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::big_vec;

    #[test]
    fn tetrahedron_forests() {
        let t = corpus::hollow_tetrahedron();
        let all = spanning_forests(&t, 2, &ForestMode::All, FOREST_LIMIT).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|c| c.is_forest() && c.torsion_order.is_one()));
        assert_eq!(forest_number(&t, 2, FOREST_LIMIT).unwrap(), BigInt::from(4));
    }

    #[test]
    fn projective_plane_unique_forest() {
        let p = corpus::projective_plane();
        let all = spanning_forests(&p, 2, &ForestMode::All, FOREST_LIMIT).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].face_subset.len(), p.f(2));
        assert_eq!(forest_number(&p, 2, FOREST_LIMIT).unwrap(), BigInt::from(4));
    }

    #[test]
    fn triangle_graph_trees() {
        let g = corpus::triangle_graph();
        let all = spanning_forests(&g, 1, &ForestMode::All, FOREST_LIMIT).unwrap();
        assert_eq!(all.iter().map(|c| c.face_subset.clone()).collect::<Vec<_>>(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let first = spanning_forests(&g, 1, &ForestMode::First, FOREST_LIMIT).unwrap();
        assert_eq!(first[0].face_subset, vec![0, 1]);
        let r = reduced_laplacian_group(&g, 0, &[vec![1]]).unwrap();
        assert!(r.hypothesis_ok);
        assert_eq!(r.cokernel.torsion, big_vec(&[3]));
    }

    #[test]
    fn tetrahedron_reduced_laplacian() {
        let t = corpus::hollow_tetrahedron();
        let r = reduced_laplacian_group(&t, 1, &[vec![1, 2], vec![1, 3], vec![1, 4]]).unwrap();
        assert_eq!(r.matrix, IntMatrix::from_rows(&[vec![2, -1, 1], vec![-1, 2, -1], vec![1, -1, 2]]));
        assert!(r.hypothesis_ok);
        assert_eq!(r.cokernel, AbelianGroupStructure::from_cyclic(0, &big_vec(&[4])));
    }

    #[test]
    fn bad_subsets() {
        let t = corpus::hollow_tetrahedron();
        assert!(matches!(
            reduced_laplacian_group(&t, 1, &[vec![1, 2], vec![1, 3]]),
            Err(Error::NotSpanningForest(_))
        ));
        assert!(matches!(
            spanning_forests(&t, 1, &ForestMode::Check(vec![vec![1, 9]]), 0),
            Err(Error::UnknownFace(_))
        ));
    }

    #[test]
    fn projective_plane_inside_full_simplex() {
        let full = corpus::six_vertex_simplex();
        let forest: Vec<Face> = corpus::projective_plane().facets().to_vec();
        let r = reduced_laplacian_group(&full, 2, &forest).unwrap();
        assert!(!r.hypothesis_ok);
        assert_eq!(r.cokernel, AbelianGroupStructure::from_cyclic(0, &big_vec(&[12, 6, 6, 6, 2])));
    }
}
