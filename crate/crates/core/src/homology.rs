use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use crate::bigjson;
use crate::chain::IntChain;
use crate::chain_space::ChainSpace;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, AbelianGroupStructure, IntMatrix};

/// Which chain complex to take homology of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyVariant {
    /// Augmented by `C_{-1} = Z`.
    Reduced,
    /// No augmentation.
    Ordinary,
    /// Relative to the subcomplex generated by the given faces; an empty list
    /// gives ordinary homology.
    Relative(Vec<Face>),
}

impl fmt::Display for HomologyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyVariant::Reduced => write!(f, "reduced"),
            HomologyVariant::Ordinary => write!(f, "ordinary"),
            HomologyVariant::Relative(_) => write!(f, "relative"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub dim: i32,
    pub group: AbelianGroupStructure,
    pub variant: HomologyVariant,
}

impl HomologyResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "dim": self.dim,
            "variant": self.variant.to_string(),
            "group": group_json(&self.group),
        });
        if let HomologyVariant::Relative(faces) = &self.variant {
            v["subcomplex"] = json!(faces);
        }
        v
    }
}

pub fn group_json(g: &AbelianGroupStructure) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": bigjson::int_vec_to_json(&g.torsion),
    })
}

/// All faces of the subcomplex generated by `faces`, checked against `delta`.
fn closure_in(delta: &SimplicialComplex, faces: &[Face]) -> Result<BTreeSet<Face>> {
    let mut out = BTreeSet::new();
    for f in faces {
        let mut f = f.clone();
        f.sort_unstable();
        if !delta.contains(&f) {
            return Err(Error::NotSubcomplex);
        }
        let k = f.len();
        for mask in 0u64..(1u64 << k) {
            out.insert((0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect());
        }
    }
    Ok(out)
}

/// `ker d_i / im d_{i+1}` of the two given boundary maps.
fn homology_of(d_i: &IntMatrix, d_next: &IntMatrix, chains: usize) -> AbelianGroupStructure {
    let rank_i = d_i.rank();
    let snf = smith_normal_form(d_next);
    AbelianGroupStructure {
        free_rank: chains - rank_i - snf.rank(),
        torsion: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

fn kept(delta: &SimplicialComplex, i: i32, removed: &BTreeSet<Face>) -> Vec<usize> {
    (0..delta.f(i))
        .filter(|&j| !removed.contains(&delta.faces(i)[j]))
        .collect()
}

pub fn homology(delta: &SimplicialComplex, i: i32, variant: &HomologyVariant) -> Result<HomologyResult> {
    let min = if *variant == HomologyVariant::Reduced { -1 } else { 0 };
    delta.check_dim(i, min, delta.dim())?;
    let group = match variant {
        HomologyVariant::Reduced => homology_of(
            &delta.boundary_matrix(i),
            &delta.boundary_matrix(i + 1),
            delta.f(i),
        ),
        HomologyVariant::Ordinary => homology_of(
            &delta.boundary_matrix_with(i, false),
            &delta.boundary_matrix_with(i + 1, false),
            delta.f(i),
        ),
        HomologyVariant::Relative(faces) => {
            let sigma = closure_in(delta, faces)?;
            let prev = kept(delta, i - 1, &sigma);
            let here = kept(delta, i, &sigma);
            let next = kept(delta, i + 1, &sigma);
            let d_i = delta.boundary_matrix_with(i, false).submatrix(&prev, &here);
            let d_next = delta
                .boundary_matrix_with(i + 1, false)
                .submatrix(&here, &next);
            homology_of(&d_i, &d_next, here.len())
        }
    };
    Ok(HomologyResult {
        dim: i,
        group,
        variant: variant.clone(),
    })
}

/// Reduced Betti number.
pub fn betti(delta: &SimplicialComplex, i: i32) -> Result<usize> {
    Ok(homology(delta, i, &HomologyVariant::Reduced)?.group.free_rank)
}

#[derive(Clone, Debug)]
pub struct CriticalGroupResult {
    pub dim: i32,
    pub group: AbelianGroupStructure,
    /// One cycle per torsion class, canonical coefficients in `[0, t_j)`
    /// with respect to the torsion generators.
    pub torsion_representatives: Vec<IntChain>,
}

impl CriticalGroupResult {
    pub fn to_json(&self, with_representatives: bool) -> Value {
        let mut v = group_json(&self.group);
        if with_representatives {
            v["representatives"] = Value::Array(
                self.torsion_representatives
                    .iter()
                    .map(|c| bigjson::int_vec_to_json(&c.coeffs))
                    .collect(),
            );
        }
        v
    }
}

/// Default cap on the number of torsion classes listed explicitly.
pub const REPRESENTATIVE_LIMIT: u128 = 1 << 20;

/// `ker d_i / im L_i` with one representative per torsion class.
pub fn critical_group(space: &ChainSpace, limit: u128) -> Result<CriticalGroupResult> {
    let q = space.critical_quotient();
    let reps = q.torsion_representatives(limit)?;
    Ok(CriticalGroupResult {
        dim: space.dim(),
        group: q.structure().clone(),
        torsion_representatives: reps
            .into_iter()
            .map(|r| IntChain::new(space.dim(), r))
            .collect(),
    })
}

/// Group structure only.
pub fn critical_group_structure(space: &ChainSpace) -> AbelianGroupStructure {
    space.critical_quotient().structure().clone()
}
