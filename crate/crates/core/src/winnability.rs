//! Linear equivalence, winnability with certificates, minimal winning
//! degrees, and membership in the set of chains whose boundary is a
//! nonnegative combination of boundaries of faces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bigjson;
use crate::chain::IntChain;
use crate::chain_space::ChainSpace;
use crate::cone::{realizable_degree, DegreeVector, RealizeMode};
use crate::error::Result;
use crate::homology::REPRESENTATIVE_LIMIT;
use crate::linalg::{solve_with_smith, DiophantineOutcome};
use crate::search::{apply, shortest_in_coset, LatticeSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WinReason {
    EffectiveFound,
    NegativeDegreeCoordinate,
    ExhaustiveSearchEmpty,
    DegreeZeroNotInImage,
}

impl WinReason {
    pub fn as_str(self) -> &'static str {
        match self {
            WinReason::EffectiveFound => "effective-found",
            WinReason::NegativeDegreeCoordinate => "negative-degree-coordinate",
            WinReason::ExhaustiveSearchEmpty => "exhaustive-search-empty",
            WinReason::DegreeZeroNotInImage => "degree-zero-not-in-image",
        }
    }
}

impl fmt::Display for WinReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinVerdict {
    pub winnable: bool,
    /// Effective chain equal to `sigma + L v`.
    pub winning_chain: Option<IntChain>,
    /// The `v` above.
    pub firing_vector: Option<Vec<BigInt>>,
    pub reason: WinReason,
}

impl WinVerdict {
    fn lost(reason: WinReason) -> Self {
        WinVerdict {
            winnable: false,
            winning_chain: None,
            firing_vector: None,
            reason,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "winnable": self.winnable, "reason": self.reason.as_str() });
        if let (Some(w), Some(f)) = (&self.winning_chain, &self.firing_vector) {
            v["certificate"] = json!({
                "firing_vector": bigjson::int_vec_to_json(f),
                "winning_chain": bigjson::int_vec_to_json(&w.coeffs),
            });
        }
        v
    }
}

/// The shortest firing vector in `v + ker L`, so certificates do not depend on
/// which solution the solver happened to produce.
fn canonical_firing(space: &ChainSpace, v: &[BigInt]) -> Result<Vec<BigInt>> {
    shortest_in_coset(v, &space.laplacian_snf().kernel_basis())
}

/// `v` with `tau = sigma + L v`, if the chains are linearly equivalent.
pub fn linearly_equivalent(
    space: &ChainSpace,
    sigma: &IntChain,
    tau: &IntChain,
) -> Result<Option<Vec<BigInt>>> {
    space.check_chain(sigma)?;
    space.check_chain(tau)?;
    let diff = tau - sigma;
    match solve_with_smith(space.laplacian_snf(), &diff.coeffs)? {
        DiophantineOutcome::Solvable { particular, .. } => {
            Ok(Some(canonical_firing(space, &particular)?))
        }
        DiophantineOutcome::Unsolvable(_) => Ok(None),
    }
}

pub fn is_winnable(space: &ChainSpace, sigma: &IntChain) -> Result<WinVerdict> {
    space.check_chain(sigma)?;
    if sigma.is_effective() {
        return Ok(WinVerdict {
            winnable: true,
            winning_chain: Some(sigma.clone()),
            firing_vector: Some(vec![BigInt::zero(); space.len()]),
            reason: WinReason::EffectiveFound,
        });
    }
    let deg = space.hilbert_basis()?.degree(sigma, false);
    if deg.first_negative().is_some() {
        return Ok(WinVerdict::lost(WinReason::NegativeDegreeCoordinate));
    }
    if deg.is_zero() {
        // an effective chain of degree zero is zero
        let target: Vec<BigInt> = sigma.coeffs.iter().map(|x| -x).collect();
        return Ok(match solve_with_smith(space.laplacian_snf(), &target)? {
            DiophantineOutcome::Solvable { particular, .. } => WinVerdict {
                winnable: true,
                winning_chain: Some(space.zero_chain()),
                firing_vector: Some(canonical_firing(space, &particular)?),
                reason: WinReason::EffectiveFound,
            },
            DiophantineOutcome::Unsolvable(_) => WinVerdict::lost(WinReason::DegreeZeroNotInImage),
        });
    }
    let herm = space.image_hermite();
    let basis = herm.basis();
    let mut search = LatticeSearch::new(&sigma.coeffs, &basis);
    match search.run()? {
        Some(z) => {
            let winning = IntChain::new(space.dim(), apply(&sigma.coeffs, &basis, &z));
            let pre = herm.basis_preimages();
            let mut v = vec![BigInt::zero(); space.len()];
            for (c, col) in z.iter().zip(&pre) {
                for (x, y) in v.iter_mut().zip(col) {
                    *x += c * y;
                }
            }
            Ok(WinVerdict {
                winnable: true,
                winning_chain: Some(winning),
                firing_vector: Some(canonical_firing(space, &v)?),
                reason: WinReason::EffectiveFound,
            })
        }
        None => Ok(WinVerdict::lost(WinReason::ExhaustiveSearchEmpty)),
    }
}

#[derive(Clone, Debug)]
pub struct DegreeClassReport {
    pub degree: DegreeVector,
    pub realizable: bool,
    pub all_winnable: bool,
    /// One chain per linear equivalence class of the degree, with its verdict.
    pub class_reps: Vec<(IntChain, WinVerdict)>,
}

impl DegreeClassReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree.to_json(),
            "realizable": self.realizable,
            "all_winnable": self.all_winnable,
            "classes": self.class_reps.iter().map(|(c, v)| json!({
                "chain": bigjson::int_vec_to_json(&c.coeffs),
                "verdict": v.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The classes of degree `delta` are `sigma + t` for one chain `sigma` of
/// that degree and `t` running over torsion representatives.
fn classes_of_degree(space: &ChainSpace, delta: &DegreeVector) -> Result<Option<Vec<IntChain>>> {
    let Some(sigma) = realizable_degree(space, delta, RealizeMode::Any)? else {
        return Ok(None);
    };
    let reps = space
        .critical_quotient()
        .torsion_representatives(REPRESENTATIVE_LIMIT)?;
    Ok(Some(
        reps.into_iter()
            .map(|t| {
                IntChain::new(
                    space.dim(),
                    sigma.coeffs.iter().zip(&t).map(|(a, b)| a + b).collect(),
                )
            })
            .collect(),
    ))
}

pub fn all_of_degree_winnable(space: &ChainSpace, delta: &DegreeVector) -> Result<DegreeClassReport> {
    let Some(classes) = classes_of_degree(space, delta)? else {
        return Ok(DegreeClassReport {
            degree: delta.clone(),
            realizable: false,
            all_winnable: false,
            class_reps: Vec::new(),
        });
    };
    let verdicts = classes
        .par_iter()
        .map(|c| is_winnable(space, c))
        .collect::<Result<Vec<_>>>()?;
    let all_winnable = verdicts.iter().all(|v| v.winnable);
    Ok(DegreeClassReport {
        degree: delta.clone(),
        realizable: true,
        all_winnable,
        class_reps: classes.into_iter().zip(verdicts).collect(),
    })
}

/// Like [`all_of_degree_winnable`] but stops at the first losing class.
fn every_class_winnable(space: &ChainSpace, delta: &DegreeVector) -> Result<bool> {
    let Some(classes) = classes_of_degree(space, delta)? else {
        return Ok(false);
    };
    for c in &classes {
        if !is_winnable(space, c)?.winnable {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct MinimalDegreeReport {
    pub dim: i32,
    pub minimal_degrees: Vec<DegreeVector>,
    /// Largest coefficient sum of effective chains explored, which is also
    /// the largest degree sum considered.
    pub search_bound: u64,
    /// Whether the list is certified to be all of the minimal degrees.
    pub complete: bool,
    pub zero_one_basis: bool,
}

impl MinimalDegreeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "minimal_degrees": self.minimal_degrees.iter().map(DegreeVector::to_json).collect::<Vec<_>>(),
            "search_bound": { "max_chain_sum": self.search_bound, "max_degree_sum": self.search_bound },
            "complete": self.complete,
            "zero_one_basis": self.zero_one_basis,
        })
    }
}

fn degree_sum(d: &DegreeVector) -> BigInt {
    d.values.iter().sum()
}

/// Degrees of effective chains whose degree sum is at most `bound`.
///
/// An effective chain's coefficient sum never exceeds its degree sum (the sum
/// of all basis elements is strictly positive), so this set is closed under
/// passing to smaller effective degrees.
pub fn effective_degrees(space: &ChainSpace, bound: u64) -> Result<Vec<DegreeVector>> {
    let hb = space.hilbert_basis()?;
    let n = space.len();
    let units: Vec<DegreeVector> = (0..n)
        .map(|f| hb.degree(&IntChain::unit(space.dim(), n, f), false))
        .collect();
    let limit = BigInt::from(bound);
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<BigInt>)> = vec![(0, vec![BigInt::zero(); hb.len()])];
    while let Some((start, d)) = stack.pop() {
        seen.insert(d.clone());
        for (f, u) in units.iter().enumerate().skip(start) {
            let next: Vec<BigInt> = d.iter().zip(&u.values).map(|(a, b)| a + b).collect();
            if next.iter().sum::<BigInt>() <= limit {
                stack.push((f, next));
            }
        }
    }
    let mut out: Vec<DegreeVector> = seen.into_iter().map(|values| DegreeVector { values }).collect();
    out.sort_by(|a, b| (degree_sum(a), &a.values).cmp(&(degree_sum(b), &b.values)));
    Ok(out)
}

/// Minimal degrees `delta` such that every chain of degree at least `delta`
/// is winnable, among degrees with sum at most `bound`.
pub fn minimal_winning_degrees(space: &ChainSpace, bound: u64) -> Result<MinimalDegreeReport> {
    let hb = space.hilbert_basis()?;
    let zero_one = hb.is_zero_one();
    let candidates = effective_degrees(space, bound)?;
    let mut exact: BTreeMap<Vec<BigInt>, bool> = BTreeMap::new();
    let mut exact_pass = |d: &DegreeVector| -> Result<bool> {
        if let Some(&b) = exact.get(&d.values) {
            return Ok(b);
        }
        let b = every_class_winnable(space, d)?;
        exact.insert(d.values.clone(), b);
        Ok(b)
    };
    let mut accepted: Vec<DegreeVector> = Vec::new();
    for d in &candidates {
        if accepted.iter().any(|m| m.le(d)) {
            continue;
        }
        if !exact_pass(d)? {
            continue;
        }
        if !zero_one {
            let mut all_above = true;
            for e in candidates.iter().filter(|e| d.le(e)) {
                if !exact_pass(e)? {
                    all_above = false;
                    break;
                }
            }
            if !all_above {
                continue;
            }
        }
        accepted.push(d.clone());
    }
    let complete = zero_one && certify_complete(space, &accepted, bound)?;
    Ok(MinimalDegreeReport {
        dim: space.dim(),
        minimal_degrees: accepted,
        search_bound: bound,
        complete,
        zero_one_basis: zero_one,
    })
}

/// Every effective degree is a sum of unit-face degrees `g_f`. If `k_f g_f`
/// dominates an accepted degree for every face, an undominated effective
/// degree comes from a chain with `tau_f < k_f`, so its chain sum is at most
/// `sum (k_f - 1)` and it was explored whenever the bound covers that.
fn certify_complete(space: &ChainSpace, accepted: &[DegreeVector], bound: u64) -> Result<bool> {
    let hb = space.hilbert_basis()?;
    let n = space.len();
    let mut total = BigInt::zero();
    for f in 0..n {
        let g = hb.degree(&IntChain::unit(space.dim(), n, f), false);
        let mut best: Option<BigInt> = None;
        for m in accepted {
            // least k with k g >= m, if any
            let mut k = BigInt::zero();
            let mut ok = true;
            for (gj, mj) in g.values.iter().zip(&m.values) {
                if mj.is_positive() {
                    if !gj.is_positive() {
                        ok = false;
                        break;
                    }
                    let need = (mj + gj - 1) / gj;
                    if need > k {
                        k = need;
                    }
                }
            }
            if ok && best.as_ref().map_or(true, |b| k < *b) {
                best = Some(k);
            }
        }
        match best {
            Some(k) => {
                if k.is_positive() {
                    total += k - 1;
                }
            }
            None => return Ok(false),
        }
    }
    Ok(total <= BigInt::from(bound))
}

/// A nonnegative chain `x` with `d x = d sigma`, if any. Its existence means
/// the boundary of `sigma` is a nonnegative integer combination of face
/// boundaries.
pub fn x_set_witness(space: &ChainSpace, sigma: &IntChain) -> Result<Option<IntChain>> {
    space.check_chain(sigma)?;
    let cycles = space.cycle_basis();
    // cycles meet the orthant only in zero, so the region is bounded
    let mut search = LatticeSearch::new(&sigma.coeffs, &cycles);
    Ok(search
        .run()?
        .map(|z| IntChain::new(space.dim(), apply(&sigma.coeffs, &cycles, &z))))
}

pub fn in_x(space: &ChainSpace, sigma: &IntChain) -> Result<bool> {
    Ok(x_set_witness(space, sigma)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn diamond_equivalence() {
        let s = ChainSpace::of(&corpus::diamond(), 1).unwrap();
        let sigma = s.chain_i64(&[-1, 2, -3, 2, -1]).unwrap();
        let tau = s.chain_i64(&[1, 0, 0, 1, 0]).unwrap();
        let v = linearly_equivalent(&s, &sigma, &tau).unwrap().unwrap();
        assert_eq!(v, crate::linalg::big_vec(&[0, -1, 1, 0, 0]));
        assert_eq!(linearly_equivalent(&s, &sigma, &sigma).unwrap().unwrap(), vec![BigInt::zero(); 5]);
    }

    #[test]
    fn triangle_games() {
        let s = ChainSpace::of(&corpus::triangle(), 1).unwrap();
        let win = is_winnable(&s, &s.chain_i64(&[-1, 1, -1]).unwrap()).unwrap();
        assert!(win.winnable);
        assert_eq!(win.firing_vector.unwrap(), crate::linalg::big_vec(&[0, -1, 0]));
        let lose = is_winnable(&s, &s.chain_i64(&[1, -1, -1]).unwrap()).unwrap();
        assert!(!lose.winnable);
        assert_eq!(lose.reason, WinReason::NegativeDegreeCoordinate);
    }

    #[test]
    fn graph_minimal_degrees() {
        let s = ChainSpace::of(&corpus::triangle_graph(), 0).unwrap();
        let r = minimal_winning_degrees(&s, 4).unwrap();
        assert_eq!(r.minimal_degrees, vec![DegreeVector::from_i64(&[1])]);
        assert!(r.complete);
        let p = ChainSpace::of(&corpus::path_graph(), 0).unwrap();
        let r = minimal_winning_degrees(&p, 4).unwrap();
        assert_eq!(r.minimal_degrees, vec![DegreeVector::from_i64(&[0])]);
        assert!(r.complete);
    }

    #[test]
    fn staco_x_membership() {
        let s = ChainSpace::of(&corpus::staco(), 1).unwrap();
        let sigma = s.chain_i64(&[0, 0, 0, 1, -1, 1]).unwrap();
        assert!(in_x(&s, &sigma).unwrap());
        assert!(!is_winnable(&s, &sigma).unwrap().winnable);
        let g = ChainSpace::of(&corpus::path_graph(), 0).unwrap();
        assert!(!in_x(&g, &g.chain_i64(&[0, -1, 0]).unwrap()).unwrap());
    }
}
