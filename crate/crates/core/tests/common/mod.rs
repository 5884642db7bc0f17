#![allow(dead_code)]

use std::collections::BTreeSet;

use chipfire_core::{IntChain, IntMatrix, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("fits in i64")).collect()
}

pub fn small_matrix(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| small(r)).collect()
}

/// Facets drawn from `k`-subsets of `1..=n`.
pub fn random_complex<R: Rng>(rng: &mut R, n: u32, k: usize, count: usize) -> SimplicialComplex {
    let verts: Vec<u32> = (1..=n).collect();
    let facets: Vec<Vec<u32>> = (0..count)
        .map(|_| {
            let mut f: Vec<u32> = verts.choose_multiple(rng, k).copied().collect();
            f.sort_unstable();
            f
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    SimplicialComplex::from_facets(facets).unwrap()
}

/// Complexes on up to `n` vertices whose facets have `k` vertices.
pub fn complex_strategy(n: u32, k: usize, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::sample::subsequence((1..=n).collect::<Vec<u32>>(), k), 1..=max_facets)
        .prop_map(|facets| {
            let unique: BTreeSet<Vec<u32>> = facets.into_iter().collect();
            SimplicialComplex::from_facets(unique).unwrap()
        })
}

pub fn random_chain<R: Rng>(rng: &mut R, dim: i32, len: usize, range: i64) -> IntChain {
    IntChain::new(dim, (0..len).map(|_| BigInt::from(rng.gen_range(-range..=range))).collect())
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Whether some firing vector in `[-b, b]^n` makes `sigma + L v` effective.
pub fn brute_force_winnable(laplacian: &[Vec<i64>], sigma: &[i64], b: i64) -> bool {
    let n = sigma.len();
    let mut v = vec![-b; n];
    loop {
        let lv = mat_vec(laplacian, &v);
        if sigma.iter().zip(&lv).all(|(s, x)| s + x >= 0) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == n {
                return false;
            }
            if v[k] < b {
                v[k] += 1;
                break;
            }
            v[k] = -b;
            k += 1;
        }
    }
}

pub mod props;
