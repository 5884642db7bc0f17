//! Checks shared by the property tests and the acceptance harness. Each one
//! panics on a counterexample.

use chipfire_core::cone::{degree, realizable_degree};
use chipfire_core::corpus;
use chipfire_core::forests::{forest_number, spanning_forests, FOREST_LIMIT};
use chipfire_core::linalg::smith_normal_form;
use chipfire_core::winnability::{is_winnable, linearly_equivalent};
use chipfire_core::{ChainSpace, ForestMode, IntChain, IntMatrix, RealizeMode, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

pub fn small_corpus() -> Vec<(&'static str, SimplicialComplex)> {
    corpus::all()
        .into_iter()
        .filter(|(name, _)| *name != "seventeen")
        .collect()
}

pub fn spaces(delta: &SimplicialComplex) -> Vec<ChainSpace> {
    (0..=delta.dim()).map(|i| ChainSpace::of(delta, i).unwrap()).collect()
}

pub fn boundary_squares_to_zero(delta: &SimplicialComplex) {
    for i in 1..=delta.dim() {
        let lower = delta.boundary_matrix(i - 1);
        let upper = delta.boundary_matrix(i);
        assert!(lower.mul(&upper).unwrap().is_zero(), "{:?} at {i}", delta.facets());
    }
}

pub fn smith_reconstructs(rows: &[Vec<i64>]) {
    let a = IntMatrix::from_rows(rows);
    let (m, n) = a.shape();
    let s = smith_normal_form(&a);
    assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m));
    assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(n));
    assert!(s.u.determinant().unwrap().abs().is_one());
    assert!(s.v.determinant().unwrap().abs().is_one());
    for (r, row) in s.d.to_rows().iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if r == c && r < s.rank() {
                assert_eq!(*x, s.diagonal[r]);
            } else {
                assert!(x.is_zero());
            }
        }
    }
    assert!(s.diagonal.iter().all(|d| d.is_positive()));
    assert!(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    assert_eq!(s.rank(), a.rank());
    for k in s.kernel_basis() {
        assert!(a.mul_vec(&k).unwrap().iter().all(|x| x.is_zero()));
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect())
        .collect()
}

pub fn winnability_is_a_class_invariant(delta: &SimplicialComplex, i: i32, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = ChainSpace::of(delta, i).unwrap();
    let sigma = random_chain(&mut rng, i, space.len(), 2);
    let v = random_chain(&mut rng, i, space.len(), 3).coeffs;
    let moved = space.fire(&sigma, &v).unwrap();
    let a = is_winnable(&space, &sigma).unwrap();
    let b = is_winnable(&space, &moved).unwrap();
    assert_eq!(a.winnable, b.winnable, "{:?} vs {:?}", sigma.coeffs, moved.coeffs);
    assert!(linearly_equivalent(&space, &sigma, &moved).unwrap().is_some());
}

const BOX: i64 = 4;

/// Verdicts agree with enumeration of firing vectors in a box; winning
/// certificates are checked exactly.
pub fn winnability_matches_brute_force(delta: &SimplicialComplex, i: i32, seed: u64) {
    let space = ChainSpace::of(delta, i).unwrap();
    assert!(space.len() <= 6);
    let lap = small_matrix(space.laplacian());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
    for _ in 0..3 {
        let sigma = random_chain(&mut rng, i, space.len(), 2);
        let verdict = is_winnable(&space, &sigma).unwrap();
        let oracle = brute_force_winnable(&lap, &small(&sigma.coeffs), BOX);
        match &verdict.firing_vector {
            Some(v) => {
                let won = space.fire(&sigma, v).unwrap();
                assert!(won.is_effective());
                assert_eq!(Some(&won), verdict.winning_chain.as_ref());
                let fits = v.iter().all(|x| x.abs() <= BigInt::from(BOX));
                assert!(oracle || !fits, "oracle missed a certificate inside the box");
            }
            None => {
                assert!(!verdict.winnable);
                assert!(!oracle, "{:?} at dim {i} is winnable by brute force", sigma.coeffs);
            }
        }
    }
}

pub fn two_forest_conditions_imply_the_third(delta: &SimplicialComplex, i: i32, mask: u32) {
    let subset: Vec<_> = delta
        .faces(i)
        .iter()
        .enumerate()
        .filter(|(j, _)| mask >> (j % 32) & 1 == 1)
        .map(|(_, f)| f.clone())
        .collect();
    let cert = &spanning_forests(delta, i, &ForestMode::Check(subset), FOREST_LIMIT).unwrap()[0];
    assert_ne!(cert.checks.iter().filter(|&&c| c).count(), 2, "{:?}", cert.checks);
}

pub fn degree_is_invariant_under_firing(seed: u64, firings: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, delta) in small_corpus() {
        for space in spaces(&delta) {
            let sigma = random_chain(&mut rng, space.dim(), space.len(), 5);
            let d0 = degree(&space, &sigma, false).unwrap();
            for _ in 0..firings {
                let v = random_chain(&mut rng, space.dim(), space.len(), 4).coeffs;
                let moved = space.fire(&sigma, &v).unwrap();
                assert_eq!(degree(&space, &moved, false).unwrap(), d0, "{name}");
            }
        }
    }
}

/// A basis with an element that does not span an extreme ray.
pub fn mixed_ray_complex() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        [1, 2, 3],
        [1, 2, 6],
        [2, 3, 7],
        [2, 5, 6],
        [2, 6, 7],
        [3, 4, 6],
        [3, 5, 6],
        [3, 5, 7],
    ])
    .unwrap()
}

/// `deg(tau) <= deg(sigma)` exactly when the same holds for the ray-only
/// degrees.
pub fn degree_and_ray_degree_order_alike(seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut with_non_rays = 0;
    let mut comparable = 0;
    let mut complexes = small_corpus();
    complexes.push(("mixed", mixed_ray_complex()));
    for (name, delta) in complexes {
        for space in spaces(&delta) {
            let hb = space.hilbert_basis().unwrap();
            if hb.ray_flags.iter().all(|&r| r) {
                continue;
            }
            with_non_rays += 1;
            for k in 0..60 {
                let sigma = random_chain(&mut rng, space.dim(), space.len(), 3);
                let tau = if k % 2 == 0 {
                    let coeffs = sigma
                        .coeffs
                        .iter()
                        .map(|a| a - BigInt::from(rng.gen_range(0..=2)))
                        .collect();
                    IntChain::new(space.dim(), coeffs)
                } else {
                    random_chain(&mut rng, space.dim(), space.len(), 3)
                };
                let full = hb.degree(&tau, false).le(&hb.degree(&sigma, false));
                let rays = hb.degree(&tau, true).le(&hb.degree(&sigma, true));
                assert_eq!(full, rays, "{name}");
                comparable += usize::from(full);
            }
        }
    }
    assert!(with_non_rays > 0);
    assert!(comparable > 0);
}

/// With a 0-1 basis, every nonnegative degree has an effective chain.
pub fn zero_one_bases_admit_effective_realizations(seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, delta) in small_corpus() {
        for space in spaces(&delta) {
            let hb = space.hilbert_basis().unwrap().clone();
            if !hb.is_zero_one() {
                continue;
            }
            let mut hits = 0;
            for _ in 0..200 {
                let sigma = random_chain(&mut rng, space.dim(), space.len(), 2);
                let d = hb.degree(&sigma, false);
                if !d.is_nonnegative() {
                    continue;
                }
                let tau = realizable_degree(&space, &d, RealizeMode::Effective)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{name}: no effective chain of degree {:?}", d.values));
                assert!(tau.is_effective());
                assert_eq!(hb.degree(&tau, false), d);
                hits += 1;
                if hits == 15 {
                    break;
                }
            }
        }
    }
}

/// `|T(crit_{i-1})| = tau_i` on `count` random complexes with at most 12
/// `i`-faces.
pub fn cut_flow_on_random_complexes(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < count {
        let (delta, i) = if checked % 3 == 0 {
            let facets = rng.gen_range(2..=9);
            (random_complex(&mut rng, 6, 2, facets), 1)
        } else {
            let facets = rng.gen_range(2..=12);
            (random_complex(&mut rng, 6, 3, facets), 2)
        };
        if delta.dim() < i || delta.f(i) > 12 {
            continue;
        }
        let lower = ChainSpace::of(&delta, i - 1).unwrap();
        let torsion = lower.critical_quotient().structure().torsion_order();
        let tau = forest_number(&delta, i, FOREST_LIMIT).unwrap();
        assert_eq!(torsion, tau, "{:?}", delta.facets());
        checked += 1;
    }
}
