//! Hilbert bases of monoids `{x in Z^n : A x = 0, x >= 0}`.
//!
//! The equations are added one at a time. Given the Hilbert basis `G` of the
//! monoid cut out by the equations seen so far and a new row `a`, every
//! element carries its value `a . g`. Sums of elements with opposite values
//! are completed in order of coefficient sum, keeping only those that no
//! present element reduces in the sign-compatible order. The zero-valued
//! elements of the completed set generate the smaller monoid and their
//! minimal members form its Hilbert basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{rank_of_columns, EchelonBasis, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Elem {
    x: Vec<i64>,
    mask: Vec<u64>,
    sum: i64,
}

impl Elem {
    fn new(x: Vec<i64>) -> Result<Elem> {
        let mut mask = vec![0u64; x.len().div_ceil(64)];
        let mut sum: i64 = 0;
        for (j, &v) in x.iter().enumerate() {
            if v != 0 {
                mask[j / 64] |= 1 << (j % 64);
                sum = sum.checked_add(v).ok_or(Error::Overflow("hilbert basis"))?;
            }
        }
        Ok(Elem { x, mask, sum })
    }

    fn unit(n: usize, j: usize) -> Elem {
        let mut x = vec![0; n];
        x[j] = 1;
        Elem::new(x).expect("unit vector")
    }

    fn add(&self, other: &Elem) -> Result<Elem> {
        let x = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("hilbert basis")))
            .collect::<Result<Vec<_>>>()?;
        Elem::new(x)
    }

    /// Componentwise `self <= other`.
    fn le(&self, other: &Elem) -> bool {
        self.sum <= other.sum
            && self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
            && self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
    }
}

fn value(row: &[i64], x: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (a, b) in row.iter().zip(x) {
        if *a != 0 && *b != 0 {
            let p = a.checked_mul(*b).ok_or(Error::Overflow("hilbert basis"))?;
            acc = acc.checked_add(p).ok_or(Error::Overflow("hilbert basis"))?;
        }
    }
    Ok(acc)
}

/// `g` reduces `s` when `g <= s` and its value is zero or has the sign of
/// `s`'s value with no larger magnitude.
fn reduces(g: &Elem, lg: i64, s: &Elem, ls: i64) -> bool {
    let sign_ok = lg == 0 || (lg.signum() == ls.signum() && lg.abs() <= ls.abs());
    sign_ok && g.le(s)
}

fn minimal_elements(mut elems: Vec<Elem>) -> Vec<Elem> {
    elems.sort_by(|a, b| (a.sum, &a.x).cmp(&(b.sum, &b.x)));
    elems.dedup();
    let mut out: Vec<Elem> = Vec::with_capacity(elems.len());
    for e in elems {
        if !out.iter().any(|g| g.le(&e)) {
            out.push(e);
        }
    }
    out
}

fn intersect_with(g: Vec<Elem>, row: &[i64]) -> Result<Vec<Elem>> {
    let mut arena: Vec<(Elem, i64)> = Vec::with_capacity(g.len());
    for e in g {
        let l = value(row, &e.x)?;
        arena.push((e, l));
    }
    let mut pos: Vec<u32> = Vec::new();
    let mut neg: Vec<u32> = Vec::new();
    for (k, (_, l)) in arena.iter().enumerate() {
        if *l > 0 {
            pos.push(k as u32);
        } else if *l < 0 {
            neg.push(k as u32);
        }
    }
    let mut queue: BTreeMap<i64, Vec<(u32, u32)>> = BTreeMap::new();
    for &p in &pos {
        for &n in &neg {
            let s = arena[p as usize].0.sum + arena[n as usize].0.sum;
            queue.entry(s).or_default().push((p, n));
        }
    }
    while let Some((_, layer)) = queue.pop_first() {
        let arena_ref = &arena;
        let candidates: Vec<Option<(Elem, i64)>> = layer
            .par_iter()
            .map(|&(p, n)| -> Result<Option<(Elem, i64)>> {
                let (ep, lp) = &arena_ref[p as usize];
                let (en, ln) = &arena_ref[n as usize];
                let s = ep.add(en)?;
                let ls = lp + ln;
                let reducible = arena_ref.iter().any(|(g, lg)| reduces(g, *lg, &s, ls));
                Ok(if reducible { None } else { Some((s, ls)) })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut fresh: Vec<(Elem, i64)> = candidates.into_iter().flatten().collect();
        fresh.sort_by(|a, b| a.0.x.cmp(&b.0.x));
        fresh.dedup_by(|a, b| a.0.x == b.0.x);
        for (s, ls) in fresh {
            let k = arena.len() as u32;
            let partners = if ls > 0 {
                &neg
            } else if ls < 0 {
                &pos
            } else {
                arena.push((s, ls));
                continue;
            };
            for &o in partners {
                let t = s.sum + arena[o as usize].0.sum;
                queue.entry(t).or_default().push(if ls > 0 { (k, o) } else { (o, k) });
            }
            if ls > 0 {
                pos.push(k);
            } else {
                neg.push(k);
            }
            arena.push((s, ls));
        }
    }
    Ok(minimal_elements(
        arena
            .into_iter()
            .filter(|(_, l)| *l == 0)
            .map(|(e, _)| e)
            .collect(),
    ))
}

/// Linearly independent subset of the rows, chosen greedily in order.
fn independent_rows(eqs: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut basis = EchelonBasis::new(eqs.cols());
    eqs.to_rows()
        .into_iter()
        .filter(|r| basis.insert(r))
        .collect()
}

/// Hilbert basis of `{x : eqs . x = 0, x >= 0}` in canonical order
/// (coefficient sum, then lex).
pub fn nonneg_kernel_hilbert_basis(eqs: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    let n = eqs.cols();
    let rows: Vec<Vec<i64>> = independent_rows(eqs)
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_i64().ok_or(Error::Overflow("hilbert basis")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut g: Vec<Elem> = (0..n).map(|j| Elem::unit(n, j)).collect();
    let mut remaining: Vec<usize> = (0..rows.len()).collect();
    while !remaining.is_empty() {
        let mut best: Option<(usize, u128)> = None;
        for (pos, &r) in remaining.iter().enumerate() {
            let (mut p, mut q) = (0u128, 0u128);
            for e in &g {
                match value(&rows[r], &e.x)?.signum() {
                    1 => p += 1,
                    -1 => q += 1,
                    _ => {}
                }
            }
            if best.map_or(true, |(_, c)| p * q < c) {
                best = Some((pos, p * q));
            }
        }
        let (pos, _) = best.expect("remaining is nonempty");
        let r = remaining.remove(pos);
        g = intersect_with(g, &rows[r])?;
    }
    let mut out: Vec<Vec<BigInt>> = g
        .into_iter()
        .map(|e| e.x.into_iter().map(BigInt::from).collect())
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

pub fn sort_canonical(v: &mut [Vec<BigInt>]) {
    v.sort_by(|a, b| {
        let sa: BigInt = a.iter().sum();
        let sb: BigInt = b.iter().sum();
        (sa, a).cmp(&(sb, b))
    });
}

/// Whether `h` spans an extreme ray of `{x : eqs . x = 0, x >= 0}`: the
/// equation columns on the support of `h` must have a one-dimensional kernel.
pub fn is_extreme_ray(eqs: &IntMatrix, h: &[BigInt]) -> bool {
    let support: Vec<usize> = (0..h.len()).filter(|&j| !h[j].is_zero()).collect();
    if support.is_empty() {
        return false;
    }
    let cols: Vec<Vec<BigInt>> = support.iter().map(|&j| eqs.column(j)).collect();
    rank_of_columns(&cols, eqs.rows()) + 1 == support.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    #[test]
    fn no_equations_gives_units() {
        let eqs = IntMatrix::zeros(0, 3);
        let hb = nonneg_kernel_hilbert_basis(&eqs).unwrap();
        assert_eq!(hb, vec![big_vec(&[0, 0, 1]), big_vec(&[0, 1, 0]), big_vec(&[1, 0, 0])]);
    }

    #[test]
    fn single_equation_with_nonunit_elements() {
        // x + y = 2z
        let eqs = IntMatrix::from_rows(&[vec![1, 1, -2]]);
        let hb = nonneg_kernel_hilbert_basis(&eqs).unwrap();
        assert_eq!(
            hb,
            vec![big_vec(&[0, 2, 1]), big_vec(&[1, 1, 1]), big_vec(&[2, 0, 1])]
        );
        assert!(is_extreme_ray(&eqs, &hb[0]));
        assert!(!is_extreme_ray(&eqs, &hb[1]));
    }

    #[test]
    fn pointed_trivial_cone() {
        let eqs = IntMatrix::from_rows(&[vec![1, 1]]);
        assert!(nonneg_kernel_hilbert_basis(&eqs).unwrap().is_empty());
    }

    #[test]
    fn three_way_balance() {
        // 2x = 3y: basis (3, 2) only
        let eqs = IntMatrix::from_rows(&[vec![2, -3]]);
        assert_eq!(nonneg_kernel_hilbert_basis(&eqs).unwrap(), vec![big_vec(&[3, 2])]);
    }
}
