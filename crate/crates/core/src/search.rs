//! Integer points of `{z : base + B z >= 0}` for a full-column-rank lattice
//! basis `B`, by depth-first enumeration pruned with exact LP relaxations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Inequalities, LpOutcome, Sense};

/// Search statistics, reported alongside verdicts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub lp_solves: u64,
}

pub struct LatticeSearch<'a> {
    base: &'a [BigInt],
    // columns of B
    basis: &'a [Vec<BigInt>],
    stats: SearchStats,
}

fn to_q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn is_integral_point(p: &[BigRational]) -> bool {
    p.iter().all(|x| x.is_integer())
}

impl<'a> LatticeSearch<'a> {
    pub fn new(base: &'a [BigInt], basis: &'a [Vec<BigInt>]) -> Self {
        LatticeSearch {
            base,
            basis,
            stats: SearchStats::default(),
        }
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    fn image(&self, z: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.base.to_vec();
        for (c, col) in z.iter().zip(self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(col) {
                *o += c * b;
            }
        }
        out
    }

    fn works(&self, z: &[BigInt]) -> bool {
        !self.image(z).iter().any(Signed::is_negative)
    }

    /// `-B_free z_free <= base + B_fixed z_fixed` over the free coordinates.
    fn relaxation(&self, fixed: &[Option<BigInt>]) -> (Inequalities, Vec<usize>) {
        let free: Vec<usize> = (0..fixed.len()).filter(|&j| fixed[j].is_none()).collect();
        let mut rhs = self.base.to_vec();
        for (j, v) in fixed.iter().enumerate() {
            if let Some(v) = v {
                if v.is_zero() {
                    continue;
                }
                for (r, b) in rhs.iter_mut().zip(&self.basis[j]) {
                    *r += v * b;
                }
            }
        }
        let mut sys = Inequalities::new(free.len());
        for (row, r) in rhs.iter().enumerate() {
            let a: Vec<BigRational> = free.iter().map(|&j| -to_q(&self.basis[j][row])).collect();
            if a.iter().all(Zero::is_zero) {
                // constant row: keep so infeasibility is visible to the LP
                if r.is_negative() {
                    sys.push(a, to_q(r));
                }
                continue;
            }
            sys.push(a, to_q(r));
        }
        (sys, free)
    }

    fn solve(&mut self, sys: &Inequalities) -> Option<Vec<BigRational>> {
        self.stats.lp_solves += 1;
        sys.feasible_point()
    }

    /// Some `z` with `base + B z >= 0`, or `None` when there is none.
    pub fn run(&mut self) -> Result<Option<Vec<BigInt>>> {
        let k = self.basis.len();
        let zero = vec![BigInt::zero(); k];
        if self.works(&zero) {
            return Ok(Some(zero));
        }
        if k == 0 {
            return Ok(None);
        }
        let fixed: Vec<Option<BigInt>> = vec![None; k];
        let (sys, _) = self.relaxation(&fixed);
        let Some(point) = self.solve(&sys) else {
            return Ok(None);
        };
        // per-coordinate range, which must be finite
        let mut widths = Vec::with_capacity(k);
        for j in 0..k {
            let mut obj = vec![BigRational::zero(); k];
            obj[j] = BigRational::from_integer(1.into());
            self.stats.lp_solves += 2;
            let lo = match sys.optimize(&obj, Sense::Minimize) {
                LpOutcome::Optimal { value, .. } => value,
                LpOutcome::Unbounded => return Err(Error::UnboundedSearch(j)),
                LpOutcome::Infeasible => return Ok(None),
            };
            let hi = match sys.optimize(&obj, Sense::Maximize) {
                LpOutcome::Optimal { value, .. } => value,
                LpOutcome::Unbounded => return Err(Error::UnboundedSearch(j)),
                LpOutcome::Infeasible => return Ok(None),
            };
            if hi.floor() < lo.ceil() {
                return Ok(None);
            }
            widths.push(hi - lo);
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| widths[a].cmp(&widths[b]).then(a.cmp(&b)));
        let mut fixed = fixed;
        Ok(self.descend(&order, 0, &mut fixed, &point))
    }

    fn complete(&self, fixed: &[Option<BigInt>], free: &[usize], point: &[BigRational]) -> Vec<BigInt> {
        let mut z: Vec<BigInt> = fixed.iter().map(|v| v.clone().unwrap_or_default()).collect();
        for (pos, &j) in free.iter().enumerate() {
            z[j] = point[pos].to_integer();
        }
        z
    }

    /// `point` is a feasible relaxation point for the current fixings,
    /// indexed by the free coordinates in increasing order.
    fn descend(
        &mut self,
        order: &[usize],
        depth: usize,
        fixed: &mut Vec<Option<BigInt>>,
        point: &[BigRational],
    ) -> Option<Vec<BigInt>> {
        self.stats.nodes += 1;
        let free: Vec<usize> = (0..fixed.len()).filter(|&j| fixed[j].is_none()).collect();
        if is_integral_point(point) {
            return Some(self.complete(fixed, &free, point));
        }
        let rounded: Vec<BigRational> = point.iter().map(|x| x.round()).collect();
        let candidate = self.complete(fixed, &free, &rounded);
        if self.works(&candidate) {
            return Some(candidate);
        }
        let j = order[depth];
        let pos = free.iter().position(|&f| f == j).expect("coordinate is free");
        let c = &point[pos];
        let down_start = c.floor().to_integer();
        let up_start = &down_start + 1;
        // the feasible values of one coordinate form an interval, so each
        // direction stops at its first infeasible value
        let mut down = Some(down_start);
        let mut up = Some(up_start);
        let mut turn_down = true;
        while down.is_some() || up.is_some() {
            let take_down = (turn_down && down.is_some()) || up.is_none();
            turn_down = !turn_down;
            let value = if take_down {
                down.clone().expect("checked")
            } else {
                up.clone().expect("checked")
            };
            fixed[j] = Some(value.clone());
            let (sys, _) = self.relaxation(fixed);
            let child = if sys.vars() == 0 {
                let z: Vec<BigInt> = fixed.iter().map(|v| v.clone().unwrap_or_default()).collect();
                if self.works(&z) {
                    fixed[j] = None;
                    return Some(z);
                }
                None
            } else {
                self.solve(&sys)
            };
            match child {
                Some(p) => {
                    if let Some(z) = self.descend(order, depth + 1, fixed, &p) {
                        fixed[j] = None;
                        return Some(z);
                    }
                    if take_down {
                        down = Some(value - 1);
                    } else {
                        up = Some(value + 1);
                    }
                }
                None => {
                    if take_down {
                        down = None;
                    } else {
                        up = None;
                    }
                }
            }
        }
        fixed[j] = None;
        None
    }
}

/// Convenience wrapper: `z` with `base + B z >= 0`.
pub fn find_nonneg_point(base: &[BigInt], basis: &[Vec<BigInt>]) -> Result<Option<Vec<BigInt>>> {
    LatticeSearch::new(base, basis).run()
}

/// `base + B z` for a found `z`.
pub fn apply(base: &[BigInt], basis: &[Vec<BigInt>], z: &[BigInt]) -> Vec<BigInt> {
    LatticeSearch::new(base, basis).image(z)
}

/// Minimizes `objective . x` over `sys` with the first `integers` variables
/// integral, by depth-first branch and bound on the LP relaxation. The
/// feasible region must be bounded in the objective direction. Among optimal
/// points the first one found is returned, which is deterministic.
pub fn minimize_mixed(
    sys: &Inequalities,
    objective: &[BigRational],
    integers: usize,
) -> Result<Option<(BigRational, Vec<BigRational>)>> {
    let mut best: Option<(BigRational, Vec<BigRational>)> = None;
    branch_and_bound(sys.clone(), objective, integers, &mut best)?;
    Ok(best)
}

fn branch_and_bound(
    sys: Inequalities,
    objective: &[BigRational],
    integers: usize,
    best: &mut Option<(BigRational, Vec<BigRational>)>,
) -> Result<()> {
    let (value, point) = match sys.optimize(objective, Sense::Minimize) {
        LpOutcome::Optimal { value, point } => (value, point),
        LpOutcome::Infeasible => return Ok(()),
        LpOutcome::Unbounded => return Err(Error::UnboundedSearch(0)),
    };
    if let Some((b, _)) = best {
        if value >= *b {
            return Ok(());
        }
    }
    let Some(j) = (0..integers).find(|&j| !point[j].is_integer()) else {
        *best = Some((value, point));
        return Ok(());
    };
    let down = point[j].floor().to_integer();
    let mut lower = sys.clone();
    lower.push_bound(j, &down, true);
    branch_and_bound(lower, objective, integers, best)?;
    let mut upper = sys;
    upper.push_bound(j, &(down + 1), false);
    branch_and_bound(upper, objective, integers, best)
}

/// The representative of `base + span_Z(basis)` with least 1-norm, ties
/// broken towards the lexicographically smallest vector.
pub fn shortest_in_coset(base: &[BigInt], basis: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let k = basis.len();
    let n = base.len();
    if k == 0 {
        return Ok(base.to_vec());
    }
    let one = BigRational::from_integer(1.into());
    // variables: z (k integers), then u (n) with u >= |base + B z|
    let mut sys = Inequalities::new(k + n);
    for r in 0..n {
        let mut a: Vec<BigRational> = basis.iter().map(|c| to_q(&c[r])).collect();
        a.extend((0..n).map(|j| if j == r { -one.clone() } else { BigRational::zero() }));
        sys.push(a.clone(), -to_q(&base[r]));
        for x in a.iter_mut().take(k) {
            *x = -x.clone();
        }
        sys.push(a, to_q(&base[r]));
    }
    let mut obj = vec![BigRational::zero(); k + n];
    for o in obj.iter_mut().skip(k) {
        *o = one.clone();
    }
    let Some((norm, point)) = minimize_mixed(&sys, &obj, k)? else {
        return Ok(base.to_vec());
    };
    // Among vectors of norm N every coordinate lies in [-N, N], so weights
    // (2N+1)^(n-1-r) order them lexicographically.
    sys.push(obj, norm.clone());
    let radix = BigInt::from(2) * norm.to_integer() + 1;
    let mut weight = BigInt::from(1);
    let mut lex = vec![BigRational::zero(); k + n];
    for r in (0..n).rev() {
        for (t, c) in lex.iter_mut().zip(basis) {
            *t += to_q(&(&c[r] * &weight));
        }
        weight *= &radix;
    }
    let (_, point) = minimize_mixed(&sys, &lex, k)?.unwrap_or((norm, point));
    let z: Vec<BigInt> = point[..k].iter().map(|x| x.to_integer()).collect();
    Ok(apply(base, basis, &z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    #[test]
    fn finds_shift_into_orthant() {
        // base + z (1, -1): need -1 + z >= 0 and 3 - z >= 0
        let base = big_vec(&[-1, 3]);
        let basis = vec![big_vec(&[1, -1])];
        let z = find_nonneg_point(&base, &basis).unwrap().unwrap();
        assert!(apply(&base, &basis, &z).iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn parity_gap_has_no_point() {
        // base + z (2, -2) with base (-1, 1): need z >= 1/2 and z <= 1/2
        let base = big_vec(&[-1, 1]);
        let basis = vec![big_vec(&[2, -2])];
        assert_eq!(find_nonneg_point(&base, &basis).unwrap(), None);
    }

    #[test]
    fn unbounded_direction_is_reported() {
        let base = big_vec(&[-1, 0]);
        let basis = vec![big_vec(&[1, 1])];
        assert!(matches!(
            find_nonneg_point(&base, &basis),
            Err(Error::UnboundedSearch(0))
        ));
    }

    #[test]
    fn two_dimensional_thin_polytope() {
        // x = base + z1 (3, -3, 0, 0) + z2 (0, 1, -2, 1), a narrow slab
        let base = big_vec(&[-2, 5, 1, -1]);
        let basis = vec![big_vec(&[3, -3, 0, 0]), big_vec(&[0, 1, -2, 1])];
        let z = find_nonneg_point(&base, &basis).unwrap();
        let brute = (-10i64..=10).flat_map(|a| (-10i64..=10).map(move |b| (a, b))).find(|&(a, b)| {
            apply(&base, &basis, &big_vec(&[a, b])).iter().all(|x| !x.is_negative())
        });
        assert_eq!(z.is_some(), brute.is_some());
        if let Some(z) = z {
            assert!(apply(&base, &basis, &z).iter().all(|x| !x.is_negative()));
        }
    }

    #[test]
    fn shortest_coset_representative() {
        // coset of (2, 0, 0) modulo the lattice spanned by (1, 1, 0) and (0, 1, 1)
        let base = big_vec(&[2, 0, 0]);
        let basis = vec![big_vec(&[1, 1, 0]), big_vec(&[0, 1, 1])];
        let v = shortest_in_coset(&base, &basis).unwrap();
        let norm = |x: &[BigInt]| x.iter().map(|a| a.abs()).sum::<BigInt>();
        let mut brute: Vec<Vec<BigInt>> = Vec::new();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                brute.push(apply(&base, &basis, &big_vec(&[a, b])));
            }
        }
        brute.sort_by(|x, y| (norm(x), x).cmp(&(norm(y), y)));
        assert_eq!(v, brute[0]);
    }
}
