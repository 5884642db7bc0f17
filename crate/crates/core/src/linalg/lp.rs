//! Exact rational linear programming over `{x : A x <= b}` with free variables.
//!
//! Dense two-phase simplex with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A system of inequalities `a_r . x <= b_r` over free rational variables.
#[derive(Clone, Debug, Default)]
pub struct Inequalities {
    vars: usize,
    lhs: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
}

impl Inequalities {
    pub fn new(vars: usize) -> Self {
        Inequalities {
            vars,
            lhs: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.lhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty()
    }

    pub fn push(&mut self, a: Vec<BigRational>, b: BigRational) {
        assert_eq!(a.len(), self.vars);
        self.lhs.push(a);
        self.rhs.push(b);
    }

    pub fn push_int(&mut self, a: &[BigInt], b: &BigInt) {
        self.push(
            a.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
            BigRational::from_integer(b.clone()),
        );
    }

    /// `x_j <= value` (upper) or `x_j >= value` (lower).
    pub fn push_bound(&mut self, j: usize, value: &BigInt, upper: bool) {
        let mut a = vec![BigRational::zero(); self.vars];
        let v = BigRational::from_integer(value.clone());
        if upper {
            a[j] = BigRational::one();
            self.push(a, v);
        } else {
            a[j] = -BigRational::one();
            self.push(a, -v);
        }
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.lhs.iter().zip(&self.rhs).all(|(a, b)| {
            let s: BigRational = a.iter().zip(x).map(|(p, q)| p * q).sum();
            s <= *b
        })
    }

    pub fn feasible_point(&self) -> Option<Vec<BigRational>> {
        match self.optimize(&vec![BigRational::zero(); self.vars], Sense::Minimize) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn optimize(&self, objective: &[BigRational], sense: Sense) -> LpOutcome {
        assert_eq!(objective.len(), self.vars);
        let mut t = Tableau::standard_form(self);
        if !t.phase_one() {
            return LpOutcome::Infeasible;
        }
        // internal problem minimizes over (x+, x-, s)
        let n = self.vars;
        let mut cost = vec![BigRational::zero(); t.width];
        for j in 0..n {
            let c = match sense {
                Sense::Minimize => objective[j].clone(),
                Sense::Maximize => -objective[j].clone(),
            };
            cost[n + j] = -c.clone();
            cost[j] = c;
        }
        if !t.phase_two(&cost) {
            return LpOutcome::Unbounded;
        }
        let z = t.solution();
        let point: Vec<BigRational> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
        let value = objective.iter().zip(&point).map(|(c, x)| c * x).sum();
        LpOutcome::Optimal { value, point }
    }
}

struct Tableau {
    // m rows of length width + 1, last entry the right-hand side
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    // reduced costs, last entry minus the objective value
    obj: Vec<BigRational>,
    width: usize,
    // columns before the artificial block
    structural: usize,
}

impl Tableau {
    /// Columns: x+ (n), x- (n), slacks (m), artificials (one per row with a
    /// negative right-hand side).
    fn standard_form(sys: &Inequalities) -> Tableau {
        let n = sys.vars;
        let m = sys.len();
        let needs_art: Vec<usize> = (0..m).filter(|&i| sys.rhs[i].is_negative()).collect();
        let width = 2 * n + m + needs_art.len();
        let mut rows = Vec::with_capacity(m);
        let mut basis = vec![0; m];
        let mut art_col = 2 * n + m;
        for i in 0..m {
            let mut row = vec![BigRational::zero(); width + 1];
            let flip = sys.rhs[i].is_negative();
            for j in 0..n {
                let a = &sys.lhs[i][j];
                if a.is_zero() {
                    continue;
                }
                let a = if flip { -a.clone() } else { a.clone() };
                row[n + j] = -a.clone();
                row[j] = a;
            }
            row[2 * n + i] = if flip {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            row[width] = sys.rhs[i].abs();
            if flip {
                row[art_col] = BigRational::one();
                basis[i] = art_col;
                art_col += 1;
            } else {
                basis[i] = 2 * n + i;
            }
            rows.push(row);
        }
        let mut obj = vec![BigRational::zero(); width + 1];
        for &i in &needs_art {
            for j in 0..2 * n + m {
                obj[j] -= &rows[i][j];
            }
            obj[width] -= &rows[i][width];
        }
        Tableau {
            rows,
            basis,
            obj,
            width,
            structural: 2 * n + m,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over the columns `< limit`; false if unbounded.
    fn iterate(&mut self, limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn phase_one(&mut self) -> bool {
        let w = self.width;
        self.iterate(w);
        if self.obj[w].is_negative() {
            return false;
        }
        let first_art = self.structural;
        // drive zero-valued artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= first_art {
                match (0..first_art).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(c) => {
                        self.pivot(i, c);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in self.rows.iter_mut() {
            let rhs = row[w].clone();
            row.truncate(first_art);
            row.push(rhs);
        }
        self.width = first_art;
        true
    }

    fn phase_two(&mut self, cost: &[BigRational]) -> bool {
        let w = self.width;
        let mut obj = vec![BigRational::zero(); w + 1];
        obj[..w].clone_from_slice(&cost[..w]);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (x, y) in obj.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= cb * y;
                }
            }
        }
        self.obj = obj;
        self.iterate(w)
    }

    fn solution(&self) -> Vec<BigRational> {
        let mut z = vec![BigRational::zero(); self.width];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.rows[i][self.width].clone();
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn row(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn bounded_maximum() {
        // x + y <= 4, 0 <= x <= 3, y >= 1
        let mut s = Inequalities::new(2);
        s.push(row(&[1, 1]), q(4));
        s.push(row(&[-1, 0]), q(0));
        s.push(row(&[1, 0]), q(3));
        s.push(row(&[0, -1]), q(-1));
        match s.optimize(&row(&[1, 2]), Sense::Maximize) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(8));
                assert!(s.satisfied_by(&point));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            s.optimize(&row(&[0, -1]), Sense::Maximize),
            LpOutcome::Optimal {
                value: q(-1),
                point: row(&[0, 1])
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut s = Inequalities::new(1);
        s.push(row(&[1]), q(0));
        s.push(row(&[-1]), q(-1));
        assert_eq!(s.optimize(&row(&[1]), Sense::Minimize), LpOutcome::Infeasible);
        let mut s = Inequalities::new(1);
        s.push(row(&[1]), q(5));
        assert_eq!(s.optimize(&row(&[1]), Sense::Minimize), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_vertex() {
        // 2x <= 1, -2x <= 1
        let mut s = Inequalities::new(1);
        s.push(row(&[2]), q(1));
        s.push(row(&[-2]), q(1));
        match s.optimize(&row(&[1]), Sense::Maximize) {
            LpOutcome::Optimal { value, .. } => {
                assert_eq!(value, BigRational::new(1.into(), 2.into()))
            }
            other => panic!("{other:?}"),
        }
    }
}
