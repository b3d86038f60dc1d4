//! Exact primal simplex for `min ‖x‖₁ subject to A x = b`.
//!
//! Each free variable `x_j` is split as `x_j⁺ - x_j⁻`. Only one of the two
//! columns is stored: a variable entering in the negative direction has its
//! tableau column negated and its orientation flipped. Both phases use
//! Bland's rule, so the method terminates. Arithmetic first runs on
//! overflow-checked word rationals and restarts on big rationals when a word
//! overflows.

use crate::rational::{Field, Rat, SmallRat};

/// `A` given by sparse columns over `rows` rows.
#[derive(Debug, Clone)]
pub struct L1Problem {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, Rat)>>,
    pub rhs: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum L1Outcome {
    /// Optimal `x`, objective value, and dual `y` with `|Aᵀy|_∞ ≤ 1`, `yᵀb = value`.
    Optimal { x: Vec<Rat>, value: Rat, dual: Vec<Rat>, pivots: usize },
    /// `y` with `yᵀA = 0` and `yᵀb > 0`.
    Infeasible { farkas: Vec<Rat> },
}

struct Tableau<F> {
    m: usize,
    n: usize,
    t: Vec<Vec<F>>,
    obj: Vec<F>,
    basis: Vec<usize>,
    orient: Vec<bool>,
    is_basic: Vec<bool>,
    row_sign: Vec<bool>,
    pivots: usize,
}

fn var_order(col: usize, negative: bool, n: usize) -> usize {
    if col < n {
        2 * col + negative as usize
    } else {
        2 * n + (col - n)
    }
}

impl<F: Field> Tableau<F> {
    fn new(p: &L1Problem) -> Option<Self> {
        let m = p.rows;
        let n = p.columns.len();
        let width = n + m + 1;
        let mut t = vec![vec![F::nil(); width]; m];
        let row_sign: Vec<bool> = p.rhs.iter().map(|b| b < &Rat::nil()).collect();
        for (j, col) in p.columns.iter().enumerate() {
            for (i, a) in col {
                let v = F::from_rat(a)?;
                t[*i][j] = if row_sign[*i] { v.negated() } else { v };
            }
        }
        for i in 0..m {
            t[i][n + i] = F::unit();
            let b = F::from_rat(&p.rhs[i])?;
            t[i][width - 1] = if row_sign[i] { b.negated() } else { b };
        }
        let mut obj = vec![F::nil(); width];
        for row in &t {
            for (k, x) in row.iter().enumerate() {
                if k < n || k == width - 1 {
                    if !x.is_nil() {
                        obj[k] = obj[k].minus(x)?;
                    }
                }
            }
        }
        let mut is_basic = vec![false; n + m];
        for i in 0..m {
            is_basic[n + i] = true;
        }
        Some(Tableau { m, n, t, obj, basis: (n..n + m).collect(), orient: vec![false; n], is_basic, row_sign, pivots: 0 })
    }

    fn rhs(&self) -> usize {
        self.n + self.m
    }

    fn pivot(&mut self, r: usize, e: usize) -> Option<()> {
        self.pivots += 1;
        let width = self.rhs() + 1;
        let inv = F::unit().over(&self.t[r][e])?;
        for x in self.t[r].iter_mut() {
            if !x.is_nil() {
                *x = x.times(&inv)?;
            }
        }
        let nz: Vec<usize> = (0..width).filter(|&k| !self.t[r][k].is_nil()).collect();
        let pivot_row = self.t[r].clone();
        for i in 0..self.m {
            if i == r || self.t[i][e].is_nil() {
                continue;
            }
            let f = self.t[i][e].clone();
            let row = &mut self.t[i];
            for &k in &nz {
                row[k] = row[k].minus(&f.times(&pivot_row[k])?)?;
            }
        }
        if !self.obj[e].is_nil() {
            let f = self.obj[e].clone();
            for &k in &nz {
                self.obj[k] = self.obj[k].minus(&f.times(&pivot_row[k])?)?;
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.basis[r] = e;
        self.is_basic[e] = true;
        Some(())
    }

    fn flip(&mut self, j: usize, phase_two: bool) -> Option<()> {
        for row in self.t.iter_mut() {
            if !row[j].is_nil() {
                row[j] = row[j].negated();
            }
        }
        // new reduced cost: phase one 0 - (-π) = -d, phase two 2 - d
        self.obj[j] = if phase_two { F::unit().plus(&F::unit())?.minus(&self.obj[j])? } else { self.obj[j].negated() };
        self.orient[j] = !self.orient[j];
        Some(())
    }

    /// Bland entering choice over original columns, returning (column, needs flip).
    fn entering(&self, phase_two: bool) -> Option<Option<(usize, bool)>> {
        let two = F::unit().plus(&F::unit())?;
        let mut best: Option<(usize, usize, bool)> = None;
        for j in 0..self.n {
            if self.is_basic[j] {
                continue;
            }
            let d = &self.obj[j];
            let d_opp = if phase_two { two.minus(d)? } else { d.negated() };
            for (cand, flip) in [(d, false), (&d_opp, true)] {
                if cand.is_neg() {
                    let order = var_order(j, self.orient[j] ^ flip, self.n);
                    if best.map_or(true, |(o, _, _)| order < o) {
                        best = Some((order, j, flip));
                    }
                }
            }
        }
        Some(best.map(|(_, j, f)| (j, f)))
    }

    fn leaving(&self, e: usize) -> Option<Option<usize>> {
        let rhs = self.rhs();
        let mut best: Option<(usize, F)> = None;
        for i in 0..self.m {
            let a = &self.t[i][e];
            if !a.is_pos() {
                continue;
            }
            let ratio = self.t[i][rhs].over(a)?;
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.order_of(self.basis[i]) < self.order_of(self.basis[*bi])),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        Some(best.map(|(i, _)| i))
    }

    fn order_of(&self, col: usize) -> usize {
        var_order(col, col < self.n && self.orient[col], self.n)
    }

    /// Runs simplex iterations; Some(true) at optimality, Some(false) if unbounded.
    fn iterate(&mut self, phase_two: bool) -> Option<bool> {
        loop {
            let Some((e, flip)) = self.entering(phase_two)? else { return Some(true) };
            if flip {
                self.flip(e, phase_two)?;
            }
            let Some(r) = self.leaving(e)? else { return Some(false) };
            self.pivot(r, e)?;
        }
    }

    fn solve(mut self) -> Option<L1Outcome> {
        let rhs = self.rhs();
        self.iterate(false)?;
        // obj[rhs] holds minus the phase-one objective
        if !self.obj[rhs].is_nil() {
            let farkas = (0..self.m)
                .map(|i| {
                    let y = F::unit().minus(&self.obj[self.n + i])?.to_rat();
                    Some(if self.row_sign[i] { -y } else { y })
                })
                .collect::<Option<Vec<_>>>()?;
            return Some(L1Outcome::Infeasible { farkas });
        }
        for r in 0..self.m {
            if self.basis[r] >= self.n {
                if let Some(j) = (0..self.n).find(|&j| !self.is_basic[j] && !self.t[r][j].is_nil()) {
                    self.pivot(r, j)?;
                }
            }
        }
        // phase two costs: 1 on every stored original orientation, 0 on artificials
        let mut obj = vec![F::nil(); rhs + 1];
        for j in 0..self.n {
            obj[j] = F::unit();
        }
        for r in 0..self.m {
            if self.basis[r] < self.n {
                for (k, x) in self.t[r].iter().enumerate() {
                    if !x.is_nil() {
                        obj[k] = obj[k].minus(x)?;
                    }
                }
            }
        }
        self.obj = obj;
        let bounded = self.iterate(true)?;
        debug_assert!(bounded, "ℓ¹ objective is bounded below");
        let mut x = vec![Rat::nil(); self.n];
        for r in 0..self.m {
            let j = self.basis[r];
            if j < self.n {
                let v = self.t[r][rhs].to_rat();
                x[j] = if self.orient[j] { -v } else { v };
            }
        }
        let dual = (0..self.m)
            .map(|i| {
                let y = self.obj[self.n + i].negated().to_rat();
                if self.row_sign[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        let value = self.obj[rhs].negated().to_rat();
        Some(L1Outcome::Optimal { x, value, dual, pivots: self.pivots })
    }
}

/// Solves `min ‖x‖₁ s.t. A x = b` exactly.
pub fn min_l1(problem: &L1Problem) -> L1Outcome {
    if let Some(out) = Tableau::<SmallRat>::new(problem).and_then(Tableau::solve) {
        return out;
    }
    Tableau::<Rat>::new(problem).and_then(Tableau::solve).expect("big rationals do not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use num_traits::Zero;

    fn prob(rows: usize, cols: &[&[(usize, i64)]], rhs: &[i64]) -> L1Problem {
        L1Problem {
            rows,
            columns: cols.iter().map(|c| c.iter().map(|&(i, v)| (i, int(v))).collect()).collect(),
            rhs: rhs.iter().map(|&v| int(v)).collect(),
        }
    }

    #[test]
    fn picks_cheapest_representation() {
        // x0 + 2 x1 = 4: optimum x1 = 2, value 2
        let p = prob(1, &[&[(0, 1)], &[(0, 2)]], &[4]);
        match min_l1(&p) {
            L1Outcome::Optimal { x, value, dual, .. } => {
                assert_eq!(value, int(2));
                assert_eq!(x, vec![int(0), int(2)]);
                assert_eq!(dual, vec![frac(1, 2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_direction() {
        // x0 - x1 = -3 with x0 + x1 = 1: x0 = -1, x1 = 2
        let p = prob(2, &[&[(0, 1), (1, 1)], &[(0, -1), (1, 1)]], &[-3, 1]);
        match min_l1(&p) {
            L1Outcome::Optimal { x, value, .. } => {
                assert_eq!(x, vec![int(-1), int(2)]);
                assert_eq!(value, int(3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_has_farkas_vector() {
        // x0 = 1 and x0 = 2
        let p = prob(2, &[&[(0, 1), (1, 1)]], &[1, 2]);
        match min_l1(&p) {
            L1Outcome::Infeasible { farkas } => {
                let ya = &farkas[0] + &farkas[1];
                assert!(ya.is_zero());
                assert!(&farkas[0] + &farkas[1] * int(2) > Rat::zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = prob(3, &[&[(0, 1), (1, 1), (2, 2)], &[(0, 1), (1, 1), (2, 2)]], &[1, 1, 2]);
        match min_l1(&p) {
            L1Outcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
    }
}
