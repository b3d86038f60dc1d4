//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer entries with overflow-aware arithmetic.
pub trait SnfInt: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn checked_add(&self, x: &Self) -> Option<Self>;
    fn div_trunc(&self, d: &Self) -> Self;
    fn is_multiple_of(&self, d: &Self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl SnfInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn checked_add(&self, x: &Self) -> Option<Self> {
        i128::checked_add(*self, *x)
    }
    fn div_trunc(&self, d: &Self) -> Self {
        *self / *d
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        *self % *d == 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn checked_add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
    fn div_trunc(&self, d: &Self) -> Self {
        self / d
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        Zero::is_zero(&(self % d))
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `U · A · V = S` with `S` diagonal, `d_1 | d_2 | ...`, and `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !Zero::is_zero(*d)).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::from(1)).cloned().collect()
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

fn identity<T: SnfInt>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| T::from_i64((i == j) as i64)).collect()).collect()
}

impl<T: SnfInt> Work<T> {
    fn rows(&self) -> usize {
        self.a.len()
    }
    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        for j in 0..self.cols() {
            if !self.a[t][j].is_zero() {
                self.a[i][j] = self.a[i][j].checked_sub_mul(q, &self.a[t][j])?;
            }
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.len() {
                if !u[t][j].is_zero() {
                    u[i][j] = u[i][j].checked_sub_mul(q, &u[t][j])?;
                }
            }
        }
        Some(())
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        for r in 0..self.rows() {
            if !self.a[r][t].is_zero() {
                self.a[r][j] = self.a[r][j].checked_sub_mul(q, &self.a[r][t])?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].checked_sub_mul(q, &row[t])?;
                }
            }
        }
        Some(())
    }

    fn row_add(&mut self, t: usize, i: usize) -> Option<()> {
        for j in 0..self.cols() {
            self.a[t][j] = self.a[t][j].checked_add(&self.a[i][j])?;
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.len() {
                u[t][j] = u[t][j].checked_add(&u[i][j])?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = x.neg();
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[t] {
                *x = x.neg();
            }
        }
    }

    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&self.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Option<()> {
        let steps = self.rows().min(self.cols());
        for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.smallest_pivot(t) else { return Some(()) };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_trunc(&pivot);
                        self.row_sub(i, t, &q)?;
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_trunc(&pivot);
                        self.col_sub(j, t, &q)?;
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                let offender = (t + 1..self.rows()).find(|&i| (t + 1..self.cols()).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.row_add(t, i)?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        Some(())
    }
}

fn snf_with<T: SnfInt>(a: &[Vec<i64>], track: bool) -> Option<SmithForm> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut w = Work {
        a: a.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect(),
        u: track.then(|| identity(m)),
        v: track.then(|| identity(n)),
    };
    w.run()?;
    let big = |mat: Vec<Vec<T>>| mat.into_iter().map(|r| r.into_iter().map(|x| x.to_bigint()).collect()).collect();
    Some(SmithForm {
        diagonal: (0..m.min(n)).map(|i| w.a[i][i].to_bigint()).collect(),
        u: w.u.map(big).unwrap_or_default(),
        v: w.v.map(big).unwrap_or_default(),
    })
}

/// Smith normal form of an `m × n` integer matrix (rows given as slices).
pub fn smith_normal_form(a: &[Vec<i64>]) -> SmithForm {
    snf_with::<i128>(a, true).unwrap_or_else(|| snf_with::<BigInt>(a, true).expect("bigint arithmetic cannot overflow"))
}

/// Diagonal only; skips the transforms.
pub fn invariant_factors(a: &[Vec<i64>]) -> Vec<BigInt> {
    snf_with::<i128>(a, false).unwrap_or_else(|| snf_with::<BigInt>(a, false).expect("bigint arithmetic cannot overflow")).diagonal
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect()).collect()
}
