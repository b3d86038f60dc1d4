//! Exact dense linear algebra over the rationals.
//!
//! Elimination runs on overflow-checked word rationals and falls back to
//! arbitrary precision when a word overflows.

use num_traits::Zero;

use crate::rational::{Field, Rat, SmallRat};

pub type Matrix = Vec<Vec<Rat>>;

pub fn from_ints(a: &[Vec<i64>]) -> Matrix {
    a.iter().map(|r| r.iter().map(|&x| crate::rational::int(x)).collect()).collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn lower<F: Field>(a: &[Vec<Rat>]) -> Option<Vec<Vec<F>>> {
    a.iter().map(|r| r.iter().map(F::from_rat).collect()).collect()
}

/// Gauss-Jordan elimination restricted to the first `pivot_cols` columns.
fn rref_generic<F: Field>(mut m: Vec<Vec<F>>, pivot_cols: usize) -> Option<(Vec<Vec<F>>, Vec<usize>)> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| !m[k][c].is_nil()) else { continue };
        m.swap(r, k);
        let inv = F::unit().over(&m[r][c])?;
        for x in m[r].iter_mut() {
            if !x.is_nil() {
                *x = x.times(&inv)?;
            }
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k == r || row[c].is_nil() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_nil() {
                    *x = x.minus(&f.times(y)?)?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Some((m, pivots))
}

/// Reduced row echelon form over the first `pivot_cols` columns, and the pivot columns.
pub fn rref(a: &[Vec<Rat>], pivot_cols: usize) -> (Matrix, Vec<usize>) {
    if let Some(small) = lower::<SmallRat>(a) {
        if let Some((m, piv)) = rref_generic(small, pivot_cols) {
            return (m.iter().map(|r| r.iter().map(Field::to_rat).collect()).collect(), piv);
        }
    }
    rref_generic(a.to_vec(), pivot_cols).expect("big rationals do not overflow")
}

pub fn rank(a: &[Vec<Rat>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    rref(a, cols).1.len()
}

/// A basis of `{x : A x = 0}` for an `m × cols` matrix.
pub fn nullspace(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(a, cols);
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..cols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = crate::rational::int(1);
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Either `x` with `A x = b`, or `y` with `yᵀ A = 0` and `yᵀ b = 1`.
pub fn solve_or_certify(a: &[Vec<Rat>], cols: usize, b: &[Rat]) -> Result<Vec<Rat>, Vec<Rat>> {
    let m = a.len();
    let aug: Matrix = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let mut r = row.clone();
            r.push(bi.clone());
            r.extend((0..m).map(|k| crate::rational::int((k == i) as i64)));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, cols);
    let rank = pivots.len();
    if let Some(row) = (rank..m).find(|&k| !r[k][cols].is_zero()) {
        let scale = r[row][cols].clone();
        return Err(r[row][cols + 1..].iter().map(|y| y / &scale).collect());
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r[row][cols].clone();
    }
    Ok(x)
}

pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(x).fold(Rat::zero(), |acc, (p, q)| acc + p * q)).collect()
}
