//! Circuits (support-minimal vectors) of a rational subspace.
//!
//! The vertices of `{x ∈ V : ‖x‖₁ ≤ 1}` are exactly `±c / ‖c‖₁` for the
//! circuits `c` of `V`. They are found by double description on the lifted
//! cone `{(u, w) ≥ 0 : u - w ∈ V}`, whose extreme rays are the circuit lifts
//! `(c⁺, c⁻)` plus the trivial rays `e_j + e_{n+j}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::rational::Rat;

/// Clears denominators and divides by the content; sign is left as is.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rat::from_integer(lcm.clone())).to_integer()).collect();
    reduce(ints)
}

fn reduce(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Flips the sign so the first nonzero entry is positive.
pub fn sign_normalized(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

#[derive(Clone)]
struct Ray {
    w: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn zero_set(w: &[BigInt]) -> Vec<u64> {
    let mut bits = vec![0u64; w.len().div_ceil(64)];
    for (k, x) in w.iter().enumerate() {
        if x.is_zero() {
            bits[k / 64] |= 1 << (k % 64);
        }
    }
    bits
}

fn ray(w: Vec<BigInt>) -> Ray {
    let zeros = zero_set(&w);
    Ray { w, zeros }
}

fn contains(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(a, b)| a & b == *b)
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|b| b.count_ones() as usize).sum()
}

/// Extreme rays of `{w ≥ 0 : A w = 0}` for integer rows `A` over `dim` coordinates.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rays: Vec<Ray> = (0..dim).map(|k| ray((0..dim).map(|j| BigInt::from((j == k) as i64)).collect())).collect();
    let mut pending: Vec<&Vec<BigInt>> = rows.iter().collect();
    let mut cone_dim = dim;
    let eval =
        |a: &[BigInt], w: &[BigInt]| -> BigInt { a.iter().zip(w).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum() };
    while !pending.is_empty() {
        // next hyperplane: the one creating the fewest candidate pairs
        let (pick, _) = pending
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (mut pos, mut neg) = (0usize, 0usize);
                for r in &rays {
                    let v = eval(a, &r.w);
                    if v.is_positive() {
                        pos += 1;
                    } else if v.is_negative() {
                        neg += 1;
                    }
                }
                (k, pos * neg)
            })
            .min_by_key(|&(_, cost)| cost)
            .expect("pending is nonempty");
        let a = pending.swap_remove(pick);
        let vals: Vec<BigInt> = rays.iter().map(|r| eval(a, &r.w)).collect();
        if vals.iter().all(Zero::is_zero) {
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<Ray> = (0..rays.len()).filter(|&k| vals[k].is_zero()).map(|k| rays[k].clone()).collect();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].zeros.iter().zip(&rays[q].zeros).map(|(x, y)| x & y).collect();
                if popcount(&common) + 2 < cone_dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(t, r)| t != p && t != q && contains(&r.zeros, &common));
                if blocked {
                    continue;
                }
                let (vp, vq) = (&vals[p], &vals[q]);
                let w: Vec<BigInt> = rays[q].w.iter().zip(&rays[p].w).map(|(x, y)| vp * x - vq * y).collect();
                next.push(ray(reduce(w)));
            }
        }
        rays = next;
        cone_dim -= 1;
    }
    rays.into_iter().map(|r| r.w).collect()
}

/// Circuits of the span of `basis` (vectors of length `n`), as sign-normalized
/// primitive integer vectors, sorted.
pub fn circuits(basis: &[Vec<Rat>], n: usize) -> Vec<Vec<BigInt>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let keep: Vec<usize> = (0..n).filter(|&j| basis.iter().any(|b| !b[j].is_zero())).collect();
    let m = keep.len();
    let restricted: Vec<Vec<Rat>> = basis.iter().map(|b| keep.iter().map(|&j| b[j].clone()).collect()).collect();
    // rows spanning the orthogonal complement of V inside the kept coordinates
    let complement = linalg::nullspace(&restricted, m);
    let lifted: Vec<Vec<BigInt>> = complement
        .iter()
        .map(|a| {
            let a = primitive(a);
            a.iter().cloned().chain(a.iter().map(|x| -x)).collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    for w in extreme_rays(&lifted, 2 * m) {
        let x: Vec<BigInt> = (0..m).map(|j| &w[j] - &w[m + j]).collect();
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        let mut full = vec![BigInt::zero(); n];
        for (k, &j) in keep.iter().enumerate() {
            full[j] = x[k].clone();
        }
        out.insert(sign_normalized(reduce(full)));
    }
    out.into_iter().collect()
}

/// The unique (up to scale) nonzero vector of `V` vanishing on `zeros`, if
/// that intersection is one-dimensional. Such a vector is always a circuit.
pub fn circuit_through(basis: &[Vec<Rat>], zeros: &[usize]) -> Option<Vec<BigInt>> {
    let d = basis.len();
    // coefficients t with (Σ t_k b_k)_j = 0 for j in zeros
    let system: Vec<Vec<Rat>> = zeros.iter().map(|&j| basis.iter().map(|b| b[j].clone()).collect()).collect();
    let kernel = if system.is_empty() { (0..d).map(|k| unit(d, k)).collect() } else { linalg::nullspace(&system, d) };
    if kernel.len() != 1 {
        return None;
    }
    let n = basis.first().map_or(0, Vec::len);
    let x: Vec<Rat> = (0..n).map(|j| basis.iter().zip(&kernel[0]).map(|(b, t)| &b[j] * t).sum()).collect();
    Some(sign_normalized(primitive(&x)))
}

fn unit(d: usize, k: usize) -> Vec<Rat> {
    (0..d).map(|j| if j == k { Rat::one() } else { Rat::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    /// Every (d-1)-subset of coordinates cutting V to a line gives a circuit,
    /// and every circuit arises this way.
    fn circuits_by_subsets(basis: &[Vec<Rat>], n: usize) -> Vec<Vec<BigInt>> {
        let d = basis.len();
        let mut out = BTreeSet::new();
        let mut subset: Vec<usize> = (0..d.saturating_sub(1)).collect();
        if d == 0 {
            return Vec::new();
        }
        loop {
            if let Some(c) = circuit_through(basis, &subset) {
                out.insert(c);
            }
            // next combination
            let k = subset.len();
            let mut i = k;
            loop {
                if i == 0 {
                    return out.into_iter().collect();
                }
                i -= 1;
                if subset[i] < n - k + i {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
            if k == 0 {
                return out.into_iter().collect();
            }
        }
    }

    fn basis_of(rows: &[Vec<i64>]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn line_has_one_circuit() {
        let b = basis_of(&[vec![1, 1, -1]]);
        let c = circuits(&b, 3);
        assert_eq!(c, vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]]);
        assert_eq!(c, circuits_by_subsets(&b, 3));
    }

    #[test]
    fn square_cycle_space() {
        // cycles of the complete graph on 4 vertices: dimension 3, 7 circuits
        // (4 triangles and 3 squares)
        let a = linalg::from_ints(&[vec![-1, -1, -1, 0, 0, 0], vec![1, 0, 0, -1, -1, 0], vec![0, 1, 0, 1, 0, -1], vec![0, 0, 1, 0, 1, 1]]);
        let b = linalg::nullspace(&a, 6);
        assert_eq!(b.len(), 3);
        let c = circuits(&b, 6);
        assert_eq!(c.len(), 7);
        assert_eq!(c, circuits_by_subsets(&b, 6));
    }

    #[test]
    fn agrees_with_subset_oracle_on_random_subspaces() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..8);
            let d = rng.gen_range(1..n.min(5));
            let b: Vec<Vec<Rat>> = (0..d).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
            let basis = linalg::nullspace(&linalg::nullspace(&b, n), n);
            assert_eq!(circuits(&basis, n), circuits_by_subsets(&basis, n));
        }
    }
}
