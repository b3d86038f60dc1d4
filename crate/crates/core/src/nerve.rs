//! Nerves of finite posets and finite monoids.
//!
//! Poset nerves keep degenerate chains (repeated entries) as simplices, and
//! `d_i` deletes entry `i`. Monoid nerves use the bar-construction faces:
//! `d_0` drops the first entry, `d_n` the last, and inner faces multiply
//! neighbours.

use std::collections::HashMap;

use crate::complex::{Chain, SemisimplicialSet, SimplicialMap};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// The truncated nerve of a poset together with the chain each simplex stands for.
#[derive(Debug, Clone)]
pub struct PosetNerve {
    poset: FinitePoset,
    complex: SemisimplicialSet,
    tuples: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

pub fn nerve_of_poset(poset: &FinitePoset, max_dim: usize) -> PosetNerve {
    PosetNerve::new(poset.clone(), max_dim)
}

impl PosetNerve {
    pub fn new(poset: FinitePoset, max_dim: usize) -> Self {
        let order = poset.linear_extension();
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![order.iter().map(|&x| vec![x]).collect()];
        for p in 1..=max_dim {
            let mut level = Vec::new();
            for t in &tuples[p - 1] {
                let last = *t.last().unwrap();
                for &y in &order {
                    if poset.leq(last, y) {
                        let mut u = t.clone();
                        u.push(y);
                        level.push(u);
                    }
                }
            }
            tuples.push(level);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> =
            tuples.iter().map(|l| l.iter().enumerate().map(|(s, t)| (t.clone(), s)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for p in 1..=max_dim {
            faces.push(
                tuples[p]
                    .iter()
                    .map(|t| {
                        (0..=p)
                            .map(|i| {
                                let mut u = t.clone();
                                u.remove(i);
                                index[p - 1][&u]
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        let labels = tuples
            .iter()
            .map(|l| l.iter().map(|t| format!("({})", t.iter().map(|&x| poset.label(x)).collect::<Vec<_>>().join(","))).collect())
            .collect();
        let counts = tuples.iter().map(Vec::len).collect();
        let complex = SemisimplicialSet::new(counts, faces, Some(labels)).expect("poset nerves satisfy the identities");
        PosetNerve { poset, complex, tuples, index }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn complex(&self) -> &SemisimplicialSet {
        &self.complex
    }

    pub fn max_dim(&self) -> usize {
        self.complex.max_dim()
    }

    pub fn tuple(&self, p: usize, s: usize) -> &[usize] {
        &self.tuples[p][s]
    }

    pub fn tuples(&self, p: usize) -> &[Vec<usize>] {
        &self.tuples[p]
    }

    /// Simplex id of a weakly increasing tuple, if it lies in the truncation.
    pub fn id_of(&self, tuple: &[usize]) -> Option<usize> {
        let p = tuple.len().checked_sub(1)?;
        self.index.get(p)?.get(tuple).copied()
    }

    pub fn chain_from_tuples<'a, I>(&self, level: usize, terms: I) -> Result<Chain>
    where
        I: IntoIterator<Item = (&'a [usize], crate::rational::Rat)>,
    {
        let mut c = Chain::zero(level);
        for (t, q) in terms {
            if t.len() != level + 1 {
                return Err(Error::LevelMismatch(format!("tuple of length {} in level {level}", t.len())));
            }
            let s = self.id_of(t).ok_or_else(|| Error::InvalidInput(format!("{t:?} is not a chain of the poset")))?;
            c.add_term(s, &q);
        }
        Ok(c)
    }

    /// Simplicial map of nerves induced by an order-preserving map `self.poset -> target.poset`.
    pub fn induced_map(&self, target: &PosetNerve, map: &[usize]) -> Result<SimplicialMap> {
        if map.len() != self.poset.len() || !self.poset.is_monotone_into(&target.poset, map) {
            return Err(Error::InvalidInput("element map is not order-preserving".into()));
        }
        let images = (0..=self.max_dim())
            .map(|p| {
                self.tuples[p]
                    .iter()
                    .map(|t| {
                        let u: Vec<usize> = t.iter().map(|&x| map[x]).collect();
                        target.id_of(&u).ok_or_else(|| Error::TruncationTooShallow { needed: p, max_dim: target.max_dim() })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(&self.complex, &target.complex, images)
    }

    /// True when every entry of every simplex in `z` lies in `allowed`.
    pub fn supported_on(&self, z: &Chain, allowed: &[bool]) -> bool {
        z.support().all(|s| self.tuples[z.level][s].iter().all(|&x| allowed[x]))
    }
}

/// A multiplication on some element type; the nerve faces only need this.
pub trait Monoid {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// `d_i` on a bar-construction tuple `(g_1, ..., g_n)`.
pub fn bar_face<M: Monoid>(m: &M, tuple: &[M::Elem], i: usize) -> Vec<M::Elem> {
    let n = tuple.len();
    assert!(i <= n, "face index {i} out of range for a {n}-tuple");
    if i == 0 {
        tuple[1..].to_vec()
    } else if i == n {
        tuple[..n - 1].to_vec()
    } else {
        let mut out = tuple[..i - 1].to_vec();
        out.push(m.mul(&tuple[i - 1], &tuple[i]));
        out.extend_from_slice(&tuple[i + 1..]);
        out
    }
}

/// Outcome of checking `d_i d_j = d_{j-1} d_i` on a set of tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    /// First failing `(tuple index, i, j)`.
    pub failure: Option<(usize, usize, usize)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_bar_identities<M: Monoid>(m: &M, tuples: &[Vec<M::Elem>]) -> IdentityReport {
    let mut checked = 0;
    for (k, t) in tuples.iter().enumerate() {
        let n = t.len();
        if n < 2 {
            continue;
        }
        for j in 1..=n {
            for i in 0..j {
                checked += 1;
                let lhs = bar_face(m, &bar_face(m, t, j), i);
                let rhs = bar_face(m, &bar_face(m, t, i), j - 1);
                if lhs != rhs {
                    return IdentityReport { checked, failure: Some((k, i, j)) };
                }
            }
        }
    }
    IdentityReport { checked, failure: None }
}

/// A finite monoid given by its full composition table `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMonoid {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl TableMonoid {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("composition table must be square with entries in range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or(Error::NoIdentity)?;
        Ok(TableMonoid { table, identity })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

impl Monoid for TableMonoid {
    type Elem = usize;
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
}

/// Nerve of a finite monoid truncated at `max_dim`; tuples are indexed lexicographically.
pub fn nerve_of_monoid(m: &TableMonoid, max_dim: usize) -> SemisimplicialSet {
    let n = m.order();
    let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &g| acc * n + g);
    let decode = |mut code: usize, p: usize| {
        let mut t = vec![0; p];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    };
    let counts: Vec<usize> = (0..=max_dim).map(|p| n.pow(p as u32)).collect();
    let mut faces = vec![Vec::new()];
    for p in 1..=max_dim {
        faces.push(
            (0..counts[p])
                .map(|code| {
                    let t = decode(code, p);
                    (0..=p).map(|i| encode(&bar_face(m, &t, i))).collect()
                })
                .collect(),
        );
    }
    SemisimplicialSet::new(counts, faces, None).expect("bar construction of an associative table is semisimplicial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_nerve_has_only_loops() {
        let p = FinitePoset::from_pairs(2, &[]).unwrap();
        let n = nerve_of_poset(&p, 1);
        assert_eq!(n.complex().counts(), &[2, 2]);
        assert!(n.id_of(&[0, 0]).is_some() && n.id_of(&[0, 1]).is_none());
    }

    #[test]
    fn two_chain_nerve() {
        let p = FinitePoset::from_pairs(2, &[(0, 1)]).unwrap();
        let n = nerve_of_poset(&p, 1);
        assert_eq!(n.complex().counts(), &[2, 3]);
        for t in [[0, 0], [0, 1], [1, 1]] {
            assert!(n.id_of(&t).is_some());
        }
    }

    #[test]
    fn v_poset_nerve_has_five_edges() {
        let p = FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let n = nerve_of_poset(&p, 2);
        assert_eq!(n.complex().count(0), 3);
        assert_eq!(n.complex().count(1), 5);
        assert!(n.id_of(&[0, 1]).is_none() && n.id_of(&[1, 0]).is_none());
    }

    #[test]
    fn nerve_faces_delete_entries() {
        let p = FinitePoset::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let n = nerve_of_poset(&p, 2);
        let s = n.id_of(&[0, 1, 2]).unwrap();
        let x = n.complex();
        assert_eq!(n.tuple(1, x.face(2, s, 0)), &[1, 2]);
        assert_eq!(n.tuple(1, x.face(2, s, 1)), &[0, 2]);
        assert_eq!(n.tuple(1, x.face(2, s, 2)), &[0, 1]);
    }

    #[test]
    fn trivial_monoid_nerve_is_a_point_per_level() {
        let m = TableMonoid::new(vec![vec![0]]).unwrap();
        assert_eq!(nerve_of_monoid(&m, 3).counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn idempotent_inner_face() {
        // {1, e} with e·e = e; index 0 is the identity
        let m = TableMonoid::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(bar_face(&m, &[1, 1], 1), vec![1]);
        let x = nerve_of_monoid(&m, 4);
        assert_eq!(x.counts(), &[1, 2, 4, 8, 16]);
    }

    #[test]
    fn monoid_axioms_are_checked() {
        // left-zero semigroup on two elements has no identity
        assert!(matches!(TableMonoid::new(vec![vec![0, 0], vec![1, 1]]), Err(Error::NoIdentity)));
        // a non-associative table
        let err = TableMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }
}
