//! Finite truncated semisimplicial sets, chains, and simplicial maps.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub level: usize,
    pub index: usize,
}

/// A semisimplicial set truncated at `max_dim`.
///
/// `faces[p][s]` lists the `p + 1` faces `d_0 s, ..., d_p s` of simplex `s`
/// in level `p` (empty for `p = 0`). Construction goes through
/// [`SemisimplicialSet::new`], which checks totality and the simplicial
/// identities, so every value of this type is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimplicialSet {
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    labels: Vec<Vec<String>>,
}

impl SemisimplicialSet {
    /// Validates face tables. `faces[p]` must have `counts[p]` rows of length `p + 1`
    /// (`faces[0]` is ignored and may be empty).
    pub fn new(counts: Vec<usize>, mut faces: Vec<Vec<Vec<usize>>>, labels: Option<Vec<Vec<String>>>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidInput("a complex needs at least level 0".into()));
        }
        faces.resize(counts.len(), Vec::new());
        faces[0].clear();
        for p in 1..counts.len() {
            if faces[p].len() != counts[p] {
                return Err(Error::InvalidInput(format!("level {p} has {} simplices but {} face rows", counts[p], faces[p].len())));
            }
            for (s, row) in faces[p].iter().enumerate() {
                if row.len() != p + 1 {
                    return Err(Error::InvalidInput(format!("simplex {s} of level {p} has {} faces, expected {}", row.len(), p + 1)));
                }
                for (i, &t) in row.iter().enumerate() {
                    if t >= counts[p - 1] {
                        return Err(Error::DanglingFace { level: p, face: i, simplex: s, target: t });
                    }
                }
            }
        }
        let labels = match labels {
            Some(mut l) => {
                l.resize(counts.len(), Vec::new());
                for (p, level) in l.iter_mut().enumerate() {
                    if level.len() != counts[p] {
                        *level = (0..counts[p]).map(|s| format!("{p}:{s}")).collect();
                    }
                }
                l
            }
            None => counts.iter().enumerate().map(|(p, &n)| (0..n).map(|s| format!("{p}:{s}")).collect()).collect(),
        };
        let x = SemisimplicialSet { counts, faces, labels };
        x.check_identities()?;
        Ok(x)
    }

    fn check_identities(&self) -> Result<()> {
        for p in 2..self.counts.len() {
            for s in 0..self.counts[p] {
                for j in 1..=p {
                    for i in 0..j {
                        let lhs = self.face(p - 1, self.face(p, s, j), i);
                        let rhs = self.face(p - 1, self.face(p, s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::IdentityViolation { i, j, level: p, simplex: s });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn max_dim(&self) -> usize {
        self.counts.len() - 1
    }

    /// Number of simplices in level `p` (zero above the truncation).
    pub fn count(&self, p: usize) -> usize {
        self.counts.get(p).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_simplices(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `d_i` of simplex `s` in level `p >= 1`.
    pub fn face(&self, p: usize, s: usize, i: usize) -> usize {
        self.faces[p][s][i]
    }

    pub fn faces_of(&self, p: usize, s: usize) -> &[usize] {
        &self.faces[p][s]
    }

    pub fn label(&self, id: SimplexId) -> &str {
        &self.labels[id.level][id.index]
    }

    pub fn labels(&self, p: usize) -> &[String] {
        &self.labels[p]
    }

    pub fn ensure_level(&self, needed: usize) -> Result<()> {
        if self.max_dim() < needed {
            Err(Error::TruncationTooShallow { needed, max_dim: self.max_dim() })
        } else {
            Ok(())
        }
    }

    fn check_chain(&self, z: &Chain) -> Result<()> {
        if z.level > self.max_dim() {
            return Err(Error::LevelMismatch(format!("chain level {} above truncation {}", z.level, self.max_dim())));
        }
        if let Some((&s, _)) = z.coeffs.iter().next_back() {
            if s >= self.count(z.level) {
                return Err(Error::LevelMismatch(format!("simplex {s} is not in level {}", z.level)));
            }
        }
        Ok(())
    }

    /// `∂z = Σ_i (-1)^i d_i z` for `z` in level `p >= 1`.
    pub fn boundary(&self, z: &Chain) -> Result<Chain> {
        if z.level == 0 {
            return Err(Error::LevelMismatch("boundary of a 0-chain is the augmentation".into()));
        }
        self.check_chain(z)?;
        let p = z.level;
        let mut out = Chain::zero(p - 1);
        for (&s, c) in &z.coeffs {
            for (i, &t) in self.faces[p][s].iter().enumerate() {
                if i % 2 == 0 {
                    out.add_term(t, c);
                } else {
                    out.add_term(t, &-c);
                }
            }
        }
        Ok(out)
    }

    /// Sum of coefficients of a 0-chain.
    pub fn augment(&self, z: &Chain) -> Result<Rat> {
        if z.level != 0 {
            return Err(Error::LevelMismatch(format!("augmentation needs a 0-chain, got level {}", z.level)));
        }
        self.check_chain(z)?;
        Ok(z.coeffs.values().fold(Rat::zero(), |acc, c| acc + c))
    }

    /// True when `z` has zero augmented boundary.
    pub fn is_reduced_cycle(&self, z: &Chain) -> Result<bool> {
        if z.level == 0 {
            Ok(self.augment(z)?.is_zero())
        } else {
            Ok(self.boundary(z)?.is_zero())
        }
    }

    pub fn require_cycle(&self, z: &Chain) -> Result<()> {
        if self.is_reduced_cycle(z)? {
            Ok(())
        } else {
            Err(Error::NotACycle)
        }
    }

    /// Integer matrix of the augmented boundary `C_p -> C_{p-1}` (rows = level `p - 1`,
    /// or a single augmentation row when `p = 0`).
    pub fn boundary_matrix(&self, p: usize) -> Vec<Vec<i64>> {
        if p == 0 {
            return vec![vec![1; self.count(0)]];
        }
        let mut m = vec![vec![0i64; self.count(p)]; self.count(p - 1)];
        if p <= self.max_dim() {
            for s in 0..self.count(p) {
                for (i, &t) in self.faces[p][s].iter().enumerate() {
                    m[t][s] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        m
    }

    /// Sparse columns of the augmented boundary; column `s` is `∂(s)` as `(row, coefficient)`.
    pub fn boundary_columns(&self, p: usize) -> Vec<Vec<(usize, i64)>> {
        (0..self.count(p))
            .map(|s| {
                if p == 0 {
                    return vec![(0, 1)];
                }
                let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                for (i, &t) in self.faces[p][s].iter().enumerate() {
                    *col.entry(t).or_default() += if i % 2 == 0 { 1 } else { -1 };
                }
                col.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }
}

/// A finite rational combination of simplices of one level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub level: usize,
    coeffs: BTreeMap<usize, Rat>,
}

/// A linear functional on level-`p` chains, in the dual of the simplex basis.
pub type Cochain = Chain;

impl Chain {
    pub fn zero(level: usize) -> Self {
        Chain { level, coeffs: BTreeMap::new() }
    }

    pub fn simplex(level: usize, index: usize) -> Self {
        let mut c = Chain::zero(level);
        c.add_term(index, &crate::rational::int(1));
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rat)>>(level: usize, terms: I) -> Self {
        let mut c = Chain::zero(level);
        for (s, q) in terms {
            c.add_term(s, &q);
        }
        c
    }

    pub fn from_ints(level: usize, terms: &[(usize, i64)]) -> Self {
        Chain::from_terms(level, terms.iter().map(|&(s, q)| (s, crate::rational::int(q))))
    }

    pub fn add_term(&mut self, s: usize, q: &Rat) {
        if q.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn coeff(&self, s: usize) -> Rat {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(&s, q)| (s, q))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// ℓ¹ norm.
    pub fn norm(&self) -> Rat {
        self.coeffs.values().fold(Rat::zero(), |acc, q| acc + q.abs())
    }

    pub fn scaled(&self, lambda: &Rat) -> Chain {
        if lambda.is_zero() {
            return Chain::zero(self.level);
        }
        Chain { level: self.level, coeffs: self.coeffs.iter().map(|(&s, q)| (s, q * lambda)).collect() }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        debug_assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (s, q) in other.terms() {
            out.add_term(s, q);
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        debug_assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (s, q) in other.terms() {
            out.add_term(s, &-q);
        }
        out
    }

    /// Evaluates a functional on this chain.
    pub fn pair(&self, functional: &Cochain) -> Rat {
        self.terms().fold(Rat::zero(), |acc, (s, q)| acc + q * functional.coeff(s))
    }

    /// Dense coefficient vector of length `n`.
    pub fn dense(&self, n: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        for (s, q) in self.terms() {
            v[s] = q.clone();
        }
        v
    }
}

/// Level-wise images of a simplicial map; validated against its source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    images: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(source: &SemisimplicialSet, target: &SemisimplicialSet, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != source.max_dim() + 1 || target.max_dim() < source.max_dim() {
            return Err(Error::InvalidInput("simplicial map must cover every source level".into()));
        }
        for (p, level) in images.iter().enumerate() {
            if level.len() != source.count(p) {
                return Err(Error::InvalidInput(format!("map is not total on level {p}")));
            }
            if let Some(&t) = level.iter().find(|&&t| t >= target.count(p)) {
                return Err(Error::InvalidInput(format!("image {t} missing from target level {p}")));
            }
        }
        for p in 1..images.len() {
            for s in 0..source.count(p) {
                for i in 0..=p {
                    if images[p - 1][source.face(p, s, i)] != target.face(p, images[p][s], i) {
                        return Err(Error::InvalidInput(format!("map does not commute with d_{i} on simplex {s} of level {p}")));
                    }
                }
            }
        }
        Ok(SimplicialMap { images })
    }

    pub fn image(&self, p: usize, s: usize) -> usize {
        self.images[p][s]
    }

    pub fn max_dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn apply(&self, z: &Chain) -> Chain {
        let mut out = Chain::zero(z.level);
        for (s, q) in z.terms() {
            out.add_term(self.images[z.level][s], q);
        }
        out
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    pub(crate) fn hollow_triangle() -> SemisimplicialSet {
        // vertices a b c; edges ab, bc, ac with d_0 = target, d_1 = source
        SemisimplicialSet::new(vec![3, 3], vec![vec![], vec![vec![1, 0], vec![2, 1], vec![2, 0]]], None).unwrap()
    }

    #[test]
    fn single_vertex() {
        let x = SemisimplicialSet::new(vec![1], vec![], None).unwrap();
        assert_eq!(x.max_dim(), 0);
        assert_eq!(x.total_simplices(), 1);
    }

    #[test]
    fn edge_boundary_is_target_minus_source() {
        let x = hollow_triangle();
        let b = x.boundary(&Chain::simplex(1, 0)).unwrap();
        assert_eq!(b, Chain::from_ints(0, &[(1, 1), (0, -1)]));
    }

    #[test]
    fn triangle_cycle_has_zero_boundary() {
        let x = hollow_triangle();
        let z = Chain::from_ints(1, &[(0, 1), (1, 1), (2, -1)]);
        assert!(x.boundary(&z).unwrap().is_zero());
    }

    #[test]
    fn degenerate_edge_has_zero_boundary() {
        let x = SemisimplicialSet::new(vec![1, 1], vec![vec![], vec![vec![0, 0]]], None).unwrap();
        assert!(x.boundary(&Chain::simplex(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn broken_identity_is_rejected() {
        // two edges e0 = (0 -> 1), e1 = (1 -> 2) and a 2-simplex whose faces disagree at d_0 d_1 vs d_0 d_0
        let err = SemisimplicialSet::new(vec![3, 3, 1], vec![vec![], vec![vec![1, 0], vec![2, 1], vec![2, 0]], vec![vec![1, 1, 0]]], None)
            .unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { .. }));
    }

    #[test]
    fn dangling_face_is_rejected() {
        let err = SemisimplicialSet::new(vec![2, 1], vec![vec![], vec![vec![1, 5]]], None).unwrap_err();
        assert!(matches!(err, Error::DanglingFace { target: 5, .. }));
    }

    #[test]
    fn augmentation() {
        let x = hollow_triangle();
        assert_eq!(x.augment(&Chain::from_ints(0, &[(0, 1), (1, -1)])).unwrap(), int(0));
        assert_eq!(x.augment(&Chain::from_ints(0, &[(0, 3)])).unwrap(), int(3));
        assert_eq!(x.augment(&Chain::zero(0)).unwrap(), int(0));
        assert!(x.augment(&Chain::zero(1)).is_err());
    }

    #[test]
    fn level_mismatch_on_foreign_ids() {
        let x = hollow_triangle();
        assert!(matches!(x.boundary(&Chain::simplex(1, 7)), Err(Error::LevelMismatch(_))));
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let mut c = Chain::from_ints(0, &[(0, 2)]);
        c.add_term(0, &int(-2));
        assert!(c.is_empty());
        assert_eq!(c.norm(), int(0));
    }
}
