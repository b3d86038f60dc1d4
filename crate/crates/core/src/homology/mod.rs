//! Reduced integral homology, rational cohomology, and boundary tests.

mod snf;

pub use snf::{invariant_factors, mat_mul, smith_normal_form, SmithForm, SnfInt};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Chain, Cochain, SemisimplicialSet};
#[cfg(test)]
use crate::error::Error;
use crate::error::Result;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub level: usize,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl HomologyResult {
    pub fn vanishes(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// `H̃_p(X; ℤ)` from the augmented chain complex; needs levels up to `p + 1`.
pub fn reduced_homology(x: &SemisimplicialSet, p: usize) -> Result<HomologyResult> {
    x.ensure_level(p + 1)?;
    let rank_in = invariant_factors(&x.boundary_matrix(p)).iter().filter(|d| !Zero::is_zero(*d)).count();
    let out = invariant_factors(&x.boundary_matrix(p + 1));
    let rank_out = out.iter().filter(|d| !Zero::is_zero(*d)).count();
    let one = BigInt::from(1);
    Ok(HomologyResult { level: p, betti: x.count(p) - rank_in - rank_out, torsion: out.into_iter().filter(|d| *d > one).collect() })
}

/// Dimension of reduced rational cohomology in degree `p`, computed on the
/// dual (coboundary) matrices.
pub fn cohomology_betti(x: &SemisimplicialSet, p: usize) -> Result<usize> {
    x.ensure_level(p + 1)?;
    let coboundary_rank = |q: usize| {
        let m = x.boundary_matrix(q);
        let cols = if q == 0 { x.count(0) } else { x.count(q) };
        linalg::rank(&linalg::transpose(&linalg::from_ints(&m), cols))
    };
    Ok(x.count(p) - coboundary_rank(p + 1) - coboundary_rank(p))
}

/// Outcome of [`is_boundary`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryWitness {
    /// `∂c = z`.
    Filling(Chain),
    /// A functional vanishing on all boundaries with value one on `z`.
    Obstruction(Cochain),
}

pub fn is_boundary(x: &SemisimplicialSet, z: &Chain) -> Result<BoundaryWitness> {
    x.require_cycle(z)?;
    let p = z.level;
    x.ensure_level(p + 1)?;
    if z.is_zero() {
        return Ok(BoundaryWitness::Filling(Chain::zero(p + 1)));
    }
    let a = linalg::from_ints(&x.boundary_matrix(p + 1));
    let b = z.dense(x.count(p));
    match linalg::solve_or_certify(&a, x.count(p + 1), &b) {
        Ok(c) => Ok(BoundaryWitness::Filling(Chain::from_terms(p + 1, c.into_iter().enumerate()))),
        Err(y) => Ok(BoundaryWitness::Obstruction(Chain::from_terms(p, y.into_iter().enumerate()))),
    }
}

/// Checks that `y` vanishes on every boundary `∂σ` and is nonzero on `z`.
pub fn certifies_non_boundary(x: &SemisimplicialSet, z: &Chain, y: &Cochain) -> bool {
    let p = z.level;
    let annihilates = (0..x.count(p + 1)).all(|s| x.boundary(&Chain::simplex(p + 1, s)).map(|b| b.pair(y).is_zero()).unwrap_or(false));
    annihilates && !z.pair(y).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::nerve::nerve_of_poset;

    #[test]
    fn hollow_triangle_has_a_circle() {
        let x = fixtures::hollow_triangle(2);
        let h = reduced_homology(&x, 1).unwrap();
        assert_eq!((h.betti, h.torsion.len()), (1, 0));
        assert_eq!(cohomology_betti(&x, 1).unwrap(), 1);
        assert!(reduced_homology(&x, 0).unwrap().vanishes());
    }

    #[test]
    fn truncation_guard() {
        let x = fixtures::hollow_triangle(1);
        assert!(matches!(reduced_homology(&x, 1), Err(Error::TruncationTooShallow { needed: 2, .. })));
        assert!(matches!(cohomology_betti(&x, 1), Err(Error::TruncationTooShallow { .. })));
    }

    #[test]
    fn poset_with_minimum_is_acyclic() {
        let with_min = crate::poset::FinitePoset::from_pairs(4, &[(3, 0), (3, 1), (0, 2), (1, 2)]).unwrap();
        let n = nerve_of_poset(&with_min, 3);
        for q in 0..=2 {
            assert!(reduced_homology(n.complex(), q).unwrap().vanishes());
        }
    }

    #[test]
    fn square_poset_is_a_circle() {
        let n = nerve_of_poset(&fixtures::square_poset(), 2);
        assert_eq!(reduced_homology(n.complex(), 1).unwrap().betti, 1);
        assert_eq!(cohomology_betti(n.complex(), 1).unwrap(), 1);
    }

    #[test]
    fn two_torsion() {
        // one vertex, loops e and f, 2-simplices t = (e, f, e) and u = (f, f, f):
        // ∂t = 2e - f and ∂u = f, so H̃_1 = ℤ/2
        let x = SemisimplicialSet::new(vec![1, 2, 2], vec![vec![], vec![vec![0, 0], vec![0, 0]], vec![vec![0, 1, 0], vec![1, 1, 1]]], None)
            .unwrap();
        let h = reduced_homology(&x, 1).unwrap();
        assert_eq!(h.betti, 0);
        assert_eq!(h.torsion, vec![BigInt::from(2)]);
        assert_eq!(cohomology_betti(&x, 1).unwrap(), 0);
    }

    #[test]
    fn boundary_witnesses() {
        let hollow = fixtures::hollow_triangle(2);
        let z = fixtures::triangle_cycle();
        match is_boundary(&hollow, &z).unwrap() {
            BoundaryWitness::Obstruction(y) => assert!(certifies_non_boundary(&hollow, &z, &y)),
            other => panic!("expected an obstruction, got {other:?}"),
        }
        let filled = fixtures::filled_triangle(2);
        match is_boundary(&filled, &z).unwrap() {
            BoundaryWitness::Filling(c) => assert_eq!(filled.boundary(&c).unwrap(), z),
            other => panic!("expected a filling, got {other:?}"),
        }
        assert_eq!(is_boundary(&filled, &Chain::zero(1)).unwrap(), BoundaryWitness::Filling(Chain::zero(2)));
        assert!(matches!(is_boundary(&filled, &Chain::simplex(1, 0)), Err(Error::NotACycle)));
    }
}
