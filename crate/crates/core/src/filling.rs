//! Minimal ℓ¹ fillings of cycles and per-level uniform acyclicity constants.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuits;
use crate::complex::{Chain, Cochain, SemisimplicialSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{min_l1, L1Outcome, L1Problem};
use crate::rational::Rat;

pub const DEFAULT_DIMENSION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingCertificate {
    /// `∂ filling = z`.
    pub filling: Chain,
    pub norm: Rat,
    /// `norm / ‖z‖` (zero for `z = 0`).
    pub ratio: Rat,
    /// True when LP optimality has been verified through `dual`.
    pub optimal: bool,
    /// Cochain `y` with `y(z) = norm` and `|y(∂σ)| ≤ 1` for every simplex `σ`.
    pub dual: Option<Cochain>,
}

fn ratio_of(norm: &Rat, z: &Chain) -> Rat {
    let zn = z.norm();
    if zn.is_zero() {
        Rat::zero()
    } else {
        norm / zn
    }
}

impl FillingCertificate {
    /// Certificate for a given (not necessarily optimal) filling; checks `∂c = z`.
    pub fn constructive(x: &SemisimplicialSet, z: &Chain, c: Chain) -> Result<Self> {
        if c.level != z.level + 1 || x.boundary(&c)? != *z {
            return Err(Error::FillerFailure(format!("chain does not fill the level-{} cycle", z.level)));
        }
        let norm = c.norm();
        Ok(FillingCertificate { ratio: ratio_of(&norm, z), norm, filling: c, optimal: false, dual: None })
    }
}

/// `y(∂σ)` for every `(p+1)`-simplex `σ`.
fn coboundary_values(x: &SemisimplicialSet, p: usize, y: &Cochain) -> Vec<Rat> {
    x.boundary_columns(p + 1).iter().map(|col| col.iter().map(|&(r, a)| y.coeff(r) * Rat::from_integer(BigInt::from(a))).sum()).collect()
}

/// True when `y` certifies that no chain over `allowed` simplices fills `z` with norm below `norm`.
pub fn verify_dual(x: &SemisimplicialSet, z: &Chain, y: &Cochain, norm: &Rat, allowed: &dyn Fn(usize) -> bool) -> bool {
    let one = Rat::from_integer(BigInt::from(1));
    z.pair(y) == *norm && coboundary_values(x, z.level, y).iter().enumerate().all(|(s, v)| !allowed(s) || v.abs() <= one)
}

/// Minimal ℓ¹ filling of the reduced cycle `z` over all `(p+1)`-simplices.
pub fn min_l1_fill(x: &SemisimplicialSet, z: &Chain) -> Result<FillingCertificate> {
    min_l1_fill_within(x, z, &|_| true)
}

/// Minimal ℓ¹ filling using only the `(p+1)`-simplices accepted by `allowed`.
pub fn min_l1_fill_within(x: &SemisimplicialSet, z: &Chain, allowed: &dyn Fn(usize) -> bool) -> Result<FillingCertificate> {
    x.require_cycle(z)?;
    let p = z.level;
    x.ensure_level(p + 1)?;
    if z.is_zero() {
        return Ok(FillingCertificate {
            filling: Chain::zero(p + 1),
            norm: Rat::zero(),
            ratio: Rat::zero(),
            optimal: true,
            dual: Some(Chain::zero(p)),
        });
    }
    let cols = x.boundary_columns(p + 1);
    let used: Vec<usize> = (0..cols.len()).filter(|&s| allowed(s) && !cols[s].is_empty()).collect();
    // compact rows: only those touched by a column or by z
    let mut row_of = vec![usize::MAX; x.count(p)];
    let mut rows = Vec::new();
    let touch = |r: usize, row_of: &mut Vec<usize>, rows: &mut Vec<usize>| {
        if row_of[r] == usize::MAX {
            row_of[r] = rows.len();
            rows.push(r);
        }
    };
    for &s in &used {
        for &(r, _) in &cols[s] {
            touch(r, &mut row_of, &mut rows);
        }
    }
    for r in z.support() {
        touch(r, &mut row_of, &mut rows);
    }
    let problem = L1Problem {
        rows: rows.len(),
        columns: used.iter().map(|&s| cols[s].iter().map(|&(r, a)| (row_of[r], Rat::from_integer(BigInt::from(a)))).collect()).collect(),
        rhs: rows.iter().map(|&r| z.coeff(r)).collect(),
    };
    let lift = |v: Vec<Rat>| Chain::from_terms(p, rows.iter().copied().zip(v));
    match min_l1(&problem) {
        L1Outcome::Optimal { x: sol, value, dual, .. } => {
            let filling = Chain::from_terms(p + 1, used.iter().copied().zip(sol));
            if x.boundary(&filling)? != *z {
                return Err(Error::FillerFailure("LP solution does not fill the cycle".into()));
            }
            let y = lift(dual);
            let norm = filling.norm();
            if norm != value || !verify_dual(x, z, &y, &norm, allowed) {
                return Err(Error::FillerFailure("LP dual certificate does not verify".into()));
            }
            Ok(FillingCertificate { ratio: ratio_of(&norm, z), norm, filling, optimal: true, dual: Some(y) })
        }
        L1Outcome::Infeasible { farkas } => {
            let y = lift(farkas);
            let separates =
                z.pair(&y).is_positive() && coboundary_values(x, p, &y).iter().enumerate().all(|(s, v)| !allowed(s) || v.is_zero());
            if !separates {
                return Err(Error::FillerFailure("LP infeasibility certificate does not verify".into()));
            }
            Err(Error::NotABoundary { certificate: Box::new(y) })
        }
    }
}

/// Basis of the reduced level-`p` cycle space.
pub fn cycle_basis(x: &SemisimplicialSet, p: usize) -> Vec<Vec<Rat>> {
    linalg::nullspace(&linalg::from_ints(&x.boundary_matrix(p)), x.count(p))
}

fn to_chain(p: usize, v: &[BigInt]) -> Chain {
    Chain::from_terms(p, v.iter().enumerate().map(|(s, a)| (s, Rat::from_integer(a.clone()))))
}

/// Every vertex cycle of the level-`p` cycle space, one per `±` pair, as a
/// primitive integral chain (the vertex is the chain divided by its norm).
pub fn vertex_cycles(x: &SemisimplicialSet, p: usize, cap: usize) -> Result<Vec<Chain>> {
    let basis = cycle_basis(x, p);
    if basis.len() > cap {
        return Err(Error::DimensionCapExceeded { dim: basis.len(), cap });
    }
    Ok(circuits::circuits(&basis, x.count(p)).iter().map(|c| to_chain(p, c)).collect())
}

/// Up to `count` distinct vertex cycles found by cutting the cycle space with
/// random coordinate hyperplanes; usable at any dimension.
pub fn sample_vertex_cycles<R: Rng>(x: &SemisimplicialSet, p: usize, count: usize, rng: &mut R) -> Vec<Chain> {
    let basis = cycle_basis(x, p);
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    let n = x.count(p);
    let mut found = std::collections::BTreeSet::new();
    let mut coords: Vec<usize> = (0..n).collect();
    for _ in 0..count * 20 {
        if found.len() == count {
            break;
        }
        coords.shuffle(rng);
        if let Some(c) = circuits::circuit_through(&basis, &coords[..d - 1]) {
            found.insert(c);
        }
    }
    found.iter().map(|c| to_chain(p, c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constant {
    Finite(Rat),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    VertexEnumeration,
    CycleSample,
}

#[derive(Debug, Clone)]
pub enum ConstantMethod {
    VertexEnumeration { cap: usize },
    CycleSample(Vec<Chain>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantWitness {
    Filled { cycle: Chain, certificate: FillingCertificate },
    Unfillable { cycle: Chain, obstruction: Cochain },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformConstantReport {
    pub level: usize,
    pub constant: Constant,
    pub method: MethodKind,
    /// False for sampled constants, which are lower bounds only.
    pub exact: bool,
    pub cycles_checked: usize,
    pub witnesses: Vec<ConstantWitness>,
}

/// Best filling ratio over the given cycles; any non-bounding cycle gives `Infinite`.
fn worst_ratio(x: &SemisimplicialSet, cycles: &[Chain]) -> Result<(Constant, Vec<ConstantWitness>)> {
    let results = crate::par::map(cycles, |z| min_l1_fill(x, z));
    let mut worst: Option<Rat> = None;
    let mut filled = Vec::new();
    let mut unfillable = Vec::new();
    for (z, r) in cycles.iter().zip(results) {
        match r {
            Ok(cert) => filled.push((z.clone(), cert)),
            Err(Error::NotABoundary { certificate }) => {
                unfillable.push(ConstantWitness::Unfillable { cycle: z.clone(), obstruction: *certificate })
            }
            Err(e) => return Err(e),
        }
    }
    if !unfillable.is_empty() {
        return Ok((Constant::Infinite, unfillable));
    }
    for (_, cert) in &filled {
        if worst.as_ref().is_none_or(|w| cert.ratio > *w) {
            worst = Some(cert.ratio.clone());
        }
    }
    let worst = worst.unwrap_or_else(Rat::zero);
    let witnesses = filled
        .into_iter()
        .filter(|(_, c)| c.ratio == worst)
        .map(|(cycle, certificate)| ConstantWitness::Filled { cycle, certificate })
        .collect();
    Ok((Constant::Finite(worst), witnesses))
}

pub fn uniform_constant(x: &SemisimplicialSet, p: usize, method: ConstantMethod) -> Result<UniformConstantReport> {
    x.ensure_level(p + 1)?;
    let (cycles, kind) = match method {
        ConstantMethod::VertexEnumeration { cap } => (vertex_cycles(x, p, cap)?, MethodKind::VertexEnumeration),
        ConstantMethod::CycleSample(cycles) => (cycles, MethodKind::CycleSample),
    };
    let (constant, witnesses) = worst_ratio(x, &cycles)?;
    Ok(UniformConstantReport {
        level: p,
        constant,
        method: kind,
        exact: kind == MethodKind::VertexEnumeration,
        cycles_checked: cycles.len(),
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantCheck {
    pub holds: bool,
    pub worst: Option<Rat>,
    pub checked: usize,
}

/// True iff every listed cycle has a filling of norm at most `k ‖z‖`.
pub fn verify_constant(x: &SemisimplicialSet, p: usize, k: &Rat, cycles: &[Chain]) -> Result<ConstantCheck> {
    for z in cycles {
        if z.level != p {
            return Err(Error::LevelMismatch(format!("cycle of level {} in a level-{p} check", z.level)));
        }
    }
    let certs = crate::par::map(cycles, |z| min_l1_fill(x, z));
    let mut worst: Option<Rat> = None;
    for cert in certs {
        let cert = cert?;
        if worst.as_ref().is_none_or(|w| cert.ratio > *w) {
            worst = Some(cert.ratio);
        }
    }
    Ok(ConstantCheck { holds: worst.as_ref().is_none_or(|w| w <= k), worst, checked: cycles.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{cone, cone_fill};
    use crate::fixtures;
    use crate::rational::{frac, int};

    #[test]
    fn filled_triangle_boundary() {
        let x = fixtures::filled_triangle(2);
        let z = fixtures::triangle_cycle();
        let c = min_l1_fill(&x, &z).unwrap();
        assert_eq!(c.norm, int(1));
        assert_eq!(c.ratio, frac(1, 3));
        assert!(c.optimal);
        assert_eq!(c.filling, Chain::simplex(2, 0));
    }

    #[test]
    fn cone_over_two_points() {
        let cx = cone(&fixtures::antichain_complex(), "v");
        let z = Chain::from_ints(0, &[(1, 1), (0, -1)]);
        let c = min_l1_fill(cx.complex(), &z).unwrap();
        assert_eq!(c.norm, int(2));
        assert_eq!(c.norm, cone_fill(&cx, &z).unwrap().norm());
    }

    #[test]
    fn hollow_triangle_is_not_a_boundary() {
        let x = fixtures::hollow_triangle(2);
        let z = fixtures::triangle_cycle();
        match min_l1_fill(&x, &z) {
            Err(Error::NotABoundary { certificate }) => {
                assert!(crate::homology::certifies_non_boundary(&x, &z, &certificate))
            }
            other => panic!("{other:?}"),
        }
        let r = uniform_constant(&x, 1, ConstantMethod::VertexEnumeration { cap: 12 }).unwrap();
        assert_eq!(r.constant, Constant::Infinite);
    }

    #[test]
    fn filled_triangle_constant() {
        let x = fixtures::filled_triangle(2);
        let r = uniform_constant(&x, 1, ConstantMethod::VertexEnumeration { cap: DEFAULT_DIMENSION_CAP }).unwrap();
        assert_eq!(r.constant, Constant::Finite(frac(1, 3)));
        assert_eq!(r.cycles_checked, 1);
        assert!(r.exact);
        let z = [fixtures::triangle_cycle()];
        let ok = verify_constant(&x, 1, &frac(1, 3), &z).unwrap();
        assert!(ok.holds);
        assert_eq!(ok.worst, Some(frac(1, 3)));
        assert!(!verify_constant(&x, 1, &frac(1, 4), &z).unwrap().holds);
        assert!(verify_constant(&x, 1, &frac(1, 4), &[]).unwrap().holds);
    }

    #[test]
    fn dimension_cap() {
        let x = fixtures::filled_triangle(2);
        assert!(matches!(vertex_cycles(&x, 0, 1), Err(Error::DimensionCapExceeded { dim: 2, cap: 1 })));
    }

    #[test]
    fn scaling() {
        let x = fixtures::filled_triangle(2);
        let z = fixtures::triangle_cycle();
        let lambda = frac(-5, 7);
        let a = min_l1_fill(&x, &z).unwrap().norm;
        let b = min_l1_fill(&x, &z.scaled(&lambda)).unwrap().norm;
        assert_eq!(b, a * lambda.abs());
    }
}
