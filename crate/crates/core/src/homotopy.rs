//! Bounded chain homotopies into poset nerves: acyclic-carrier synthesis,
//! order homotopies, filling transfer, and the W pipeline.

use num_traits::{One, Zero};

use crate::complex::{Chain, SemisimplicialSet, SimplicialMap};
use crate::error::{Error, Result};
use crate::filling::{min_l1_fill_within, FillingCertificate};
use crate::nerve::PosetNerve;
use crate::poset_w::{witness_map, WWitnessTable};
use crate::rational::{int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Apex below everything; joins prepend it.
    Left,
    /// Apex above everything; joins append it.
    Right,
}

/// Cone filling of a reduced cycle in a poset nerve through `apex`.
///
/// Writing each simplex as `apex^k * τ` with `τ` not starting (or ending) with
/// the apex, only the terms with even `k` are joined; the odd ones cancel
/// against them, so the filling has norm at most `‖z‖`.
pub fn nerve_cone_fill(nerve: &PosetNerve, z: &Chain, apex: usize, side: Side) -> Result<Chain> {
    let poset = nerve.poset();
    let p = z.level;
    nerve.complex().require_cycle(z)?;
    nerve.complex().ensure_level(p + 1)?;
    let sign = if side == Side::Right && p % 2 == 0 { -Rat::one() } else { Rat::one() };
    let mut c = Chain::zero(p + 1);
    for (s, coef) in z.terms() {
        let t = nerve.tuple(p, s);
        let (reach, repeated) = match side {
            Side::Left => (t.iter().all(|&x| poset.leq(apex, x)), t.iter().take_while(|&&x| x == apex).count()),
            Side::Right => (t.iter().all(|&x| poset.leq(x, apex)), t.iter().rev().take_while(|&&x| x == apex).count()),
        };
        if !reach {
            return Err(Error::FillerFailure(format!("{} is not a cone point for {}", poset.label(apex), nerve.complex().labels(p)[s])));
        }
        if repeated % 2 == 1 {
            continue;
        }
        let mut u = Vec::with_capacity(p + 2);
        match side {
            Side::Left => {
                u.push(apex);
                u.extend_from_slice(t);
            }
            Side::Right => {
                u.extend_from_slice(t);
                u.push(apex);
            }
        }
        let id = nerve.id_of(&u).expect("joins of chains with a cone point are chains");
        c.add_term(id, &(coef * &sign));
    }
    Ok(c)
}

/// Fills a cycle supported on the sub-nerve spanned by `allowed` elements, inside that sub-nerve.
pub trait Filler: Sync {
    fn fill(&self, nerve: &PosetNerve, allowed: &[bool], z: &Chain) -> Result<Chain>;
}

fn minimum_of(nerve: &PosetNerve, allowed: &[bool]) -> Option<usize> {
    let poset = nerve.poset();
    let members: Vec<usize> = (0..poset.len()).filter(|&x| allowed[x]).collect();
    members.iter().copied().find(|&m| members.iter().all(|&x| poset.leq(m, x)))
}

/// Cone filling through the minimum of the carrier (constant 1).
#[derive(Debug, Clone, Copy, Default)]
pub struct ConeFiller;

impl Filler for ConeFiller {
    fn fill(&self, nerve: &PosetNerve, allowed: &[bool], z: &Chain) -> Result<Chain> {
        let m = minimum_of(nerve, allowed).ok_or_else(|| Error::FillerFailure("carrier has no minimum, so it is not a cone".into()))?;
        nerve_cone_fill(nerve, z, m, Side::Left)
    }
}

/// Minimal ℓ¹ filling inside the carrier.
#[derive(Debug, Clone, Copy, Default)]
pub struct LpFiller;

impl Filler for LpFiller {
    fn fill(&self, nerve: &PosetNerve, allowed: &[bool], z: &Chain) -> Result<Chain> {
        let p = z.level;
        let inside = |s: usize| nerve.tuple(p + 1, s).iter().all(|&x| allowed[x]);
        match min_l1_fill_within(nerve.complex(), z, &inside) {
            Ok(cert) => Ok(cert.filling),
            Err(Error::NotABoundary { .. }) => Err(Error::FillerFailure("cycle does not bound inside its carrier".into())),
            Err(e) => Err(e),
        }
    }
}

/// The cone formula when the carrier has a minimum, the LP otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct AutoFiller;

impl Filler for AutoFiller {
    fn fill(&self, nerve: &PosetNerve, allowed: &[bool], z: &Chain) -> Result<Chain> {
        match minimum_of(nerve, allowed) {
            Some(_) => ConeFiller.fill(nerve, allowed, z),
            None => LpFiller.fill(nerve, allowed, z),
        }
    }
}

/// Assigns to every source simplex the full sub-nerve on a set of poset elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    /// `allowed[p][s][x]`: element `x` may appear in the carrier of simplex `s` of level `p`.
    pub allowed: Vec<Vec<Vec<bool>>>,
}

fn entries(target: &PosetNerve, p: usize, id: usize) -> &[usize] {
    target.tuple(p, id)
}

impl Carrier {
    /// The carrier spanned by the vertices of `f(σ)` and `g(σ)`.
    pub fn spanned(source: &SemisimplicialSet, target: &PosetNerve, f: &SimplicialMap, g: &SimplicialMap, max_level: usize) -> Self {
        let n = target.poset().len();
        let allowed = (0..=max_level)
            .map(|p| {
                (0..source.count(p))
                    .map(|s| {
                        let mut a = vec![false; n];
                        for &x in entries(target, p, f.image(p, s)).iter().chain(entries(target, p, g.image(p, s))) {
                            a[x] = true;
                        }
                        a
                    })
                    .collect()
            })
            .collect();
        Carrier { allowed }
    }

    /// The whole target for every simplex.
    pub fn everything(source: &SemisimplicialSet, target: &PosetNerve, max_level: usize) -> Self {
        let n = target.poset().len();
        Carrier { allowed: (0..=max_level).map(|p| vec![vec![true; n]; source.count(p)]).collect() }
    }

    /// Checks monotonicity under faces and that both maps are carried.
    pub fn validate(&self, source: &SemisimplicialSet, target: &PosetNerve, f: &SimplicialMap, g: &SimplicialMap) -> Result<()> {
        for (p, level) in self.allowed.iter().enumerate() {
            for (s, a) in level.iter().enumerate() {
                for (name, m) in [("f", f), ("g", g)] {
                    if let Some(&x) = entries(target, p, m.image(p, s)).iter().find(|&&x| !a[x]) {
                        return Err(Error::CarrierViolation(format!(
                            "{name} sends {} to {}, outside its carrier (missing {})",
                            source.labels(p)[s],
                            target.complex().labels(p)[m.image(p, s)],
                            target.poset().label(x)
                        )));
                    }
                }
                if p > 0 {
                    for &t in source.faces_of(p, s) {
                        if self.allowed[p - 1][t].iter().zip(a).any(|(&below, &here)| below && !here) {
                            return Err(Error::CarrierViolation(format!(
                                "carrier of {} does not contain the carrier of its face {}",
                                source.labels(p)[s],
                                source.labels(p - 1)[t]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `h_p` for each level, as the image chain of every source simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyTables {
    pub columns: Vec<Vec<Chain>>,
    /// `‖h_p‖`: the largest column norm.
    pub norms: Vec<Rat>,
    /// Claimed bound on `‖h_p‖` for each level.
    pub claimed: Vec<Rat>,
}

impl HomotopyTables {
    pub fn max_level(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn apply(&self, z: &Chain) -> Chain {
        let mut out = Chain::zero(z.level + 1);
        for (s, q) in z.terms() {
            for (t, r) in self.columns[z.level][s].terms() {
                out.add_term(t, &(q * r));
            }
        }
        out
    }

    pub fn within_claims(&self) -> bool {
        self.norms.iter().zip(&self.claimed).all(|(n, c)| n <= c)
    }

    /// Zero homotopy with the given claims.
    pub fn zero(source: &SemisimplicialSet, max_level: usize) -> Self {
        HomotopyTables {
            columns: (0..=max_level).map(|p| vec![Chain::zero(p + 1); source.count(p)]).collect(),
            norms: vec![Rat::zero(); max_level + 1],
            claimed: vec![Rat::zero(); max_level + 1],
        }
    }
}

fn column_norms(columns: &[Vec<Chain>]) -> Vec<Rat> {
    columns.iter().map(|l| l.iter().map(Chain::norm).max().unwrap_or_else(Rat::zero)).collect()
}

fn simplex_difference(target: &PosetNerve, f: &SimplicialMap, g: &SimplicialMap, p: usize, s: usize) -> Chain {
    let _ = target;
    let mut c = Chain::simplex(p, f.image(p, s));
    c.add_term(g.image(p, s), &-Rat::one());
    c
}

/// Exact check of `d h_p + h_{p-1} d = f - g` on every simplex up to `max_level`.
pub fn verify_homotopy(
    source: &SemisimplicialSet,
    target: &PosetNerve,
    f: &SimplicialMap,
    g: &SimplicialMap,
    h: &HomotopyTables,
) -> Result<()> {
    for p in 0..=h.max_level() {
        for s in 0..source.count(p) {
            let mut lhs = target.complex().boundary(&h.columns[p][s])?;
            if p > 0 {
                lhs = lhs.add(&h.apply(&source.boundary(&Chain::simplex(p, s))?));
            }
            if lhs != simplex_difference(target, f, g, p, s) {
                return Err(Error::HomotopyIdentity(format!("fails on {} in level {p}", source.labels(p)[s])));
            }
        }
    }
    Ok(())
}

/// The carrier-lemma bound `2(p+1) K_p^p` for constants `K`.
pub fn carrier_bound(p: usize, k: &Rat) -> Rat {
    int(2 * (p as i64 + 1)) * num_traits::pow(k.clone(), p)
}

/// Inductive synthesis of `h` with `d h + h d = f - g`, filling inside the carrier.
///
/// `constants[p]` are the certified filling constants of the carrier subcomplexes;
/// the claimed bound per level is `2(p+1) K_p^p`.
#[allow(clippy::too_many_arguments)]
pub fn carrier_homotopy(
    source: &SemisimplicialSet,
    target: &PosetNerve,
    f: &SimplicialMap,
    g: &SimplicialMap,
    carrier: &Carrier,
    filler: &dyn Filler,
    constants: &[Rat],
    max_level: usize,
) -> Result<HomotopyTables> {
    source.ensure_level(max_level)?;
    target.complex().ensure_level(max_level + 1)?;
    if constants.len() <= max_level {
        return Err(Error::InvalidInput(format!("need filling constants for levels 0..={max_level}")));
    }
    if constants.iter().any(|k| k < &Rat::one()) || constants.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("filling constants must satisfy 1 ≤ K_p ≤ K_{p+1}".into()));
    }
    if carrier.allowed.len() <= max_level {
        return Err(Error::InvalidInput("carrier does not cover every level".into()));
    }
    carrier.validate(source, target, f, g)?;
    let mut tables = HomotopyTables { columns: Vec::new(), norms: Vec::new(), claimed: Vec::new() };
    for p in 0..=max_level {
        let ids: Vec<usize> = (0..source.count(p)).collect();
        let column = crate::par::map(&ids, |&s| -> Result<Chain> {
            let mut z = simplex_difference(target, f, g, p, s);
            if p > 0 {
                z = z.sub(&tables.apply(&source.boundary(&Chain::simplex(p, s))?));
            }
            let c = filler.fill(target, &carrier.allowed[p][s], &z)?;
            if target.complex().boundary(&c)? != z {
                return Err(Error::FillerFailure(format!("filler output misses the cycle at {}", source.labels(p)[s])));
            }
            Ok(c)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        tables.columns.push(column);
        tables.claimed.push(carrier_bound(p, &constants[p]));
    }
    tables.norms = column_norms(&tables.columns);
    Ok(tables)
}

fn vertex_element(target: &PosetNerve, m: &SimplicialMap, x: usize) -> usize {
    target.tuple(0, m.image(0, x))[0]
}

/// Homotopy from `f` to `g` when `f(x) ⪯ g(x)` on vertices, with cone fillers.
pub fn order_homotopy(
    source: &SemisimplicialSet,
    target: &PosetNerve,
    f: &SimplicialMap,
    g: &SimplicialMap,
    max_level: usize,
) -> Result<HomotopyTables> {
    for x in 0..source.count(0) {
        if !target.poset().leq(vertex_element(target, f, x), vertex_element(target, g, x)) {
            return Err(Error::NotComparable(x));
        }
    }
    let carrier = Carrier::spanned(source, target, f, g, max_level);
    let ones = vec![Rat::one(); max_level + 1];
    carrier_homotopy(source, target, f, g, &carrier, &ConeFiller, &ones, max_level)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub certificate: FillingCertificate,
    /// `K_f + ‖h_p‖`.
    pub claimed_ratio: Rat,
}

impl Transfer {
    pub fn holds(&self) -> bool {
        self.certificate.ratio <= self.claimed_ratio
    }
}

/// `c_g = c_f - h_p(z)` fills `g(z)` when `c_f` fills `f(z)`.
pub fn transfer_filling(
    source: &SemisimplicialSet,
    target: &PosetNerve,
    g: &SimplicialMap,
    h: &HomotopyTables,
    z: &Chain,
    f_filling: &FillingCertificate,
) -> Result<Transfer> {
    source.require_cycle(z)?;
    let p = z.level;
    if p > h.max_level() {
        return Err(Error::TruncationTooShallow { needed: p, max_dim: h.max_level() });
    }
    let c = f_filling.filling.sub(&h.apply(z));
    let gz = g.apply(z);
    if target.complex().boundary(&c)? != gz {
        return Err(Error::HomotopyIdentity(format!("transferred chain does not fill g(z) in level {p}")));
    }
    let norm = c.norm();
    let zn = z.norm();
    let ratio = if zn.is_zero() { Rat::zero() } else { &norm / &zn };
    let k_f = if zn.is_zero() { Rat::zero() } else { &f_filling.norm / &zn };
    Ok(Transfer {
        certificate: FillingCertificate { filling: c, norm, ratio, optimal: false, dual: None },
        claimed_ratio: k_f + &h.norms[p],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    /// Fills `z` (through the inclusion) in the nerve of `P`.
    pub certificate: FillingCertificate,
    /// The cone filling of `f(z)` at `y_{1..k}`.
    pub cone_part: Chain,
    pub homotopy_norm: Rat,
    /// `1 + 2(p+1)`.
    pub claimed_ratio: Rat,
}

impl PipelineResult {
    pub fn holds(&self) -> bool {
        self.certificate.ratio <= self.claimed_ratio
    }
}

/// Fills a reduced cycle `z` of the nerve of `Q` inside the nerve of `P` using
/// the witness map, a cone at the top witness, and the order homotopy to the inclusion.
///
/// `q_nerve` must be the nerve of `P` restricted to `table.subposet`, in that order.
pub fn w_pipeline(p_nerve: &PosetNerve, q_nerve: &PosetNerve, table: &WWitnessTable, z: &Chain) -> Result<PipelineResult> {
    let p = z.level;
    q_nerve.complex().require_cycle(z)?;
    p_nerve.complex().ensure_level(p + 1)?;
    let f = witness_map(p_nerve, q_nerve, table)?;
    let inclusion = q_nerve.induced_map(p_nerve, &table.subposet)?;
    let fz = f.map.apply(z);
    let cone_part = nerve_cone_fill(p_nerve, &fz, table.top(), Side::Right)?;
    let c_f = FillingCertificate::constructive(p_nerve.complex(), &fz, cone_part.clone())?;
    let h = order_homotopy(q_nerve.complex(), p_nerve, &f.map, &inclusion, p)?;
    let t = transfer_filling(q_nerve.complex(), p_nerve, &inclusion, &h, z, &c_f)?;
    Ok(PipelineResult { certificate: t.certificate, cone_part, homotopy_norm: h.norms[p].clone(), claimed_ratio: int(2 * p as i64 + 3) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::nerve::nerve_of_poset;
    use crate::poset::FinitePoset;
    use crate::poset_w::check_w;

    fn point() -> SemisimplicialSet {
        SemisimplicialSet::new(vec![1], vec![vec![]], Some(vec![vec!["pt".into()]])).unwrap()
    }

    fn vertex_map(source: &SemisimplicialSet, target: &PosetNerve, elems: &[usize]) -> SimplicialMap {
        let images = vec![elems.iter().map(|&x| target.id_of(&[x]).unwrap()).collect()];
        SimplicialMap::new(source, target.complex(), images).unwrap()
    }

    #[test]
    fn point_into_an_edge() {
        let t = nerve_of_poset(&fixtures::chain(2), 2);
        let x = point();
        let f = vertex_map(&x, &t, &[0]);
        let g = vertex_map(&x, &t, &[1]);
        let h = order_homotopy(&x, &t, &f, &g, 0).unwrap();
        let ab = t.id_of(&[0, 1]).unwrap();
        assert_eq!(h.columns[0][0], Chain::from_ints(1, &[(ab, -1)]));
        assert_eq!(h.norms[0], int(1));
        verify_homotopy(&x, &t, &f, &g, &h).unwrap();
        assert!(matches!(order_homotopy(&x, &t, &g, &f, 0), Err(Error::NotComparable(0))));
    }

    #[test]
    fn identity_to_itself() {
        let n = nerve_of_poset(&fixtures::chain(3), 3);
        let id: Vec<usize> = (0..3).collect();
        let small = nerve_of_poset(&fixtures::chain(3), 2);
        let f = small.induced_map(&n, &id).unwrap();
        let h = order_homotopy(small.complex(), &n, &f, &f, 2).unwrap();
        verify_homotopy(small.complex(), &n, &f, &f, &h).unwrap();
        assert!(h.norms.iter().all(Zero::is_zero));
    }

    #[test]
    fn v_poset_identity_to_top() {
        let v = fixtures::v_poset();
        let target = nerve_of_poset(&v, 3);
        let source = nerve_of_poset(&v, 2);
        let f = source.induced_map(&target, &[0, 1, 2]).unwrap();
        let g = source.induced_map(&target, &[2, 2, 2]).unwrap();
        let h = order_homotopy(source.complex(), &target, &f, &g, 2).unwrap();
        verify_homotopy(source.complex(), &target, &f, &g, &h).unwrap();
        assert!(h.norms[0] <= int(2));
        assert!(h.norms[1] <= int(4));
        assert!(h.within_claims());
    }

    #[test]
    fn carrier_violations() {
        let t = nerve_of_poset(&fixtures::chain(2), 2);
        let x = point();
        let f = vertex_map(&x, &t, &[0]);
        let g = vertex_map(&x, &t, &[1]);
        let narrow = Carrier { allowed: vec![vec![vec![true, false]]] };
        let r = carrier_homotopy(&x, &t, &f, &g, &narrow, &LpFiller, &[Rat::one()], 0);
        assert!(matches!(r, Err(Error::CarrierViolation(_))));
        let wide = Carrier::everything(&x, &t, 0);
        let h = carrier_homotopy(&x, &t, &f, &g, &wide, &LpFiller, &[Rat::one()], 0).unwrap();
        assert_eq!(h.norms[0], int(1));
    }

    #[test]
    fn transfer_with_zero_homotopy() {
        let t = nerve_of_poset(&fixtures::chain(2), 2);
        let id = t.induced_map(&t, &[0, 1]).unwrap();
        let h = HomotopyTables::zero(t.complex(), 1);
        let z = Chain::from_ints(0, &[(0, 1), (1, -1)]);
        let c_f = crate::filling::min_l1_fill(t.complex(), &z).unwrap();
        let tr = transfer_filling(t.complex(), &t, &id, &h, &z, &c_f).unwrap();
        assert_eq!(tr.certificate.filling, c_f.filling);
        assert!(tr.holds());
    }

    #[test]
    fn v_pipeline_on_two_points() {
        let v = fixtures::v_poset();
        let pn = nerve_of_poset(&v, 3);
        let r = check_w(&v, 3);
        let table = r.table_for(&[0, 1]).unwrap();
        let qn = nerve_of_poset(&v.induced(&table.subposet), 2);
        let z = qn.chain_from_tuples(0, [(&[1usize][..], int(1)), (&[0usize][..], int(-1))]).unwrap();
        let out = w_pipeline(&pn, &qn, table, &z).unwrap();
        assert_eq!(out.certificate.norm, int(2));
        let ac = pn.id_of(&[0, 2]).unwrap();
        let bc = pn.id_of(&[1, 2]).unwrap();
        assert_eq!(out.certificate.filling, Chain::from_ints(1, &[(ac, 1), (bc, -1)]));
        assert!(out.holds());
    }

    #[test]
    fn right_cone_signs() {
        let p = FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let n = nerve_of_poset(&p, 3);
        let z = n.chain_from_tuples(1, [(&[0usize, 0][..], int(1))]).unwrap();
        for side in [Side::Left, Side::Right] {
            let c = nerve_cone_fill(&n, &z, if side == Side::Left { 0 } else { 2 }, side).unwrap();
            assert_eq!(n.complex().boundary(&c).unwrap(), z);
        }
    }
}
