//! A lamplighter model of countably supported permutations: permutations of
//! `Y_0 × ℤ` of the form `(y, i) ↦ (f(i)(y), i + s)` with `f` eventually
//! constant in both directions. Products are composition, right factor first.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// One-line notation: `p[y]` is the image of `y`.
pub type Perm = Vec<usize>;

pub fn perm_identity(m: usize) -> Perm {
    (0..m).collect()
}

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&y| y < p.len() && !std::mem::replace(&mut seen[y], true))
}

/// `p ∘ q`.
pub fn perm_compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&y| p[y]).collect()
}

pub fn perm_inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (y, &x) in p.iter().enumerate() {
        inv[x] = y;
    }
    inv
}

fn is_identity_perm(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(y, &x)| x == y)
}

/// Normal form: `left` below `start`, `middle` on `start..start+middle.len()`,
/// `right` above, with `middle` trimmed so neither end repeats the adjacent tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LampElement {
    pub shift: i64,
    left: Perm,
    start: i64,
    middle: Vec<Perm>,
    right: Perm,
}

impl LampElement {
    /// Builds from tails and an exception block, normalizing.
    pub fn from_parts(shift: i64, left: Perm, start: i64, middle: Vec<Perm>, right: Perm) -> Result<Self> {
        let m = left.len();
        if !is_perm(&left) || !is_perm(&right) || right.len() != m || middle.iter().any(|p| p.len() != m || !is_perm(p)) {
            return Err(Error::InvalidInput(format!("lamps must be permutations of a common set of size {m}")));
        }
        Ok(Self::normalized(shift, left, start, middle, right))
    }

    fn normalized(shift: i64, left: Perm, mut start: i64, mut middle: Vec<Perm>, right: Perm) -> Self {
        let lead = middle.iter().take_while(|p| **p == left).count();
        middle.drain(..lead);
        start += lead as i64;
        while middle.last() == Some(&right) {
            middle.pop();
        }
        if middle.is_empty() && left == right {
            start = 0;
        }
        LampElement { shift, left, start, middle, right }
    }

    pub fn identity(m: usize) -> Self {
        Self::normalized(0, perm_identity(m), 0, Vec::new(), perm_identity(m))
    }

    /// `(y, i) ↦ (y, i + k)`.
    pub fn shift_by(m: usize, k: i64) -> Self {
        LampElement { shift: k, ..Self::identity(m) }
    }

    /// The lamp `p` at a single level.
    pub fn lamp_at(level: i64, p: Perm) -> Result<Self> {
        let id = perm_identity(p.len());
        Self::from_parts(0, id.clone(), level, vec![p], id)
    }

    /// `p` at every level `≥ from`.
    pub fn right_tail(from: i64, p: Perm) -> Result<Self> {
        let id = perm_identity(p.len());
        Self::from_parts(0, id, from, Vec::new(), p)
    }

    pub fn base_size(&self) -> usize {
        self.left.len()
    }

    pub fn lamp(&self, level: i64) -> &Perm {
        if level < self.start {
            &self.left
        } else if ((level - self.start) as usize) < self.middle.len() {
            &self.middle[(level - self.start) as usize]
        } else {
            &self.right
        }
    }

    pub fn apply(&self, y: usize, level: i64) -> (usize, i64) {
        (self.lamp(level)[y], level + self.shift)
    }

    /// Levels of the exception block.
    fn span(&self) -> (i64, i64) {
        (self.start, self.start + self.middle.len() as i64)
    }

    pub fn has_trivial_tails(&self) -> bool {
        is_identity_perm(&self.left) && is_identity_perm(&self.right)
    }

    /// Levels carrying a nontrivial lamp, when there are finitely many.
    pub fn finite_support(&self) -> Option<Vec<i64>> {
        if !self.has_trivial_tails() {
            return None;
        }
        let (a, _) = self.span();
        Some(self.middle.iter().enumerate().filter(|(_, p)| !is_identity_perm(p)).map(|(k, _)| a + k as i64).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.middle.is_empty() && is_identity_perm(&self.left) && is_identity_perm(&self.right)
    }

    pub fn inverse(&self) -> Self {
        // inverse lamp at level j is f(j - s)^{-1}
        let (a, b) = self.span();
        let s = self.shift;
        let middle = (a + s..b + s).map(|j| perm_inverse(self.lamp(j - s))).collect();
        Self::normalized(-s, perm_inverse(&self.left), a + s, middle, perm_inverse(&self.right))
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(self.base_size()), |acc, _| lamp_compose(&acc, &base))
    }

    pub fn conjugate_by(&self, t: &LampElement) -> Self {
        // t⁻¹ · self · t
        lamp_compose(&t.inverse(), &lamp_compose(self, t))
    }
}

/// `a ∘ b`: lamps `f_a(i + s_b) ∘ f_b(i)`, shift `s_a + s_b`.
pub fn lamp_compose(a: &LampElement, b: &LampElement) -> LampElement {
    let r = b.shift;
    let (aa, ab) = a.span();
    let (ba, bb) = b.span();
    let lo = ba.min(aa - r);
    let hi = bb.max(ab - r).max(lo);
    let middle = (lo..hi).map(|i| perm_compose(a.lamp(i + r), b.lamp(i))).collect();
    LampElement::normalized(a.shift + r, perm_compose(&a.left, &b.left), lo, middle, perm_compose(&a.right, &b.right))
}

pub fn commutes(a: &LampElement, b: &LampElement) -> bool {
    lamp_compose(a, b) == lamp_compose(b, a)
}

/// `H ≤ Sym(Y_0)` placed at level 0, with `ψ(h)` = `h` on every level `≥ psi_from`
/// and `t` the unit shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinateWitness {
    pub generators: Vec<LampElement>,
    pub psi: Vec<LampElement>,
    pub t: LampElement,
}

impl BinateWitness {
    pub fn canonical(base: usize, generators: &[Perm]) -> Result<Self> {
        Self::with_psi_from(base, generators, 1)
    }

    pub fn with_psi_from(base: usize, generators: &[Perm], psi_from: i64) -> Result<Self> {
        if generators.iter().any(|g| g.len() != base) {
            return Err(Error::InvalidInput(format!("generators must permute {base} points")));
        }
        Ok(BinateWitness {
            generators: generators.iter().map(|g| LampElement::lamp_at(0, g.clone())).collect::<Result<_>>()?,
            psi: generators.iter().map(|g| LampElement::right_tail(psi_from, g.clone())).collect::<Result<_>>()?,
            t: LampElement::shift_by(base, 1),
        })
    }

    fn base_size(&self) -> usize {
        self.t.base_size()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BinateIdentity {
    /// `t⁻¹ ψ(h) t = h ψ(h)`.
    Conjugation,
    /// `[H, ψ(H)] = 1`.
    Commutation,
    /// `ψ` is well defined on `H`.
    Homomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinateFailure {
    pub identity: BinateIdentity,
    /// Letters `g1`, `g1^-1`, ...
    pub word: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinateReport {
    pub words_checked: usize,
    pub failure: Option<BinateFailure>,
}

impl BinateReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn letter_name(l: usize) -> String {
    if l % 2 == 0 {
        format!("g{}", l / 2 + 1)
    } else {
        format!("g{}^-1", l / 2 + 1)
    }
}

fn words(letters: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..cap {
        if letters == 0 {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Checks both binate identities and well-definedness of `ψ` on all words of length at most `word_cap`.
pub fn verify_binate(w: &BinateWitness, word_cap: usize) -> BinateReport {
    let m = w.base_size();
    let letter = |gens: &[LampElement], l: usize| if l % 2 == 0 { gens[l / 2].clone() } else { gens[l / 2].inverse() };
    let all = words(2 * w.generators.len(), word_cap);
    let evaluated = crate::par::map(&all, |word| {
        word.iter().fold((LampElement::identity(m), LampElement::identity(m)), |(h, p), &l| {
            (lamp_compose(&h, &letter(&w.generators, l)), lamp_compose(&p, &letter(&w.psi, l)))
        })
    });
    let mut psi_of: HashMap<&LampElement, &LampElement> = HashMap::new();
    for (k, (word, (h, psi_h))) in all.iter().zip(&evaluated).enumerate() {
        let fail = |identity| BinateReport {
            words_checked: k + 1,
            failure: Some(BinateFailure { identity, word: word.iter().map(|&l| letter_name(l)).collect() }),
        };
        if psi_h.conjugate_by(&w.t) != lamp_compose(h, psi_h) {
            return fail(BinateIdentity::Conjugation);
        }
        if !w.psi.iter().all(|g| commutes(h, g)) || !commutes(h, psi_h) {
            return fail(BinateIdentity::Commutation);
        }
        if *psi_of.entry(h).or_insert(psi_h) != psi_h {
            return fail(BinateIdentity::Homomorphism);
        }
    }
    BinateReport { words_checked: all.len(), failure: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugatesReport {
    pub checked_up_to: u64,
    /// First failing `(p, i, j)`: `g_i` does not commute with `t^p g_j t^{-p}`.
    pub failure: Option<(u64, usize, usize)>,
    /// Power from which the conjugated supports are disjoint, if `t` is a pure shift.
    pub disjoint_from: Option<u64>,
}

impl ConjugatesReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    /// Passing checks cover every power.
    pub fn conclusive(&self) -> bool {
        self.holds() && self.disjoint_from.is_some_and(|p| p <= self.checked_up_to)
    }
}

/// Checks `[H, t^p H t^{-p}] = 1` on generator pairs for `1 ≤ p ≤ max_p`.
pub fn verify_commuting_conjugates(gens: &[LampElement], t: &LampElement, max_p: u64) -> Result<ConjugatesReport> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (k, g) in gens.iter().enumerate() {
        let support = match g.finite_support() {
            Some(s) if g.shift == 0 => s,
            _ => return Err(Error::InfiniteSupport(k)),
        };
        if g.base_size() != t.base_size() {
            return Err(Error::InvalidInput("generators and t act on different base sets".into()));
        }
        for l in support {
            lo = lo.min(l);
            hi = hi.max(l);
        }
    }
    let pure_shift = t.shift != 0 && t.finite_support().is_some_and(|s| s.is_empty());
    let disjoint_from = if !pure_shift {
        None
    } else if lo > hi {
        Some(1)
    } else {
        Some(((hi - lo) / t.shift.abs() + 1) as u64)
    };
    for p in 1..=max_p {
        let tp = t.pow(p as i64);
        for (j, b) in gens.iter().enumerate() {
            let conj = b.conjugate_by(&tp.inverse());
            for (i, a) in gens.iter().enumerate() {
                if !commutes(a, &conj) {
                    return Ok(ConjugatesReport { checked_up_to: p, failure: Some((p, i, j)), disjoint_from });
                }
            }
        }
    }
    Ok(ConjugatesReport { checked_up_to: max_p, failure: None, disjoint_from })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> Perm {
        vec![1, 0]
    }

    #[test]
    fn shift_inverse() {
        let t = LampElement::shift_by(2, 1);
        assert!(lamp_compose(&t, &t.inverse()).is_identity());
        let x = LampElement::from_parts(3, vec![1, 0], -2, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).unwrap();
        assert!(lamp_compose(&x, &x.inverse()).is_identity());
        assert!(lamp_compose(&x.inverse(), &x).is_identity());
    }

    #[test]
    fn level_zero_lamps_compose_pointwise() {
        let a = LampElement::lamp_at(0, vec![1, 2, 0]).unwrap();
        let b = LampElement::lamp_at(0, vec![1, 0, 2]).unwrap();
        let ab = lamp_compose(&a, &b);
        assert_eq!(ab, LampElement::lamp_at(0, perm_compose(&[1, 2, 0], &[1, 0, 2])).unwrap());
        assert_eq!(ab.lamp(0), &vec![2, 1, 0]);
    }

    #[test]
    fn twisted_tail_moves_down() {
        let t = LampElement::shift_by(2, 1);
        let psi = LampElement::right_tail(1, swap()).unwrap();
        let h = LampElement::lamp_at(0, swap()).unwrap();
        let lhs = psi.conjugate_by(&t);
        assert_eq!(lhs, LampElement::right_tail(0, swap()).unwrap());
        assert_eq!(lhs, lamp_compose(&h, &psi));
    }

    #[test]
    fn composition_matches_action() {
        let a = LampElement::from_parts(2, vec![1, 0, 2], 0, vec![vec![2, 0, 1]], vec![0, 2, 1]).unwrap();
        let b = LampElement::from_parts(-1, vec![0, 1, 2], -1, vec![vec![1, 0, 2], vec![0, 2, 1]], vec![2, 1, 0]).unwrap();
        let ab = lamp_compose(&a, &b);
        for i in -6..6 {
            for y in 0..3 {
                let (y1, i1) = b.apply(y, i);
                assert_eq!(ab.apply(y, i), a.apply(y1, i1));
            }
        }
    }

    #[test]
    fn transposition_is_binate() {
        let w = BinateWitness::canonical(2, &[swap()]).unwrap();
        let r = verify_binate(&w, 4);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.words_checked, 1 + 2 + 4 + 8 + 16);
    }

    #[test]
    fn psi_too_high_is_caught() {
        let w = BinateWitness::with_psi_from(2, &[swap()], 2).unwrap();
        let r = verify_binate(&w, 4);
        let f = r.failure.unwrap();
        assert_eq!(f.identity, BinateIdentity::Conjugation);
        assert_eq!(f.word, vec!["g1".to_string()]);
    }

    #[test]
    fn trivial_group_passes() {
        let w = BinateWitness::canonical(3, &[]).unwrap();
        let r = verify_binate(&w, 4);
        assert!(r.holds());
        assert_eq!(r.words_checked, 1);
    }

    #[test]
    fn conjugates_conclusive_at_support_diameter() {
        let t = LampElement::shift_by(3, 1);
        let g = LampElement::lamp_at(0, vec![1, 2, 0]).unwrap();
        let r = verify_commuting_conjugates(&[g.clone()], &t, 1).unwrap();
        assert!(r.conclusive());
        let wide = LampElement::from_parts(0, perm_identity(3), 0, vec![vec![1, 0, 2], vec![0, 2, 1]], perm_identity(3)).unwrap();
        let r = verify_commuting_conjugates(&[wide.clone()], &t, 1).unwrap();
        assert!(!r.holds() && r.failure == Some((1, 0, 0)));
        let cyc = vec![1, 2, 0];
        let both = LampElement::from_parts(0, perm_identity(3), 0, vec![cyc.clone(), cyc], perm_identity(3)).unwrap();
        let r = verify_commuting_conjugates(&[both.clone()], &t, 1).unwrap();
        assert!(r.holds() && !r.conclusive());
        let r = verify_commuting_conjugates(&[both], &t, 2).unwrap();
        assert_eq!(r.disjoint_from, Some(2));
        assert!(r.conclusive());
    }

    #[test]
    fn identity_t_needs_abelian() {
        let id = LampElement::identity(3);
        let a = LampElement::lamp_at(0, vec![1, 0, 2]).unwrap();
        let b = LampElement::lamp_at(0, vec![0, 2, 1]).unwrap();
        let r = verify_commuting_conjugates(&[a.clone(), b], &id, 3).unwrap();
        assert_eq!(r.failure.map(|f| f.0), Some(1));
        let r = verify_commuting_conjugates(&[a], &id, 3).unwrap();
        assert!(r.holds() && !r.conclusive());
    }

    #[test]
    fn tails_are_rejected() {
        let t = LampElement::shift_by(2, 1);
        let g = LampElement::right_tail(0, swap()).unwrap();
        assert!(matches!(verify_commuting_conjugates(&[g], &t, 2), Err(Error::InfiniteSupport(0))));
    }
}
