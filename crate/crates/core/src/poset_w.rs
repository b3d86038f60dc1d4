//! The W property of finite posets, witness maps, and interweaving of
//! cofinal sequences.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use rand::Rng;

use crate::complex::SimplicialMap;
use crate::error::{Error, Result};
use crate::nerve::PosetNerve;
use crate::poset::FinitePoset;

/// Nonempty `I ⊆ {1..k}` encoded as a bit mask (bit `i - 1` for index `i`).
pub type IndexSet = u32;

pub fn index_list(mask: IndexSet) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

pub fn mask_of(indices: &[usize]) -> IndexSet {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WWitnessTable {
    /// Elements of `Q`, as indices into `P`.
    pub subposet: Vec<usize>,
    /// `x_1, ..., x_k`.
    pub minimals: Vec<usize>,
    /// `y_I` for each nonempty `I`.
    pub witness: BTreeMap<IndexSet, usize>,
}

impl WWitnessTable {
    pub fn get(&self, indices: &[usize]) -> Option<usize> {
        self.witness.get(&mask_of(indices)).copied()
    }

    /// `y_{1..k}`, which dominates every other witness.
    pub fn top(&self) -> usize {
        self.witness[&full_mask(self.minimals.len())]
    }

    /// `I_x = {i : x_i ⪯ x}` for an element `x` of `Q`.
    pub fn indices_below(&self, p: &FinitePoset, x: usize) -> IndexSet {
        self.minimals.iter().enumerate().filter(|(_, &m)| p.leq(m, x)).fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Checks both requirements of the definition against `p`.
    pub fn validate(&self, p: &FinitePoset) -> Result<()> {
        let k = self.minimals.len();
        for mask in 1..=full_mask(k) {
            let y = *self.witness.get(&mask).ok_or_else(|| Error::InvalidWitness(format!("no witness for I = {:?}", index_list(mask))))?;
            for (&other, &z) in &self.witness {
                if other & mask == mask && !p.leq(y, z) {
                    return Err(Error::InvalidWitness(format!("y_{:?} is not below y_{:?}", index_list(mask), index_list(other))));
                }
            }
            for &x in &self.subposet {
                if self.indices_below(p, x) & mask == mask && !p.leq(y, x) {
                    return Err(Error::InvalidWitness(format!(
                        "y_{:?} is not below {}, which dominates x_i for i in I",
                        index_list(mask),
                        p.label(x)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn full_mask(k: usize) -> IndexSet {
    ((1u64 << k) - 1) as IndexSet
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WFailure {
    pub subposet: Vec<usize>,
    pub minimals: Vec<usize>,
    /// The `I` at which every candidate was exhausted.
    pub unsatisfiable: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WReport {
    pub max_q: usize,
    pub subposets_checked: usize,
    pub tables: Vec<WWitnessTable>,
    pub failure: Option<WFailure>,
}

impl WReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn table_for(&self, q: &[usize]) -> Option<&WWitnessTable> {
        let mut key = q.to_vec();
        key.sort_unstable();
        self.tables.iter().find(|t| t.subposet == key)
    }
}

/// Searches `P` for a witness table over `Q` (with `Q` sorted), or reports the blocking `I`.
pub fn witness_table(p: &FinitePoset, q: &[usize]) -> std::result::Result<WWitnessTable, WFailure> {
    let minimals = p.minimal_in(q);
    let k = minimals.len();
    let mut masks: Vec<IndexSet> = (1..=full_mask(k)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let candidates: Vec<Vec<usize>> = masks
        .iter()
        .map(|&mask| {
            let dominating: Vec<usize> =
                q.iter().copied().filter(|&x| minimals.iter().enumerate().all(|(i, &m)| mask & (1 << i) == 0 || p.leq(m, x))).collect();
            // highest candidates first, so y_{{i}} = x_i whenever possible
            let mut c: Vec<usize> = (0..p.len()).filter(|&y| dominating.iter().all(|&x| p.leq(y, x))).collect();
            c.sort_by_key(|&y| (std::cmp::Reverse((0..p.len()).filter(|&z| p.leq(z, y)).count()), y));
            c
        })
        .collect();
    let position: BTreeMap<IndexSet, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut choice = vec![0usize; masks.len()];
    let mut chosen: Vec<usize> = Vec::with_capacity(masks.len());
    let mut deepest = 0usize;
    // iterative backtracking over masks in order of size
    let mut level = 0usize;
    loop {
        if level == masks.len() {
            let witness = masks.iter().copied().zip(chosen.iter().copied()).collect();
            return Ok(WWitnessTable { subposet: q.to_vec(), minimals, witness });
        }
        let mask = masks[level];
        let mut placed = false;
        while choice[level] < candidates[level].len() {
            let y = candidates[level][choice[level]];
            choice[level] += 1;
            // monotone: y_{I \ {i}} ⪯ y_I for every maximal proper subset
            let fits = (0..k).filter(|i| mask & (1 << i) != 0 && mask != 1 << i).all(|i| {
                let sub = mask & !(1 << i);
                p.leq(chosen[position[&sub]], y)
            });
            if fits {
                chosen.push(y);
                placed = true;
                break;
            }
        }
        if placed {
            level += 1;
            deepest = deepest.max(level);
            continue;
        }
        if level == 0 {
            let blocked = masks.get(deepest).copied().unwrap_or(masks[0]);
            return Err(WFailure { subposet: q.to_vec(), minimals, unsatisfiable: index_list(blocked) });
        }
        choice[level] = 0;
        level -= 1;
        chosen.pop();
    }
}

fn subsets_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=max.min(n) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            out.push(comb.clone());
            let mut i = size;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if comb[i] < n - size + i {
                    comb[i] += 1;
                    for j in i + 1..size {
                        comb[j] = comb[j - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    out
}

/// Checks the W property for every subset `Q` with `|Q| ≤ max_q`.
pub fn check_w(p: &FinitePoset, max_q: usize) -> WReport {
    let subsets = subsets_up_to(p.len(), max_q);
    let results = crate::par::map(&subsets, |q| witness_table(p, q));
    let mut tables = Vec::with_capacity(results.len());
    let mut checked = 0;
    for r in results {
        checked += 1;
        match r {
            Ok(t) => tables.push(t),
            Err(failure) => return WReport { max_q, subposets_checked: checked, tables, failure: Some(failure) },
        }
    }
    WReport { max_q, subposets_checked: checked, tables, failure: None }
}

/// `f : nerve(Q) → nerve(P)`, `x ↦ y_{I_x}`, together with its element map.
#[derive(Debug, Clone)]
pub struct WitnessMap {
    /// Image in `P` of each element of `Q` (indexed like `Q`'s nerve poset).
    pub elements: Vec<usize>,
    pub map: SimplicialMap,
}

/// Builds the witness map for `q_nerve`, the nerve of `P` restricted to `table.subposet`
/// (in that order), and checks `f(x) ⪯ x`.
pub fn witness_map(p_nerve: &PosetNerve, q_nerve: &PosetNerve, table: &WWitnessTable) -> Result<WitnessMap> {
    let p = p_nerve.poset();
    table.validate(p)?;
    if q_nerve.poset().len() != table.subposet.len() {
        return Err(Error::InvalidWitness("subposet nerve does not match the table".into()));
    }
    let elements: Vec<usize> = table.subposet.iter().map(|&x| table.witness[&table.indices_below(p, x)]).collect();
    for (&x, &fx) in table.subposet.iter().zip(&elements) {
        if !p.leq(fx, x) {
            return Err(Error::InvalidWitness(format!("f({}) = {} is not below it", p.label(x), p.label(fx))));
        }
    }
    let map = q_nerve.induced_map(p_nerve, &elements)?;
    Ok(WitnessMap { elements, map })
}

/// A set with a preorder `⊑` and an equivalence `≃` contained in it.
pub trait SequenceSystem: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    fn below(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn equiv(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// Integers with the usual order and equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerLine;

impl SequenceSystem for IntegerLine {
    type Elem = i64;
    fn below(&self, a: &i64, b: &i64) -> bool {
        a <= b
    }
    fn equiv(&self, a: &i64, b: &i64) -> bool {
        a == b
    }
}

/// Integers up to blocks of `width`: `a ≃ b` iff they lie in the same block,
/// `a ⊑ b` iff `a`'s block is not after `b`'s.
#[derive(Debug, Clone, Copy)]
pub struct IntegerBlocks {
    pub width: i64,
}

impl SequenceSystem for IntegerBlocks {
    type Elem = i64;
    fn below(&self, a: &i64, b: &i64) -> bool {
        a.div_euclid(self.width) <= b.div_euclid(self.width)
    }
    fn equiv(&self, a: &i64, b: &i64) -> bool {
        a.div_euclid(self.width) == b.div_euclid(self.width)
    }
}

/// Componentwise product of two systems.
#[derive(Debug, Clone, Copy)]
pub struct Product<A, B>(pub A, pub B);

impl<A: SequenceSystem, B: SequenceSystem> SequenceSystem for Product<A, B> {
    type Elem = (A::Elem, B::Elem);
    fn below(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.0.below(&a.0, &b.0) && self.1.below(&a.1, &b.1)
    }
    fn equiv(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.0.equiv(&a.0, &b.0) && self.1.equiv(&a.1, &b.1)
    }
}

/// A named sequence `n ↦ x_n` for `n = 1, 2, ...`, produced lazily.
#[derive(Clone)]
pub struct CofinalSequence<E> {
    pub name: String,
    generator: Arc<dyn Fn(usize) -> E + Send + Sync>,
}

impl<E> Debug for CofinalSequence<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CofinalSequence({})", self.name)
    }
}

impl<E: Clone> CofinalSequence<E> {
    pub fn new(name: impl Into<String>, generator: impl Fn(usize) -> E + Send + Sync + 'static) -> Self {
        CofinalSequence { name: name.into(), generator: Arc::new(generator) }
    }

    /// Stream backed by a finite table; indices past its end are out of range.
    pub fn from_prefix(name: impl Into<String>, items: Vec<E>) -> Self
    where
        E: Send + Sync + 'static,
    {
        let items = Arc::new(items);
        let len = items.len();
        CofinalSequence::new(name, move |n| items[(n - 1).min(len - 1)].clone())
    }

    /// 1-based.
    pub fn get(&self, n: usize) -> E {
        (self.generator)(n)
    }

    pub fn prefix(&self, len: usize) -> Vec<E> {
        (1..=len).map(|n| self.get(n)).collect()
    }
}

/// Checks that a window is increasing and pairwise inequivalent.
pub fn is_admissible<S: SequenceSystem>(sys: &S, xs: &[S::Elem]) -> bool {
    xs.windows(2).all(|w| sys.below(&w[0], &w[1])) && (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| !sys.equiv(&xs[i], &xs[j])))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interweaving<E> {
    pub y: Vec<E>,
    /// `(sequence number, index)` each `y_n` was taken from, both 1-based.
    pub sources: Vec<(usize, usize)>,
    pub k: usize,
}

impl<E: Clone> Interweaving<E> {
    /// `y^I`: entries of `y` at positions congruent to an element of `I` mod `k`.
    pub fn select(&self, indices: &[usize]) -> Vec<E> {
        self.y.iter().enumerate().filter(|(n, _)| indices.contains(&(n % self.k + 1))).map(|(_, e)| e.clone()).collect()
    }

    /// Every `y^I` for nonempty `I ⊆ {1..k}`.
    pub fn family(&self) -> BTreeMap<Vec<usize>, Vec<E>> {
        (1..=full_mask(self.k)).map(|m| (index_list(m), self.select(&index_list(m)))).collect()
    }
}

/// Greedy interweaving of `seqs` up to `depth` terms, scanning each stream at
/// most `horizon` terms deep.
pub fn interweave<S: SequenceSystem>(
    sys: &S,
    seqs: &[CofinalSequence<S::Elem>],
    depth: usize,
    horizon: usize,
) -> Result<Interweaving<S::Elem>> {
    let k = seqs.len();
    if k == 0 {
        return Err(Error::InvalidInput("interweaving needs at least one sequence".into()));
    }
    let cache: Vec<Vec<S::Elem>> = seqs.iter().map(|s| s.prefix(horizon)).collect();
    for (s, c) in seqs.iter().zip(&cache) {
        if !is_admissible(sys, c) {
            return Err(Error::InvalidInput(format!("{} is not increasing and pairwise inequivalent on the window", s.name)));
        }
    }
    let mut y: Vec<S::Elem> = Vec::with_capacity(depth);
    let mut sources = Vec::with_capacity(depth);
    // q: largest index holding an element equivalent to some y_i
    let mut q = 0usize;
    for n in 0..depth {
        let j = n % k;
        if let Some(last) = y.last() {
            for (s, c) in seqs.iter().zip(&cache) {
                // beyond the first index not below y_n nothing can be equivalent to it
                let stop = c
                    .iter()
                    .position(|x| !sys.below(x, last))
                    .ok_or_else(|| Error::HorizonExhausted(format!("{} stays below {:?} for {horizon} terms", s.name, last)))?;
                if let Some(r) = c[..stop].iter().position(|x| sys.equiv(x, last)) {
                    q = q.max(r + 1);
                }
            }
        }
        let p = if n == 0 {
            1
        } else {
            (q + 1..=horizon)
                .find(|&p| y.iter().all(|yi| sys.below(yi, &cache[j][p - 1])))
                .ok_or_else(|| Error::HorizonExhausted(format!("no admissible term of {} within {horizon}", seqs[j].name)))?
        };
        y.push(cache[j][p - 1].clone());
        sources.push((j + 1, p));
    }
    Ok(Interweaving { y, sources, k })
}

/// Window checks on an interweaving of `windows` (prefixes of the input sequences).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterweaveCheck {
    /// Index sets `I` with `y^I` not a subsequence of `y`.
    pub not_in_y: Vec<Vec<usize>>,
    /// `i` with `y^{i}` not a subsequence of `x^i`.
    pub not_in_source: Vec<usize>,
    /// `(I, j)` with `x^i ⪯ x^j` for all `i ∈ I` but `y^I` not below `x^j`,
    /// where `j = 0` stands for the merged union of the `x^i`.
    pub not_below_upper_bound: Vec<(Vec<usize>, usize)>,
    /// Index sets whose `y^I` fails to be increasing and pairwise inequivalent.
    pub inadmissible: Vec<Vec<usize>>,
}

impl InterweaveCheck {
    pub fn holds(&self) -> bool {
        self.not_in_y.is_empty() && self.not_in_source.is_empty() && self.not_below_upper_bound.is_empty() && self.inadmissible.is_empty()
    }
}

/// Checks the subsequence relations of every `y^I` on the materialized windows.
/// The merged union of `{x^i : i ∈ I}` is ordered by `⊑`, so it is meaningful when `⊑` is total.
pub fn check_interweaving<S: SequenceSystem>(sys: &S, w: &Interweaving<S::Elem>, windows: &[Vec<S::Elem>]) -> InterweaveCheck {
    let mut out =
        InterweaveCheck { not_in_y: Vec::new(), not_in_source: Vec::new(), not_below_upper_bound: Vec::new(), inadmissible: Vec::new() };
    let cmp = |a: &S::Elem, b: &S::Elem| match (sys.below(a, b), sys.below(b, a)) {
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    };
    for (indices, sub) in w.family() {
        if !is_subsequence(&sub, &w.y) {
            out.not_in_y.push(indices.clone());
        }
        if !is_admissible(sys, &sub) {
            out.inadmissible.push(indices.clone());
        }
        if indices.len() == 1 && !is_subsequence(&sub, &windows[indices[0] - 1]) {
            out.not_in_source.push(indices[0]);
        }
        let mut merged: Vec<S::Elem> = indices.iter().flat_map(|&i| windows[i - 1].iter().cloned()).collect();
        merged.sort_by(|a, b| cmp(a, b));
        merged.dedup();
        // only the part of y^I inside the merged window can be compared
        let horizon = merged.last().cloned();
        let inside: Vec<S::Elem> = sub.iter().filter(|e| horizon.as_ref().is_some_and(|h| sys.below(e, h))).cloned().collect();
        if !is_subsequence(&inside, &merged) {
            out.not_below_upper_bound.push((indices.clone(), 0));
        }
        for (j, x) in windows.iter().enumerate() {
            if indices.iter().all(|&i| windows[i - 1].iter().filter(|e| sys.below(e, x.last().unwrap())).all(|e| x.contains(e))) {
                let inside: Vec<S::Elem> = sub.iter().filter(|e| sys.below(e, x.last().unwrap())).cloned().collect();
                if !is_subsequence(&inside, x) {
                    out.not_below_upper_bound.push((indices.clone(), j + 1));
                }
            }
        }
    }
    out
}

/// True when `short` occurs in `long` at increasing positions.
pub fn is_subsequence<E: PartialEq>(short: &[E], long: &[E]) -> bool {
    let mut it = long.iter();
    short.iter().all(|s| it.any(|l| l == s))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureReport<E> {
    pub subsequence_counterexamples: Vec<(Vec<E>, Vec<E>)>,
    pub union_counterexamples: Vec<(Vec<E>, Vec<E>, Vec<E>)>,
    pub trials: usize,
}

impl<E> ClosureReport<E> {
    pub fn closed(&self) -> bool {
        self.subsequence_counterexamples.is_empty() && self.union_counterexamples.is_empty()
    }
}

fn random_split<E: Clone, R: Rng>(xs: &[E], rng: &mut R) -> (Vec<E>, Vec<E>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for x in xs {
        if rng.gen_bool(0.5) {
            a.push(x.clone());
        } else {
            b.push(x.clone());
        }
    }
    (a, b)
}

/// Tests, on sampled windows, that `member` survives passing to subsequences
/// and that a sequence split into two members is itself a member.
pub fn check_subposet_closure<E, F, R>(member: F, samples: &[Vec<E>], trials: usize, rng: &mut R) -> ClosureReport<E>
where
    E: Clone,
    F: Fn(&[E]) -> bool,
    R: Rng,
{
    let mut report = ClosureReport { subsequence_counterexamples: Vec::new(), union_counterexamples: Vec::new(), trials: 0 };
    for x in samples {
        for t in 0..trials {
            report.trials += 1;
            let (a, b) = random_split(x, rng);
            if member(x) {
                // the first trial always drops the leading entry
                let sub = if t == 0 { x[1.min(x.len())..].to_vec() } else { a.clone() };
                if !sub.is_empty() && !member(&sub) {
                    report.subsequence_counterexamples.push((x.clone(), sub));
                }
            }
            if !a.is_empty() && !b.is_empty() && member(&a) && member(&b) && !member(x) {
                report.union_counterexamples.push((x.clone(), a, b));
            }
        }
    }
    report
}

/// A random increasing sequence on the integer line (strictly increasing gaps in `1..=max_gap`).
pub fn random_integer_sequence<R: Rng>(rng: &mut R, len: usize, max_gap: i64) -> Vec<i64> {
    let mut v = Vec::with_capacity(len);
    let mut x = rng.gen_range(1..=max_gap);
    for _ in 0..len {
        v.push(x);
        x += rng.gen_range(1..=max_gap);
    }
    v
}
